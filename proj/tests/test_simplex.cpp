#include "asymparb/simplex.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace asymparb::lp {
namespace {

TEST(Simplex, BasicMaximization) {
  // max 3x + 2y s.t. x + y <= 4, x + 3y <= 6 -> (4, 0), value 12
  LinearProgram p;
  p.resize(2);
  p.objective = {3.0, 2.0};
  p.rows.push_back({{1.0, 1.0}, RowSense::le, 4.0});
  p.rows.push_back({{1.0, 3.0}, RowSense::le, 6.0});
  Solution s = solve(p);
  ASSERT_EQ(s.status, SolveStatus::optimal);
  EXPECT_NEAR(s.objective, 12.0, 1e-9);
  EXPECT_NEAR(s.x[0], 4.0, 1e-9);
  EXPECT_NEAR(s.x[1], 0.0, 1e-9);
}

TEST(Simplex, EqualityAndGe) {
  // min x + y s.t. x + 2y = 3, x >= 1 -> (1, 1), value 2
  LinearProgram p;
  p.resize(2);
  p.maximize = false;
  p.objective = {1.0, 1.0};
  p.rows.push_back({{1.0, 2.0}, RowSense::eq, 3.0});
  p.rows.push_back({{1.0, 0.0}, RowSense::ge, 1.0});
  Solution s = solve(p);
  ASSERT_EQ(s.status, SolveStatus::optimal);
  EXPECT_NEAR(s.objective, 2.0, 1e-9);
  EXPECT_NEAR(s.x[0], 1.0, 1e-9);
  EXPECT_NEAR(s.x[1], 1.0, 1e-9);
}

TEST(Simplex, InfeasibleDetected) {
  LinearProgram p;
  p.resize(1);
  p.objective = {1.0};
  p.rows.push_back({{1.0}, RowSense::ge, 2.0});
  p.rows.push_back({{1.0}, RowSense::le, 1.0});
  EXPECT_EQ(solve(p).status, SolveStatus::infeasible);
}

TEST(Simplex, UnboundedDetected) {
  LinearProgram p;
  p.resize(1);
  p.objective = {1.0};
  Solution s = solve(p);
  EXPECT_EQ(s.status, SolveStatus::unbounded);
}

TEST(Simplex, FreeVariables) {
  // min x s.t. x >= -5 with x free -> -5
  LinearProgram p;
  p.resize(1);
  p.maximize = false;
  p.objective = {1.0};
  p.lower[0] = -LinearProgram::inf;
  p.rows.push_back({{1.0}, RowSense::ge, -5.0});
  Solution s = solve(p);
  ASSERT_EQ(s.status, SolveStatus::optimal);
  EXPECT_NEAR(s.x[0], -5.0, 1e-9);
}

TEST(Simplex, UpperBounds) {
  // max x + y with x in [0, 2], y in [1, 3], x + y <= 4 -> 4
  LinearProgram p;
  p.resize(2);
  p.objective = {1.0, 1.0};
  p.upper = {2.0, 3.0};
  p.lower = {0.0, 1.0};
  p.rows.push_back({{1.0, 1.0}, RowSense::le, 4.0});
  Solution s = solve(p);
  ASSERT_EQ(s.status, SolveStatus::optimal);
  EXPECT_NEAR(s.objective, 4.0, 1e-9);
  EXPECT_LE(s.x[0], 2.0 + 1e-9);
  EXPECT_GE(s.x[1], 1.0 - 1e-9);
}

TEST(Simplex, NegativeRhsNormalization) {
  // x - y <= -1 with max x + 0y, x,y >= 0, x <= 10 -> x = 10 needs y >= 11
  LinearProgram p;
  p.resize(2);
  p.objective = {1.0, 0.0};
  p.upper = {10.0, LinearProgram::inf};
  p.rows.push_back({{1.0, -1.0}, RowSense::le, -1.0});
  Solution s = solve(p);
  ASSERT_EQ(s.status, SolveStatus::optimal);
  EXPECT_NEAR(s.objective, 10.0, 1e-9);
  EXPECT_GE(s.x[1], 11.0 - 1e-9);
}

TEST(Simplex, DegenerateBlandTerminates) {
  // classic degenerate instance; Bland must not cycle
  LinearProgram p;
  p.resize(4);
  p.objective = {0.75, -150.0, 0.02, -6.0};
  p.rows.push_back({{0.25, -60.0, -0.04, 9.0}, RowSense::le, 0.0});
  p.rows.push_back({{0.5, -90.0, -0.02, 3.0}, RowSense::le, 0.0});
  p.rows.push_back({{0.0, 0.0, 1.0, 0.0}, RowSense::le, 1.0});
  Solution s = solve(p);
  ASSERT_EQ(s.status, SolveStatus::optimal);
  EXPECT_NEAR(s.objective, 0.05, 1e-9);
}

TEST(Simplex, FixedVariable) {
  LinearProgram p;
  p.resize(2);
  p.objective = {1.0, 1.0};
  p.lower = {2.0, 0.0};
  p.upper = {2.0, 5.0};
  p.rows.push_back({{1.0, 1.0}, RowSense::le, 6.0});
  Solution s = solve(p);
  ASSERT_EQ(s.status, SolveStatus::optimal);
  EXPECT_NEAR(s.x[0], 2.0, 1e-10);
  EXPECT_NEAR(s.objective, 6.0, 1e-9);
}

TEST(Simplex, SolutionSatisfiesConstraints) {
  LinearProgram p;
  p.resize(3);
  p.objective = {1.0, 2.0, -1.0};
  p.lower[2] = -LinearProgram::inf;
  p.rows.push_back({{1.0, 1.0, 1.0}, RowSense::eq, 2.0});
  p.rows.push_back({{1.0, -1.0, 0.0}, RowSense::ge, -1.0});
  p.rows.push_back({{0.0, 1.0, 1.0}, RowSense::le, 3.0});
  p.rows.push_back({{1.0, 1.0, 0.0}, RowSense::le, 4.0});
  Solution s = solve(p);
  ASSERT_EQ(s.status, SolveStatus::optimal);
  EXPECT_LE(max_violation(p, s.x), 1e-8);
}

TEST(Simplex, WarmRestartMatchesColdSolves) {
  // same polytope, several objectives: warm results must equal cold ones
  LinearProgram p;
  p.resize(3);
  p.rows.push_back({{1.0, 1.0, 1.0}, RowSense::eq, 1.0});
  p.rows.push_back({{1.0, -1.0, 0.0}, RowSense::le, 0.5});
  p.rows.push_back({{0.0, 1.0, -1.0}, RowSense::ge, -0.25});

  SimplexSolver warm(p);
  std::vector<std::vector<double>> objectives = {
      {1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0},
      {1.0, -1.0, 0.0}, {-2.0, 1.0, 3.0}, {1.0, 1.0, 1.0}};
  for (const auto& obj : objectives) {
    Solution w = warm.maximize(obj);
    LinearProgram q = p;
    q.objective = obj;
    Solution c = solve(q);
    ASSERT_EQ(w.status, SolveStatus::optimal);
    ASSERT_EQ(c.status, SolveStatus::optimal);
    EXPECT_NEAR(w.objective, c.objective, 1e-9);
  }
}

TEST(Simplex, RedundantEqualityRows) {
  LinearProgram p;
  p.resize(2);
  p.objective = {1.0, 1.0};
  p.rows.push_back({{1.0, 1.0}, RowSense::eq, 1.0});
  p.rows.push_back({{2.0, 2.0}, RowSense::eq, 2.0});  // same hyperplane
  Solution s = solve(p);
  ASSERT_EQ(s.status, SolveStatus::optimal);
  EXPECT_NEAR(s.objective, 1.0, 1e-9);
}

}  // namespace
}  // namespace asymparb::lp
