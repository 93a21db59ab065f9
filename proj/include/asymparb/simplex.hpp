#pragma once

#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace asymparb::lp {

enum class RowSense { le, eq, ge };

struct Row {
  std::vector<double> a;  // dense coefficients over the problem variables
  RowSense sense = RowSense::le;
  double rhs = 0.0;
};

/// Dense linear program. Default variable bounds are [0, +inf); set lower to
/// -infinity for a free variable.
struct LinearProgram {
  int num_vars = 0;
  bool maximize = true;
  std::vector<double> objective;
  std::vector<Row> rows;
  std::vector<double> lower;  // defaults to 0 when empty
  std::vector<double> upper;  // defaults to +inf when empty

  static constexpr double inf = std::numeric_limits<double>::infinity();
  void resize(int n) {
    num_vars = n;
    objective.assign(n, 0.0);
    lower.assign(n, 0.0);
    upper.assign(n, inf);
  }
};

enum class SolveStatus { optimal, infeasible, unbounded, numerical_error };

struct Solution {
  SolveStatus status = SolveStatus::numerical_error;
  std::vector<double> x;  // original variable space; empty unless optimal
  double objective = 0.0;
  int iterations = 0;
  std::string note;  // failure diagnostics, empty on success
};

class LpError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two-phase dense tableau simplex with Bland's rule (deterministic, cannot
/// cycle). The solver keeps its final basis, so successive calls to
/// maximize() with fresh objectives over the same constraint set are
/// warm-started; this is what the per-subset profile solvers rely on.
class SimplexSolver {
 public:
  static constexpr double kTol = 1e-9;

  explicit SimplexSolver(LinearProgram base);

  /// Feasibility of the constraint set (phase 1 outcome).
  SolveStatus feasibility() const { return feasibility_; }

  /// Maximizes objective (given over the original variables) from the
  /// current basis.
  Solution maximize(const std::vector<double>& objective);

 private:
  struct VarMap {
    enum Kind { shifted, mirrored, free_pair } kind = shifted;
    int col = -1;
    int col_neg = -1;  // free_pair only
    double shift = 0.0;
  };

  void build_canonical();
  SolveStatus run_phase1();
  // Pivot loop; returns optimal or unbounded. `objective_row`/`objective_val`
  // are maintained in place.
  SolveStatus pivot_loop(std::vector<double>& objective_row, double& objective_val,
                         int& iterations);
  void pivot(int row, int col, std::vector<double>& objective_row,
             double& objective_val);
  bool refine_basic_values();
  std::vector<double> extract_x() const;
  double max_row_violation(const std::vector<double>& x) const;

  LinearProgram base_;
  SolveStatus feasibility_ = SolveStatus::numerical_error;

  std::vector<VarMap> vmap_;
  int n_canon_ = 0;
  int n_slack_ = 0;
  int n_artif_ = 0;
  int active_cols_ = 0;  // canonical + slack; artificials are never re-entered

  // canonical equality-form data, kept pristine for refinement
  std::vector<std::vector<double>> orig_rows_;  // over canonical+slack columns
  std::vector<double> orig_b_;

  // current tableau state
  std::vector<std::vector<double>> tab_;
  std::vector<double> b_;
  std::vector<int> basis_;

  std::vector<double> values_;  // refined basic values by column
};

/// One-shot convenience wrapper.
Solution solve(const LinearProgram& lp);

/// Largest violation of rows and bounds at x (for verification).
double max_violation(const LinearProgram& lp, const std::vector<double>& x);

}  // namespace asymparb::lp
