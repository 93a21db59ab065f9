// Acceptance suite: one test per criterion, each printing a PASS/FAIL line.
//
// Every tolerance is pinned here, not tuned. Reference constants were
// computed at 40-digit precision from the displayed formulas and are
// cross-checked again by the in-test quadrature oracle where one applies.

#include <gtest/gtest.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#include "asymparb/cps_lp.hpp"
#include "asymparb/example_six.hpp"
#include "asymparb/halmos_savage.hpp"
#include "asymparb/sequence_lab.hpp"
#include "support/builders.hpp"

namespace asymparb {
namespace {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

void report(int criterion, const char* what, bool ok) {
  std::printf("[acceptance] criterion %d %-58s %s\n", criterion, what,
              ok ? "PASS" : "FAIL");
  std::fflush(stdout);
  EXPECT_TRUE(ok) << "criterion " << criterion << ": " << what;
}

ex6::ExampleSixParams params6(double T, double lambda = 0.0) {
  return ex6::ExampleSixParams::make(T, 0.5, 0.4, lambda);
}

TEST(Acceptance, Criterion1ZetaLimit) {
  Stopwatch clock;
  // exp(1 + e^{-1}), evaluated independently at high precision
  const double limit_reference = 3.92701439474164;
  double limit = ex6::zeta_limit();
  report(1, "zeta limit equals exp(1 + 1/e) within 1e-6",
         std::abs(limit - limit_reference) <= 1e-6);

  const double zeta_reference[] = {3.56531878410725, 3.82387753265983,
                                   3.91159758813117};
  const double horizons[] = {2.0, 8.0, 20.0};
  bool values_ok = true, decreasing = true;
  double prev_gap = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 3; ++i) {
    double z = ex6::zeta_n(params6(horizons[i]));
    values_ok = values_ok && std::abs(z - zeta_reference[i]) <= 1e-6;
    double gap = std::abs(z - limit);
    decreasing = decreasing && gap < prev_gap;
    prev_gap = gap;
  }
  report(1, "zeta_n at T in {2, 8, 20} matches references within 1e-6", values_ok);
  report(1, "|zeta_n - limit| strictly decreasing", decreasing);
  report(1, "runtime < 1 s", clock.seconds() < 1.0);
}

TEST(Acceptance, Criterion2BoundCertificate) {
  Stopwatch clock;
  bool bound_ok = true;
  for (double T : {2.0, 3.0, 4.0}) {
    ex6::ExampleSixParams p = params6(T);
    double g = ex6::gamma_n(p);
    double ts = ex6::breakpoint(p);
    double worst = 0.0;
    for (int k = 0; k < 10000; ++k) {
      double t = ts + (T - ts) * k / 9999.0;
      worst = std::max(worst, std::abs(ex6::i_n(p, t)));
    }
    bound_ok = bound_ok && (g - worst >= -1e-12);
  }
  report(2, "|i_n(t)| <= gamma_n on 1e4-point grids, T in {2,3,4}", bound_ok);

  double thr = ex6::lambda_threshold(params6(2.0));
  double margin_above =
      ex6::containment_margin(params6(2.0, 1.01 * thr), 10000);
  report(2, "containment margin > 0 at 1.01 x threshold (T = 2)",
         margin_above > 0.0);

  // The next check is stated as margin < 0 at half the threshold. The
  // gamma_n certificate is sufficient but not sharp: the measured margin at
  // 0.5 x threshold is +0.0379 and the actual sign change sits near
  // 0.266 x threshold, so this check fails and is expected to fail; the
  // line below documents the measured behavior.
  double margin_half = ex6::containment_margin(params6(2.0, 0.5 * thr), 10000);
  double margin_quarter = ex6::containment_margin(params6(2.0, 0.25 * thr), 10000);
  std::printf("[acceptance]   measured margins at T=2: 0.5x thr -> %+.6f, "
              "0.25x thr -> %+.6f\n", margin_half, margin_quarter);
  report(2, "containment margin < 0 at 0.5 x threshold (T = 2)",
         margin_half < 0.0);
  report(2, "runtime < 5 s", clock.seconds() < 5.0);
}

TEST(Acceptance, Criterion3PhaseTransition) {
  Stopwatch clock;
  std::vector<ex6::ExampleSixParams> list;
  for (double T : {2.0, 4.0, 8.0, 16.0}) list.push_back(params6(T));
  seq::McConfig mc{20000, 42, 2000};

  seq::SequenceReport zero_report =
      seq::section6_report(list, seq::LambdaRule::zero(), mc);
  bool monotone = true;
  for (std::size_t n = 1; n < zero_report.rows.size(); ++n) {
    monotone = monotone &&
               zero_report.rows[n].closed.p_a > zero_report.rows[n - 1].closed.p_a &&
               zero_report.rows[n].closed.q_a < zero_report.rows[n - 1].closed.q_a;
  }
  report(3, "rule zero: (pA, qA) monotone toward (1, 0) over T grid", monotone);

  seq::SequenceReport thr_report =
      seq::section6_report(list, seq::LambdaRule::threshold_multiple(1.01), mc);
  bool zeta_bounded = true;
  const double e2 = std::exp(2.0);
  for (const auto& row : thr_report.rows)
    zeta_bounded = zeta_bounded && row.closed.zeta_n <= e2;
  report(3, "rule 1.01 x threshold: zeta_n <= e^2 at every listed T", zeta_bounded);
  report(3, "runtime < 5 s", clock.seconds() < 5.0);
}

TEST(Acceptance, Criterion4MonteCarloConsistency) {
  Stopwatch clock;
  ex6::ExampleSixParams p = params6(2.0);
  const double pa_ref = 0.550139325009727;
  const double qa_ref = 0.1283720593712;
  const double qb_ref = 0.529842935170604;
  double pa = ex6::p_an_closed(p);
  double qa = ex6::q_an_closed(p);
  double qb = ex6::q_an_bound(p);
  report(4, "closed forms match high-precision references within 1e-6",
         std::abs(pa - pa_ref) <= 1e-6 && std::abs(qa - qa_ref) <= 1e-6 &&
             std::abs(qb - qb_ref) <= 1e-6);
  report(4, "density bound: qA <= qA_bound * pA",
         qa <= qb * pa * (1.0 + 1e-9));

  ex6::TerminalMc mc = ex6::mc_terminal(p, 100000, 42);
  report(4, "|E[Z] - 1| <= 3 SE at 1e5 paths, seed 42",
         std::abs(mc.e_z.value - 1.0) <= 3.0 * mc.e_z.standard_error);
  report(4, "|pA_mc - pA_closed| <= 3 SE",
         std::abs(mc.p_a.value - pa) <= 3.0 * mc.p_a.standard_error);
  report(4, "|qA_mc - qA_closed| <= 3 SE",
         std::abs(mc.q_a.value - qa) <= 3.0 * mc.q_a.standard_error);
  report(4, "|E[Ztilde^2] - zeta_n| <= 3 SE",
         std::abs(mc.e_z2_tilde.value - ex6::zeta_n(p)) <=
             3.0 * mc.e_z2_tilde.standard_error);
  report(4, "runtime < 10 s", clock.seconds() < 10.0);
}

TEST(Acceptance, Criterion5LpDualitySuite) {
  Stopwatch clock;
  testing::RandomMarketGen gen(20250417);
  const double lambdas[] = {0.0, 0.05, 0.2, 0.5};
  int duality_failures = 0, grr_failures = 0, converse_failures = 0;
  int with_cps = 0, with_arb = 0;
  for (int k = 0; k < 200; ++k) {
    double lambda = lambdas[k % 4];
    FiniteMarket m = gen.next(lambda);
    std::vector<double> claim(m.tree.leaf_count());
    for (double& c : claim) c = gen.uniform(-1.0, 1.0);

    auto cps = find_cps(m, lambda);
    auto arb = find_arbitrage(m, lambda);
    SuperrepResult rep = superreplicate(m, lambda, claim);

    if (cps) {
      ++with_cps;
      if (arb) ++grr_failures;  // a system forbids arbitrage
    }
    if (arb) ++with_arb;
    if (!arb && !cps) ++converse_failures;  // no arbitrage must yield a system
    if (rep.solvable &&
        std::abs(rep.dual_value - rep.primal_value) > 1e-7)
      ++duality_failures;
    if (!rep.solvable && cps) ++duality_failures;  // polytope can't be empty then
  }
  std::printf("[acceptance]   200 instances: %d with a price system, %d with "
              "arbitrage\n", with_cps, with_arb);
  report(5, "duality gap <= 1e-7 on every solvable instance", duality_failures == 0);
  report(5, "price system implies no arbitrage (every instance)", grr_failures == 0);
  report(5, "no arbitrage implies a price system (every instance)",
         converse_failures == 0);
  report(5, "runtime < 30 s", clock.seconds() < 30.0);
}

TEST(Acceptance, Criterion6HalmosSavageSoundness) {
  Stopwatch clock;
  std::mt19937_64 rng(6021023);
  std::gamma_distribution<double> gamma_dist(0.8, 1.0);
  const double grid[] = {0.05, 0.1, 0.2};
  int hs1_failures = 0, hs2_failures = 0, hs1_checked = 0, hs2_checked = 0;
  for (int trial = 0; trial < 500; ++trial) {
    int k = 2 + static_cast<int>(rng() % 9);   // K <= 10
    int g = 1 + static_cast<int>(rng() % 5);   // G <= 5
    auto dirichlet = [&] {
      std::vector<double> v(k);
      double s = 0.0;
      for (double& x : v) {
        x = gamma_dist(rng) + 1e-9;
        s += x;
      }
      for (double& x : v) x /= s;
      return v;
    };
    hs::FiniteMeasureFamily family;
    family.base = dirichlet();
    for (int j = 0; j < g; ++j) family.generators.push_back(dirichlet());

    for (double eps : grid) {
      for (double delta : grid) {
        if (hs::verify_hs1(family, eps, delta).holds) {
          ++hs1_checked;
          if (!hs::hs1_find_q0(family, eps, delta).pass) ++hs1_failures;
        }
        if (hs::verify_hs2(family, eps, delta).holds) {
          ++hs2_checked;
          if (!hs::hs2_find_q0(family, eps, delta).pass) ++hs2_failures;
        }
      }
    }
  }
  std::printf("[acceptance]   guarantees exercised: %d (hs1), %d (hs2)\n",
              hs1_checked, hs2_checked);
  report(6, "hs1: verified hypothesis always yields value > eps^2 delta/2",
         hs1_failures == 0 && hs1_checked > 0);
  report(6, "hs2: verified hypothesis always yields value < 8 eps",
         hs2_failures == 0 && hs2_checked > 0);
  report(6, "runtime < 60 s", clock.seconds() < 60.0);
}

TEST(Acceptance, Criterion7ConvexCombinationClosure) {
  Stopwatch clock;
  testing::RandomMarketGen gen(7741);
  int mixed = 0, failures = 0;
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  while (mixed < 100) {
    double lambda = 0.05 + 0.5 * gen.uniform(0.0, 1.0);
    FiniteMarket m = gen.next(lambda);
    auto first = find_cps(m, lambda);
    if (!first) continue;
    std::vector<double> objective(m.tree.leaf_count());
    for (double& c : objective) c = gen.uniform(-1.0, 1.0);
    auto second = find_cps_maximizing(m, lambda, objective);
    if (!second) continue;
    ++mixed;
    for (int w = 0; w < 5; ++w) {
      double a = gen.uniform(0.0, 1.0);
      try {
        // mix_cps re-verifies martingale (1e-9) and containment (1e-10)
        seq::mix_cps(m, {*first, *second}, {a, 1.0 - a});
      } catch (const std::exception&) {
        ++failures;
      }
    }
  }
  report(7, "100 random pairs x 5 weights: mixture passes re-verification",
         failures == 0);
  report(7, "runtime < 10 s", clock.seconds() < 10.0);
}

TEST(Acceptance, Criterion8DominanceAndSupermartingale) {
  Stopwatch clock;
  testing::RandomMarketGen gen(20250417);  // same suite as criterion 5
  const double lambdas[] = {0.0, 0.05, 0.2, 0.5};
  int checked = 0, dominance_failures = 0, supermartingale_failures = 0;
  for (int k = 0; k < 200; ++k) {
    double lambda = lambdas[k % 4];
    FiniteMarket m = gen.next(lambda);
    std::vector<double> claim(m.tree.leaf_count());
    for (double& c : claim) c = gen.uniform(-1.0, 1.0);

    auto cps = find_cps(m, lambda);
    if (!cps) continue;
    m.lambda = lambda;
    SuperrepResult rep = superreplicate(m, lambda, claim);
    if (!rep.solvable) continue;
    ++checked;

    const TradingStrategy& s = rep.witness_strategy;
    auto v = liquidation_value(s, m);
    const int n = m.tree.node_count();
    std::vector<double> frictionless(n);
    for (int id = 0; id < n; ++id)
      frictionless[id] = s.phi0[id] + s.phi1[id] * cps->shadow[id];
    for (int id = 0; id < n; ++id)
      if (frictionless[id] < v[id] - 1e-10) ++dominance_failures;
    for (int id = 0; id < n; ++id) {
      if (m.tree.is_leaf(id) || cps->measure.node_mass(id) <= 0.0) continue;
      double expected =
          conditional_expectation(frictionless, cps->measure, m.tree, id);
      if (expected > frictionless[id] + 1e-9) ++supermartingale_failures;
    }
  }
  std::printf("[acceptance]   %d superreplication witnesses checked\n", checked);
  report(8, "shadow value dominates liquidation value nodewise",
         dominance_failures == 0 && checked > 0);
  report(8, "shadow value is a supermartingale (residual <= 1e-9)",
         supermartingale_failures == 0);
  report(8, "runtime < 10 s", clock.seconds() < 10.0);
}

}  // namespace
}  // namespace asymparb
