#include "asymparb/halmos_savage.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "asymparb/simplex.hpp"
#include "asymparb/subset_scan.hpp"

namespace asymparb::hs {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// running P(A) and Q_g(A) sums updated one flipped atom at a time
struct RunningMasses {
  const FiniteMeasureFamily& family;
  double p = 0.0;
  std::vector<double> q;

  explicit RunningMasses(const FiniteMeasureFamily& f)
      : family(f), q(f.generators.size(), 0.0) {}

  void flip(int atom, bool added) {
    double s = added ? 1.0 : -1.0;
    p += s * family.base[atom];
    for (std::size_t g = 0; g < q.size(); ++g)
      q[g] += s * family.generators[g][atom];
  }
};

// max over mixture weights of the min of Q_w(A) over qualifying subsets
// (direction = +1), or the min of the max (direction = -1), by row
// generation: subsets are many, weights are few.
HsCertificate minimax(const FiniteMeasureFamily& family, bool maximize_min,
                      double p_cut, bool cut_is_lower, double threshold,
                      bool pass_is_greater) {
  const int g_count = static_cast<int>(family.generators.size());
  HsCertificate cert;
  cert.threshold = threshold;
  cert.weights.assign(g_count, 1.0 / g_count);

  // oracle: worst qualifying subset for the weights, by a single Gray scan
  auto worst_subset = [&](const std::vector<double>& w, std::uint32_t& mask_out,
                          double& value_out) -> bool {
    RunningMasses run(family);
    bool found = false;
    double best = maximize_min ? kInf : -kInf;
    std::uint32_t best_mask = 0;
    gray_scan(family.outcomes(), [&](std::uint32_t mask, int atom, bool added) {
      run.flip(atom, added);
      bool qualifies = cut_is_lower ? run.p > p_cut : run.p < p_cut;
      if (!qualifies) return;
      double v = 0.0;
      for (int g = 0; g < g_count; ++g) v += w[g] * run.q[g];
      if (!found || (maximize_min ? v < best : v > best)) {
        found = true;
        best = v;
        best_mask = mask;
      }
    });
    mask_out = best_mask;
    value_out = best;
    return found;
  };

  std::uint32_t mask;
  double value;
  if (!worst_subset(cert.weights, mask, value)) {
    cert.vacuous = true;
    cert.value = maximize_min ? kInf : -kInf;
    cert.pass = true;
    return cert;
  }

  // LP over (w, t): max t s.t. Q_w(A) >= t for the working set (or min z,
  // mirrored); new binding subsets come from the oracle until none is
  // violated.
  std::vector<std::uint32_t> working{mask};
  for (int round = 0; round < (1 << family.outcomes()); ++round) {
    lp::LinearProgram prob;
    prob.resize(g_count + 1);
    const int t_index = g_count;
    prob.lower[t_index] = -lp::LinearProgram::inf;
    {
      lp::Row sum_row{std::vector<double>(prob.num_vars, 0.0), lp::RowSense::eq, 1.0};
      for (int g = 0; g < g_count; ++g) sum_row.a[g] = 1.0;
      prob.rows.push_back(std::move(sum_row));
    }
    for (std::uint32_t a : working) {
      lp::Row row{std::vector<double>(prob.num_vars, 0.0),
                  maximize_min ? lp::RowSense::ge : lp::RowSense::le, 0.0};
      for (int g = 0; g < g_count; ++g) {
        double qa = 0.0;
        for (int atom = 0; atom < family.outcomes(); ++atom)
          if ((a >> atom) & 1u) qa += family.generators[g][atom];
        row.a[g] = qa;
      }
      row.a[t_index] = -1.0;
      prob.rows.push_back(std::move(row));
    }
    prob.objective[t_index] = maximize_min ? 1.0 : -1.0;
    lp::Solution sol = lp::solve(prob);
    if (sol.status != lp::SolveStatus::optimal)
      throw lp::LpError("halmos-savage minimax: LP failed");
    std::vector<double> w(sol.x.begin(), sol.x.begin() + g_count);
    double t = sol.x[t_index];

    std::uint32_t worst;
    double worst_value;
    worst_subset(w, worst, worst_value);
    bool settled = maximize_min ? worst_value >= t - 1e-9 : worst_value <= t + 1e-9;
    if (!settled) {
      // the oracle re-finding a working subset means LP and scan agree to
      // within solver tolerance
      for (std::uint32_t a : working)
        if (a == worst) settled = true;
    }
    if (settled) {
      cert.weights = std::move(w);
      cert.value = worst_value;
      cert.witness = worst;
      cert.pass = pass_is_greater ? cert.value > threshold : cert.value < threshold;
      return cert;
    }
    working.push_back(worst);
  }
  throw lp::LpError("halmos-savage minimax: row generation failed to settle");
}

}  // namespace

void require_valid(const FiniteMeasureFamily& family) {
  const int k = family.outcomes();
  if (k < 1) throw std::invalid_argument("family: empty outcome space");
  if (k > FiniteMeasureFamily::kMaxOutcomes)
    throw std::invalid_argument("family: outcome cap (20) exceeded");
  if (family.generators.empty())
    throw std::invalid_argument("family: no generators");
  auto check_vec = [&](const std::vector<double>& v, const std::string& name) {
    if (static_cast<int>(v.size()) != k)
      throw std::invalid_argument("family: " + name + " has wrong length");
    double sum = 0.0;
    for (double x : v) {
      if (!(x >= 0.0)) throw std::invalid_argument("family: " + name + " has a negative mass");
      sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-12)
      throw std::invalid_argument("family: " + name + " does not sum to 1");
  };
  check_vec(family.base, "base");
  for (std::size_t g = 0; g < family.generators.size(); ++g) {
    check_vec(family.generators[g], "generator " + std::to_string(g));
    for (int atom = 0; atom < k; ++atom)
      if (family.base[atom] == 0.0 && family.generators[g][atom] > 0.0)
        throw std::invalid_argument("family: generator " + std::to_string(g) +
                                    " is not absolutely continuous");
  }
}

SubsetCheck verify_hs1(const FiniteMeasureFamily& family, double epsilon,
                       double delta) {
  require_valid(family);
  if (!(epsilon > 0.0 && epsilon < 1.0 && delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("verify_hs1: epsilon, delta must lie in (0, 1)");
  SubsetCheck out;
  RunningMasses run(family);
  gray_scan(family.outcomes(), [&](std::uint32_t mask, int atom, bool added) {
    run.flip(atom, added);
    if (!out.holds || run.p <= epsilon) return;
    double best = 0.0;
    for (double q : run.q) best = std::max(best, q);
    if (!(best > delta)) {
      out.holds = false;
      out.counterexample = mask;
    }
  });
  return out;
}

SubsetCheck verify_hs2(const FiniteMeasureFamily& family, double epsilon,
                       double delta) {
  require_valid(family);
  if (!(epsilon > 0.0 && delta > 0.0))
    throw std::invalid_argument("verify_hs2: epsilon, delta must be positive");
  SubsetCheck out;
  RunningMasses run(family);
  gray_scan(family.outcomes(), [&](std::uint32_t mask, int atom, bool added) {
    run.flip(atom, added);
    if (!out.holds || run.p >= delta) return;
    double best = kInf;
    for (double q : run.q) best = std::min(best, q);
    if (!(best < epsilon)) {
      out.holds = false;
      out.counterexample = mask;
    }
  });
  return out;
}

HsCertificate hs1_find_q0(const FiniteMeasureFamily& family, double epsilon,
                          double delta) {
  require_valid(family);
  if (!(epsilon > 0.0 && delta > 0.0))
    throw std::invalid_argument("hs1_find_q0: epsilon, delta must be positive");
  return minimax(family, /*maximize_min=*/true, /*p_cut=*/4.0 * epsilon,
                 /*cut_is_lower=*/true, /*threshold=*/epsilon * epsilon * delta / 2.0,
                 /*pass_is_greater=*/true);
}

HsCertificate hs2_find_q0(const FiniteMeasureFamily& family, double epsilon,
                          double delta) {
  require_valid(family);
  if (!(epsilon > 0.0 && delta > 0.0))
    throw std::invalid_argument("hs2_find_q0: epsilon, delta must be positive");
  return minimax(family, /*maximize_min=*/false, /*p_cut=*/2.0 * epsilon * delta,
                 /*cut_is_lower=*/false, /*threshold=*/8.0 * epsilon,
                 /*pass_is_greater=*/false);
}

}  // namespace asymparb::hs
