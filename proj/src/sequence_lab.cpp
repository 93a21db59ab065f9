#include "asymparb/sequence_lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>

#include "asymparb/subset_scan.hpp"

namespace asymparb::seq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kMaxProfileLeaves = 20;

void require_entry(const SequenceEntry& e, int n) {
  auto bad = validate_market(e.market);
  if (!bad.empty())
    throw std::invalid_argument("sequence entry " + std::to_string(n) +
                                ": invalid market: " + to_string(bad[0]));
  if (e.market.tree.leaf_count() > kMaxProfileLeaves)
    throw std::invalid_argument("sequence entry " + std::to_string(n) +
                                ": more than 20 leaves");
  if (!(e.lambda >= 0.0) || !(e.lambda < 1.0))
    throw std::invalid_argument("sequence entry " + std::to_string(n) +
                                ": lambda outside [0, 1)");
}

/// Warm-started per-entry solver: one polytope, one objective per subset.
class EntrySolver {
 public:
  EntrySolver(const FiniteMarket& market, double lambda, int n)
      : market_(market), n_(n) {
    if (!find_cps(market, lambda))
      throw HypothesisError("no consistent price system at sequence entry " +
                            std::to_string(n));
    poly_ = build_cps_polytope(market, lambda, kEquivalenceTol);
    solver_ = std::make_unique<lp::SimplexSolver>(poly_.lp);
    if (solver_->feasibility() != lp::SolveStatus::optimal)
      throw LpFailure("profile polytope infeasible at entry " + std::to_string(n));
  }

  int leaves() const { return poly_.num_leaves; }
  const FiniteMarket& market() const { return market_; }

  double extreme_mass(std::uint32_t subset, bool maximize) {
    std::vector<double> obj(poly_.lp.num_vars, 0.0);
    double sign = maximize ? 1.0 : -1.0;
    for (int l = 0; l < poly_.num_leaves; ++l)
      if ((subset >> l) & 1u) obj[poly_.q_index(l)] = sign;
    lp::Solution sol = solver_->maximize(obj);
    if (sol.status != lp::SolveStatus::optimal)
      throw LpFailure("profile LP failed at entry " + std::to_string(n_));
    return sign * sol.objective;
  }

 private:
  const FiniteMarket& market_;
  int n_;
  CpsPolytope poly_;
  std::unique_ptr<lp::SimplexSolver> solver_;
};

}  // namespace

void require_valid(const MarketSequence& seq) {
  if (seq.entries.empty())
    throw std::invalid_argument("market sequence is empty");
  for (std::size_t n = 0; n < seq.entries.size(); ++n)
    require_entry(seq.entries[n], static_cast<int>(n));
}

ConsistentPriceSystem mix_cps(const FiniteMarket& market,
                              const std::vector<ConsistentPriceSystem>& systems,
                              const std::vector<double>& weights) {
  require_valid(market);
  if (systems.empty() || systems.size() != weights.size())
    throw std::invalid_argument("mix_cps: need matching systems and weights");
  double wsum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw std::invalid_argument("mix_cps: negative weight");
    wsum += w;
  }
  if (std::abs(wsum - 1.0) > 1e-12)
    throw std::invalid_argument("mix_cps: weights must sum to 1");

  const EventTree& tree = market.tree;
  const int leaves = tree.leaf_count();
  const int nodes = tree.node_count();
  for (const auto& cps : systems) {
    if (static_cast<int>(cps.shadow.size()) != nodes ||
        static_cast<int>(cps.measure.leaf_weight().size()) != leaves)
      throw std::invalid_argument("mix_cps: system shape mismatch");
    auto bad = check_cps(cps, market, market.lambda);
    if (!bad.empty())
      throw std::invalid_argument("mix_cps: input system invalid: " + to_string(bad[0]));
  }

  std::vector<double> q(leaves, 0.0);
  for (std::size_t m = 0; m < systems.size(); ++m)
    for (int l = 0; l < leaves; ++l)
      q[l] += weights[m] * systems[m].measure.leaf_weight(l);
  PricingMeasure measure(tree, std::move(q));

  std::vector<double> shadow(nodes);
  for (int id = 0; id < nodes; ++id) {
    double z = measure.node_mass(id);
    if (z > 0.0) {
      double num = 0.0;
      for (std::size_t m = 0; m < systems.size(); ++m)
        num += weights[m] * systems[m].measure.node_mass(id) * systems[m].shadow[id];
      shadow[id] = num / z;
    } else {
      shadow[id] = market.price[id];
    }
  }
  ConsistentPriceSystem mixed{std::move(measure), std::move(shadow)};
  auto bad = check_cps(mixed, market, market.lambda);
  if (!bad.empty())
    throw LpFailure("mix_cps: mixture failed re-verification: " + to_string(bad[0]));
  return mixed;
}

ContiguityProfile sup_profile(const MarketSequence& seq, double epsilon) {
  require_valid(seq);
  if (!(epsilon > 0.0))
    throw std::invalid_argument("sup_profile: epsilon must be positive");
  ContiguityProfile profile;
  profile.direction = ContiguityProfile::Direction::sup;
  profile.epsilon = epsilon;
  profile.delta_star = kInf;
  for (std::size_t n = 0; n < seq.entries.size(); ++n) {
    const SequenceEntry& e = seq.entries[n];
    EntrySolver solver(e.market, e.lambda, static_cast<int>(n));
    ProfileRow row;
    row.n = static_cast<int>(n);
    row.epsilon = epsilon;
    row.delta_n = kInf;
    double p_running = 0.0;
    std::vector<double> probs = e.market.leaf_prob;
    gray_scan(solver.leaves(), [&](std::uint32_t mask, int bit, bool added) {
      p_running += (added ? 1.0 : -1.0) * probs[bit];
      if (p_running < epsilon - 1e-15) return;
      double best = solver.extreme_mass(mask, /*maximize=*/true);
      if (best < row.delta_n) {
        row.delta_n = best;
        row.witness = mask;
      }
    });
    profile.delta_star = std::min(profile.delta_star, row.delta_n);
    profile.rows.push_back(row);
  }
  return profile;
}

ContiguityProfile inf_profile(const MarketSequence& seq, double epsilon) {
  require_valid(seq);
  if (!(epsilon > 0.0))
    throw std::invalid_argument("inf_profile: epsilon must be positive");
  ContiguityProfile profile;
  profile.direction = ContiguityProfile::Direction::inf;
  profile.epsilon = epsilon;
  profile.delta_star = kInf;
  for (std::size_t n = 0; n < seq.entries.size(); ++n) {
    const SequenceEntry& e = seq.entries[n];
    EntrySolver solver(e.market, e.lambda, static_cast<int>(n));

    // subsets ordered by P-mass; the first offender pins delta_n
    std::vector<std::pair<double, std::uint32_t>> by_mass;
    by_mass.reserve((1u << solver.leaves()) - 1);
    double p_running = 0.0;
    gray_scan(solver.leaves(), [&](std::uint32_t mask, int bit, bool added) {
      p_running += (added ? 1.0 : -1.0) * e.market.leaf_prob[bit];
      by_mass.emplace_back(p_running, mask);
    });
    std::sort(by_mass.begin(), by_mass.end());

    ProfileRow row;
    row.n = static_cast<int>(n);
    row.epsilon = epsilon;
    row.delta_n = 1.0;
    for (const auto& [p_mass, mask] : by_mass) {
      double least = solver.extreme_mass(mask, /*maximize=*/false);
      if (least >= epsilon) {  // offender: some measure keeps the set heavy
        row.delta_n = p_mass;
        row.witness = mask;
        break;
      }
    }
    profile.delta_star = std::min(profile.delta_star, row.delta_n);
    profile.rows.push_back(row);
  }
  return profile;
}

std::vector<SeparabilityRow> separability_scan(const MarketSequence& seq,
                                               double eta) {
  require_valid(seq);
  if (!(eta >= 0.0))
    throw std::invalid_argument("separability_scan: eta must be >= 0");
  std::vector<SeparabilityRow> out;
  for (std::size_t n = 0; n < seq.entries.size(); ++n) {
    const SequenceEntry& e = seq.entries[n];
    EntrySolver solver(e.market, e.lambda, static_cast<int>(n));

    std::vector<std::pair<double, std::uint32_t>> by_mass;
    by_mass.reserve((1u << solver.leaves()) - 1);
    double p_running = 0.0;
    gray_scan(solver.leaves(), [&](std::uint32_t mask, int bit, bool added) {
      p_running += (added ? 1.0 : -1.0) * e.market.leaf_prob[bit];
      by_mass.emplace_back(p_running, mask);
    });
    std::sort(by_mass.begin(), by_mass.end(),
              [](const auto& a, const auto& b) {
                return a.first > b.first || (a.first == b.first && a.second < b.second);
              });

    SeparabilityRow row;
    row.n = static_cast<int>(n);
    for (const auto& [p_mass, mask] : by_mass) {
      double sup_q = solver.extreme_mass(mask, /*maximize=*/true);
      if (sup_q <= eta) {
        row.subset = mask;
        row.p_mass = p_mass;
        row.sup_q = sup_q;
        break;
      }
    }
    out.push_back(row);  // stays {0, 0, 0} when no subset qualifies
  }
  return out;
}

LambdaRule LambdaRule::parse(const std::string& text) {
  if (text == "zero") return zero();
  auto colon = text.find(':');
  if (colon != std::string::npos) {
    std::string head = text.substr(0, colon);
    double value = std::stod(text.substr(colon + 1));
    if (head == "threshold_multiple") return threshold_multiple(value);
    if (head == "fixed") return fixed(value);
  }
  throw std::invalid_argument(
      "bad lambda rule '" + text +
      "' (expected zero, threshold_multiple:K or fixed:L)");
}

double LambdaRule::lambda_for(const ex6::ExampleSixParams& p) const {
  switch (kind) {
    case Kind::zero:
      return 0.0;
    case Kind::threshold_multiple:
      return std::min(value * ex6::lambda_threshold(p), 1.0 - 1e-12);
    case Kind::fixed:
      return value;
  }
  return 0.0;
}

SequenceReport section6_report(const std::vector<ex6::ExampleSixParams>& params_list,
                               const LambdaRule& rule, const McConfig& mc) {
  if (params_list.empty())
    throw std::invalid_argument("section6_report: empty parameter list");
  SequenceReport report;
  report.rows.reserve(params_list.size());
  for (std::size_t n = 0; n < params_list.size(); ++n) {
    const ex6::ExampleSixParams& base = params_list[n];
    Example6Row row;
    row.n = static_cast<int>(n);
    row.lambda_used = rule.lambda_for(base);
    row.params = ex6::ExampleSixParams::make(base.T, base.eps, base.gamma,
                                             row.lambda_used);
    row.closed = ex6::closed_form_row(row.params, mc.grid_points);
    row.mc = ex6::mc_terminal(row.params, mc.n_paths, mc.seed);
    report.rows.push_back(std::move(row));
  }

  report.separability_trend = report.rows.size() > 1;
  for (std::size_t n = 1; n < report.rows.size(); ++n) {
    if (!(report.rows[n].closed.p_a > report.rows[n - 1].closed.p_a) ||
        !(report.rows[n].closed.q_a < report.rows[n - 1].closed.q_a))
      report.separability_trend = false;
  }
  report.contiguity_trend = true;
  const double e2 = std::exp(2.0);
  for (const Example6Row& row : report.rows) {
    if (row.closed.zeta_n > e2) report.contiguity_trend = false;
    // for very large T the whole band underflows and the margin degenerates
    // to exactly 0; only a genuinely negative margin spoils the trend
    if (row.lambda_used > row.closed.lambda_threshold &&
        row.closed.containment_margin < 0.0)
      report.contiguity_trend = false;
  }
  return report;
}

}  // namespace asymparb::seq
