#include "asymparb/cps_lp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace asymparb {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_lambda(double lambda) {
  if (!(lambda >= 0.0) || !(lambda < 1.0))
    throw std::invalid_argument("lambda must lie in [0, 1)");
}

[[noreturn]] void lp_failed(const char* what, const lp::Solution& sol) {
  std::string why;
  switch (sol.status) {
    case lp::SolveStatus::unbounded: why = "unbounded"; break;
    case lp::SolveStatus::infeasible: why = "infeasible"; break;
    default: why = "numerical failure"; break;
  }
  if (!sol.note.empty()) why += " (" + sol.note + ")";
  throw LpFailure(std::string(what) + ": LP " + why);
}

}  // namespace

CpsPolytope build_cps_polytope(const FiniteMarket& market, double lambda,
                               double leaf_floor) {
  const EventTree& tree = market.tree;
  const int leaves = tree.leaf_count();
  const int nodes = tree.node_count();

  CpsPolytope poly;
  poly.num_leaves = leaves;
  lp::LinearProgram& lp = poly.lp;
  lp.resize(leaves + nodes);
  for (int l = 0; l < leaves; ++l) lp.lower[poly.q_index(l)] = leaf_floor;
  for (int id = 0; id < nodes; ++id) lp.lower[poly.m_index(id)] = 0.0;

  // sum of leaf weights = 1
  {
    lp::Row row{std::vector<double>(lp.num_vars, 0.0), lp::RowSense::eq, 1.0};
    for (int l = 0; l < leaves; ++l) row.a[poly.q_index(l)] = 1.0;
    lp.rows.push_back(std::move(row));
  }
  // martingale: m(node) = sum over children of m(child)
  for (int id = 0; id < nodes; ++id) {
    if (tree.is_leaf(id)) continue;
    lp::Row row{std::vector<double>(lp.num_vars, 0.0), lp::RowSense::eq, 0.0};
    row.a[poly.m_index(id)] = 1.0;
    for (int c : tree.children(id)) row.a[poly.m_index(c)] = -1.0;
    lp.rows.push_back(std::move(row));
  }
  // containment: (1-lambda) S(n) Z(n) <= m(n) <= S(n) Z(n)
  for (int id = 0; id < nodes; ++id) {
    auto [lo, hi] = tree.leaf_range(id);
    lp::Row upper{std::vector<double>(lp.num_vars, 0.0), lp::RowSense::le, 0.0};
    upper.a[poly.m_index(id)] = 1.0;
    for (int l = lo; l < hi; ++l) upper.a[poly.q_index(l)] = -market.price[id];
    lp.rows.push_back(std::move(upper));

    lp::Row lower{std::vector<double>(lp.num_vars, 0.0), lp::RowSense::ge, 0.0};
    lower.a[poly.m_index(id)] = 1.0;
    for (int l = lo; l < hi; ++l)
      lower.a[poly.q_index(l)] = -(1.0 - lambda) * market.price[id];
    lp.rows.push_back(std::move(lower));
  }
  return poly;
}

ConsistentPriceSystem cps_from_point(const FiniteMarket& market, double lambda,
                                     const std::vector<double>& x,
                                     const CpsPolytope& poly) {
  const EventTree& tree = market.tree;
  std::vector<double> q(poly.num_leaves);
  double sum = 0.0;
  for (int l = 0; l < poly.num_leaves; ++l) {
    q[l] = std::max(x[poly.q_index(l)], 0.0);
    sum += q[l];
  }
  if (sum <= 0.0) throw LpFailure("cps_from_point: zero total mass");
  for (double& w : q) w /= sum;

  PricingMeasure measure(tree, std::move(q));
  std::vector<double> shadow(tree.node_count());
  for (int id = 0; id < tree.node_count(); ++id) {
    double mass = measure.node_mass(id);
    if (mass > 1e-12) {
      double s = x[poly.m_index(id)] / (mass * sum);
      // snap fp noise back into the band; genuine violations are caught by
      // the re-verification below
      s = std::clamp(s, (1.0 - lambda) * market.price[id], market.price[id]);
      shadow[id] = s;
    } else {
      shadow[id] = market.price[id];
    }
  }
  return ConsistentPriceSystem{std::move(measure), std::move(shadow)};
}

std::optional<ConsistentPriceSystem> find_cps(const FiniteMarket& market,
                                              double lambda) {
  require_valid(market);
  require_lambda(lambda);

  CpsPolytope poly = build_cps_polytope(market, lambda, 0.0);
  lp::LinearProgram& lp = poly.lp;
  // extra variable: the minimum leaf weight, to be maximized
  const int t_index = lp.num_vars;
  lp.num_vars += 1;
  lp.objective.push_back(0.0);
  lp.lower.push_back(0.0);
  lp.upper.push_back(1.0);
  for (auto& row : lp.rows) row.a.push_back(0.0);
  for (int l = 0; l < poly.num_leaves; ++l) {
    lp::Row row{std::vector<double>(lp.num_vars, 0.0), lp::RowSense::ge, 0.0};
    row.a[poly.q_index(l)] = 1.0;
    row.a[t_index] = -1.0;
    lp.rows.push_back(std::move(row));
  }
  std::vector<double> obj(lp.num_vars, 0.0);
  obj[t_index] = 1.0;

  lp::SimplexSolver solver(lp);
  if (solver.feasibility() == lp::SolveStatus::infeasible) return std::nullopt;
  lp::Solution sol = solver.maximize(obj);
  if (sol.status == lp::SolveStatus::infeasible) return std::nullopt;
  if (sol.status != lp::SolveStatus::optimal) lp_failed("find_cps", sol);
  if (sol.objective <= kEquivalenceTol) return std::nullopt;

  ConsistentPriceSystem cps = cps_from_point(market, lambda, sol.x, poly);
  auto bad = check_cps(cps, market, lambda);
  if (!bad.empty())
    throw LpFailure("find_cps: solution failed re-verification: " + to_string(bad[0]));
  return cps;
}

std::optional<ConsistentPriceSystem> find_cps_maximizing(
    const FiniteMarket& market, double lambda,
    const std::vector<double>& leaf_objective) {
  require_valid(market);
  require_lambda(lambda);
  if (static_cast<int>(leaf_objective.size()) != market.tree.leaf_count())
    throw std::invalid_argument("find_cps_maximizing: objective size != leaf count");

  CpsPolytope poly = build_cps_polytope(market, lambda, kEquivalenceTol);
  lp::SimplexSolver solver(poly.lp);
  if (solver.feasibility() == lp::SolveStatus::infeasible) return std::nullopt;
  std::vector<double> obj(poly.lp.num_vars, 0.0);
  for (int l = 0; l < poly.num_leaves; ++l) obj[poly.q_index(l)] = leaf_objective[l];
  lp::Solution sol = solver.maximize(obj);
  if (sol.status == lp::SolveStatus::infeasible) return std::nullopt;
  if (sol.status != lp::SolveStatus::optimal)
    lp_failed("find_cps_maximizing", sol);

  ConsistentPriceSystem cps = cps_from_point(market, lambda, sol.x, poly);
  auto bad = check_cps(cps, market, lambda);
  if (!bad.empty())
    throw LpFailure("find_cps_maximizing: solution failed re-verification: " +
                    to_string(bad[0]));
  return cps;
}

namespace {

/// Variable layout shared by the arbitrage and superreplication primal LPs:
/// per node buy, sell (>= 0) and a free bond change d0; per leaf a split
/// (pos, neg) of the terminal stock position so the liquidation value is
/// linear. Terminal values using the split never exceed the true liquidation
/// value, so feasibility is exactly preserved.
struct TradeLp {
  lp::LinearProgram lp;
  int nodes = 0;
  int leaves = 0;
  int buy(int id) const { return 3 * id; }
  int sell(int id) const { return 3 * id + 1; }
  int d0(int id) const { return 3 * id + 2; }
  int pos(int ordinal) const { return 3 * nodes + 2 * ordinal; }
  int neg(int ordinal) const { return 3 * nodes + 2 * ordinal + 1; }
  int extra(int k) const { return 3 * nodes + 2 * leaves + k; }
};

TradeLp build_trade_lp(const FiniteMarket& market, double lambda, int num_extra) {
  const EventTree& tree = market.tree;
  TradeLp t;
  t.nodes = tree.node_count();
  t.leaves = tree.leaf_count();
  t.lp.resize(3 * t.nodes + 2 * t.leaves + num_extra);
  for (int id = 0; id < t.nodes; ++id)
    t.lp.lower[t.d0(id)] = -lp::LinearProgram::inf;

  // self-financing: d0 <= (1-lambda) S sell - S buy
  for (int id = 0; id < t.nodes; ++id) {
    lp::Row row{std::vector<double>(t.lp.num_vars, 0.0), lp::RowSense::le, 0.0};
    row.a[t.d0(id)] = 1.0;
    row.a[t.sell(id)] = -(1.0 - lambda) * market.price[id];
    row.a[t.buy(id)] = market.price[id];
    t.lp.rows.push_back(std::move(row));
  }
  // terminal stock split: pos - neg = sum of (buy - sell) along the path
  for (int l = 0; l < t.leaves; ++l) {
    lp::Row row{std::vector<double>(t.lp.num_vars, 0.0), lp::RowSense::eq, 0.0};
    row.a[t.pos(l)] = 1.0;
    row.a[t.neg(l)] = -1.0;
    for (int id = tree.leaf_node(l);;) {
      row.a[t.buy(id)] -= 1.0;
      row.a[t.sell(id)] += 1.0;
      auto p = tree.node(id).parent;
      if (!p) break;
      id = *p;
    }
    t.lp.rows.push_back(std::move(row));
  }
  return t;
}

// terminal liquidation value in split form:
// sum of d0 along the path + (1-lambda) S pos - S neg
lp::Row terminal_value_row(const TradeLp& t, const FiniteMarket& market,
                           double lambda, int ordinal, lp::RowSense sense,
                           double rhs) {
  const EventTree& tree = market.tree;
  lp::Row row{std::vector<double>(t.lp.num_vars, 0.0), sense, rhs};
  int leaf = tree.leaf_node(ordinal);
  for (int id = leaf;;) {
    row.a[t.d0(id)] += 1.0;
    auto p = tree.node(id).parent;
    if (!p) break;
    id = *p;
  }
  row.a[t.pos(ordinal)] = (1.0 - lambda) * market.price[leaf];
  row.a[t.neg(ordinal)] = -market.price[leaf];
  return row;
}

TradingStrategy strategy_from_lp(const FiniteMarket& market, const TradeLp& t,
                                 const std::vector<double>& x) {
  const int n = market.tree.node_count();
  std::vector<double> buy(n), sell(n), d0(n);
  for (int id = 0; id < n; ++id) {
    buy[id] = std::max(x[t.buy(id)], 0.0);
    sell[id] = std::max(x[t.sell(id)], 0.0);
    d0[id] = x[t.d0(id)];
  }
  return TradingStrategy::from_trades(market.tree, std::move(buy), std::move(sell),
                                      std::move(d0));
}

}  // namespace

std::optional<TradingStrategy> find_arbitrage(const FiniteMarket& market,
                                              double lambda) {
  require_valid(market);
  require_lambda(lambda);
  const EventTree& tree = market.tree;

  TradeLp t = build_trade_lp(market, lambda, 0);
  // terminal liquidation value >= 0 everywhere
  for (int l = 0; l < t.leaves; ++l)
    t.lp.rows.push_back(terminal_value_row(t, market, lambda, l, lp::RowSense::ge, 0.0));
  // scale normalization: expected terminal value >= 1
  {
    lp::Row row{std::vector<double>(t.lp.num_vars, 0.0), lp::RowSense::ge, 1.0};
    for (int l = 0; l < t.leaves; ++l) {
      lp::Row v = terminal_value_row(t, market, lambda, l, lp::RowSense::ge, 0.0);
      for (int j = 0; j < t.lp.num_vars; ++j) row.a[j] += market.leaf_prob[l] * v.a[j];
    }
    t.lp.rows.push_back(std::move(row));
  }

  lp::SimplexSolver solver(t.lp);
  if (solver.feasibility() == lp::SolveStatus::infeasible) return std::nullopt;
  lp::Solution sol = solver.maximize(std::vector<double>(t.lp.num_vars, 0.0));
  if (sol.status == lp::SolveStatus::infeasible) return std::nullopt;
  if (sol.status != lp::SolveStatus::optimal) lp_failed("find_arbitrage", sol);

  TradingStrategy strat = strategy_from_lp(market, t, sol.x);
  // re-verify independently of the LP
  auto bad = check_self_financing(strat, market);
  if (!bad.empty())
    throw LpFailure("find_arbitrage: witness not self-financing: " + to_string(bad[0]));
  std::vector<double> v = liquidation_value(strat, market);
  double expected = 0.0;
  for (int l = 0; l < t.leaves; ++l) {
    double vl = v[tree.leaf_node(l)];
    if (vl < -1e-8)
      throw LpFailure("find_arbitrage: witness has negative terminal value");
    expected += market.leaf_prob[l] * vl;
  }
  if (expected < 1.0 - 1e-6)
    throw LpFailure("find_arbitrage: witness misses the scale normalization");
  return strat;
}

SuperrepResult superreplicate(const FiniteMarket& market, double lambda,
                              const std::vector<double>& claim) {
  require_valid(market);
  require_lambda(lambda);
  const EventTree& tree = market.tree;
  if (static_cast<int>(claim.size()) != tree.leaf_count())
    throw std::invalid_argument("superreplicate: claim size != leaf count");

  SuperrepResult result;

  // dual: sup E_Q[claim] over the closed polytope
  CpsPolytope poly = build_cps_polytope(market, lambda, 0.0);
  lp::SimplexSolver dual_solver(poly.lp);
  if (dual_solver.feasibility() == lp::SolveStatus::infeasible) {
    result.solvable = false;
    result.dual_value = -kInf;
    result.primal_value = -kInf;
    result.witness_strategy = TradingStrategy::zero(tree);
    return result;
  }
  std::vector<double> dual_obj(poly.lp.num_vars, 0.0);
  for (int l = 0; l < poly.num_leaves; ++l) dual_obj[poly.q_index(l)] = claim[l];
  lp::Solution dual = dual_solver.maximize(dual_obj);
  if (dual.status != lp::SolveStatus::optimal) lp_failed("superreplicate dual", dual);
  result.solvable = true;
  result.dual_value = dual.objective;
  result.witness_cps = cps_from_point(market, lambda, dual.x, poly);

  // primal: min x such that trades from (x, 0) superreplicate the claim
  TradeLp t = build_trade_lp(market, lambda, 1);
  const int x_index = t.extra(0);
  t.lp.lower[x_index] = -lp::LinearProgram::inf;
  for (int l = 0; l < t.leaves; ++l) {
    lp::Row row = terminal_value_row(t, market, lambda, l, lp::RowSense::ge, claim[l]);
    row.a[x_index] = 1.0;
    t.lp.rows.push_back(std::move(row));
  }
  std::vector<double> primal_obj(t.lp.num_vars, 0.0);
  primal_obj[x_index] = -1.0;  // maximize -x
  lp::SimplexSolver primal_solver(t.lp);
  lp::Solution primal = primal_solver.maximize(primal_obj);
  if (primal.status != lp::SolveStatus::optimal)
    lp_failed("superreplicate primal", primal);
  result.primal_value = -primal.objective;
  result.witness_strategy = strategy_from_lp(market, t, primal.x);

  auto bad = check_self_financing(result.witness_strategy, market);
  if (!bad.empty())
    throw LpFailure("superreplicate: witness not self-financing: " + to_string(bad[0]));
  std::vector<double> v = liquidation_value(result.witness_strategy, market);
  for (int l = 0; l < t.leaves; ++l)
    if (result.primal_value + v[tree.leaf_node(l)] < claim[l] - 1e-7)
      throw LpFailure("superreplicate: witness fails to dominate the claim");
  return result;
}

std::optional<TradingStrategy> attain_claim(const FiniteMarket& market,
                                            double lambda,
                                            const std::vector<double>& claim) {
  require_valid(market);
  require_lambda(lambda);
  const EventTree& tree = market.tree;

  SuperrepResult rep = superreplicate(market, lambda, claim);
  if (rep.solvable && rep.dual_value > 1e-9) return std::nullopt;

  // zero-endowment feasibility; relax the target by a whisker if the dual
  // optimum sits inside (0, 1e-9]
  for (double relax : {0.0, 2e-9}) {
    TradeLp t = build_trade_lp(market, lambda, 0);
    for (int l = 0; l < t.leaves; ++l)
      t.lp.rows.push_back(
          terminal_value_row(t, market, lambda, l, lp::RowSense::ge, claim[l] - relax));
    lp::SimplexSolver solver(t.lp);
    if (solver.feasibility() == lp::SolveStatus::infeasible) continue;
    lp::Solution sol = solver.maximize(std::vector<double>(t.lp.num_vars, 0.0));
    if (sol.status == lp::SolveStatus::infeasible) continue;
    if (sol.status != lp::SolveStatus::optimal) lp_failed("attain_claim", sol);

    TradingStrategy strat = strategy_from_lp(market, t, sol.x);
    // free disposal: burn the surplus bond at each leaf so the terminal
    // liquidation value is exactly the claim
    std::vector<double> v = liquidation_value(strat, market);
    for (int l = 0; l < t.leaves; ++l) {
      int leaf = tree.leaf_node(l);
      double surplus = v[leaf] - claim[l];
      if (surplus > 0.0) {
        strat.delta0[leaf] -= surplus;
        strat.phi0[leaf] -= surplus;
      }
    }
    v = liquidation_value(strat, market);
    for (int l = 0; l < t.leaves; ++l)
      if (std::abs(v[tree.leaf_node(l)] - claim[l]) > 1e-8)
        throw LpFailure("attain_claim: exact attainment failed");
    auto bad = check_self_financing(strat, market);
    if (!bad.empty())
      throw LpFailure("attain_claim: witness not self-financing: " + to_string(bad[0]));
    return strat;
  }
  throw LpFailure("attain_claim: dual value within tolerance but no witness found");
}

std::vector<ScanFlag> schach_scan(const FiniteMarket& market,
                                  const std::vector<double>& lambda_grid,
                                  const std::vector<TradingStrategy>& strategies) {
  require_valid(market);
  for (double lam : lambda_grid) {
    require_lambda(lam);
    if (!find_cps(market, lam))
      throw HypothesisError("schach_scan: no consistent price system at lambda = " +
                            std::to_string(lam));
  }
  const EventTree& tree = market.tree;
  std::vector<ScanFlag> flags;
  for (int k = 0; k < static_cast<int>(strategies.size()); ++k) {
    std::vector<double> v = liquidation_value(strategies[k], market);
    double terminal_min = kInf;
    for (int leaf : tree.leaves()) terminal_min = std::min(terminal_min, v[leaf]);
    double floor = terminal_min;  // == -M with M = -min terminal value
    for (int id = 0; id < tree.node_count(); ++id) {
      if (tree.is_leaf(id)) continue;
      if (v[id] < floor - 1e-9) flags.push_back({k, id, v[id], floor});
    }
  }
  return flags;
}

}  // namespace asymparb
