#include "asymparb/market.hpp"

#include <cmath>
#include <cstdio>
#include <string>

namespace asymparb {

namespace {

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

}  // namespace

std::vector<Violation> validate_market(const FiniteMarket& market) {
  std::vector<Violation> out = market.tree.validate();
  const int n = market.tree.node_count();
  const int leaves = market.tree.leaf_count();

  if (static_cast<int>(market.price.size()) != n) {
    out.push_back({std::nullopt, "price",
                   "expected " + std::to_string(n) + " node prices, got " +
                       std::to_string(market.price.size())});
  } else {
    for (int id = 0; id < n; ++id)
      if (!(market.price[id] > 0.0))
        out.push_back({id, "price", "non-positive price " + num(market.price[id])});
  }

  if (static_cast<int>(market.leaf_prob.size()) != leaves) {
    out.push_back({std::nullopt, "leaf_prob",
                   "expected " + std::to_string(leaves) + " leaf probabilities, got " +
                       std::to_string(market.leaf_prob.size())});
  } else {
    double sum = 0.0;
    for (int i = 0; i < leaves; ++i) {
      if (!(market.leaf_prob[i] > 0.0))
        out.push_back({market.tree.leaf_node(i), "leaf_prob",
                       "non-positive probability " + num(market.leaf_prob[i])});
      sum += market.leaf_prob[i];
    }
    if (std::abs(sum - 1.0) > 1e-12)
      out.push_back({std::nullopt, "leaf_prob",
                     "leaf probabilities sum " + num(sum) + " != 1"});
  }

  if (!(market.lambda >= 0.0) || !(market.lambda < 1.0))
    out.push_back({std::nullopt, "lambda",
                   "transaction cost " + num(market.lambda) + " outside [0, 1)"});
  return out;
}

void require_valid(const FiniteMarket& market) {
  auto violations = validate_market(market);
  if (violations.empty()) return;
  std::string msg = "invalid market:";
  for (const auto& v : violations) msg += "\n  " + to_string(v);
  throw std::invalid_argument(msg);
}

PricingMeasure::PricingMeasure(const EventTree& tree, std::vector<double> leaf_weight)
    : leaf_weight_(std::move(leaf_weight)) {
  if (static_cast<int>(leaf_weight_.size()) != tree.leaf_count())
    throw std::invalid_argument("PricingMeasure: weight count != leaf count");
  node_mass_.assign(tree.node_count(), 0.0);
  const auto& order = tree.by_time();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int id = *it;
    if (tree.is_leaf(id)) {
      node_mass_[id] = leaf_weight_[tree.leaf_ordinal(id)];
    } else {
      double m = 0.0;
      for (int c : tree.children(id)) m += node_mass_[c];
      node_mass_[id] = m;
    }
  }
}

bool PricingMeasure::is_equivalent(double tol) const {
  // a hair of relative slack so renormalization cannot knock a weight
  // sitting exactly on the tolerance below it
  const double cut = tol * (1.0 - 1e-9);
  for (double w : leaf_weight_)
    if (w < cut) return false;
  return true;
}

std::vector<Violation> check_cps(const ConsistentPriceSystem& cps,
                                 const FiniteMarket& market, double lambda,
                                 bool require_equivalent) {
  std::vector<Violation> out;
  const EventTree& tree = market.tree;
  const int n = tree.node_count();
  if (static_cast<int>(cps.shadow.size()) != n) {
    out.push_back({std::nullopt, "shadow", "shadow price size != node count"});
    return out;
  }
  if (static_cast<int>(cps.measure.leaf_weight().size()) != tree.leaf_count()) {
    out.push_back({std::nullopt, "measure", "weight count != leaf count"});
    return out;
  }
  if (require_equivalent && !cps.measure.is_equivalent())
    out.push_back({std::nullopt, "measure",
                   "leaf weight below the strict-positivity tolerance"});
  double mass_sum = cps.measure.node_mass(tree.root());
  if (std::abs(mass_sum - 1.0) > 1e-9)
    out.push_back({tree.root(), "measure", "root mass " + num(mass_sum) + " != 1"});

  for (int id = 0; id < n; ++id) {
    double lo = (1.0 - lambda) * market.price[id];
    double hi = market.price[id];
    double s = cps.shadow[id];
    if (s < lo - kContainmentTol || s > hi + kContainmentTol)
      out.push_back({id, "shadow",
                     "shadow " + num(s) + " outside bid-ask [" + num(lo) + ", " +
                         num(hi) + "]"});
    if (!tree.is_leaf(id) && cps.measure.node_mass(id) > 0.0) {
      double expect = 0.0;
      for (int c : tree.children(id))
        expect += cps.measure.node_mass(c) / cps.measure.node_mass(id) * cps.shadow[c];
      if (std::abs(expect - s) > kMartingaleTol)
        out.push_back({id, "shadow",
                       "martingale residual " + num(std::abs(expect - s))});
    }
  }
  return out;
}

TradingStrategy TradingStrategy::zero(const EventTree& tree) {
  TradingStrategy s;
  const int n = tree.node_count();
  s.phi0.assign(n, 0.0);
  s.phi1.assign(n, 0.0);
  s.buy1.assign(n, 0.0);
  s.sell1.assign(n, 0.0);
  s.delta0.assign(n, 0.0);
  return s;
}

TradingStrategy TradingStrategy::from_trades(const EventTree& tree,
                                             std::vector<double> buy1,
                                             std::vector<double> sell1,
                                             std::vector<double> delta0) {
  const int n = tree.node_count();
  if (static_cast<int>(buy1.size()) != n || static_cast<int>(sell1.size()) != n ||
      static_cast<int>(delta0.size()) != n)
    throw std::invalid_argument("from_trades: increment size != node count");
  TradingStrategy s;
  s.buy1 = std::move(buy1);
  s.sell1 = std::move(sell1);
  s.delta0 = std::move(delta0);
  s.phi0.assign(n, 0.0);
  s.phi1.assign(n, 0.0);
  for (int id : tree.by_time()) {
    double p0 = 0.0, p1 = 0.0;
    if (tree.node(id).parent) {
      p0 = s.phi0[*tree.node(id).parent];
      p1 = s.phi1[*tree.node(id).parent];
    }
    s.phi0[id] = p0 + s.delta0[id];
    s.phi1[id] = p1 + s.buy1[id] - s.sell1[id];
  }
  return s;
}

std::vector<Violation> check_self_financing(const TradingStrategy& s,
                                            const FiniteMarket& market,
                                            double tol) {
  std::vector<Violation> out;
  const EventTree& tree = market.tree;
  const int n = tree.node_count();
  if (static_cast<int>(s.phi0.size()) != n || static_cast<int>(s.phi1.size()) != n ||
      static_cast<int>(s.buy1.size()) != n || static_cast<int>(s.sell1.size()) != n ||
      static_cast<int>(s.delta0.size()) != n) {
    out.push_back({std::nullopt, "strategy", "field size != node count"});
    return out;
  }
  for (int id = 0; id < n; ++id) {
    double p0 = 0.0, p1 = 0.0;
    if (tree.node(id).parent) {
      p0 = s.phi0[*tree.node(id).parent];
      p1 = s.phi1[*tree.node(id).parent];
    }
    if (s.buy1[id] < -tol)
      out.push_back({id, "buy1", "negative buy " + num(s.buy1[id])});
    if (s.sell1[id] < -tol)
      out.push_back({id, "sell1", "negative sell " + num(s.sell1[id])});
    if (std::abs(s.phi1[id] - (p1 + s.buy1[id] - s.sell1[id])) > tol)
      out.push_back({id, "phi1", "holdings inconsistent with trades"});
    if (std::abs(s.phi0[id] - (p0 + s.delta0[id])) > tol)
      out.push_back({id, "phi0", "holdings inconsistent with bond changes"});
    double budget = market.bid(id) * s.sell1[id] - market.ask(id) * s.buy1[id];
    if (s.delta0[id] > budget + tol)
      out.push_back({id, "delta0",
                     "bond change " + num(s.delta0[id]) + " exceeds trade proceeds " +
                         num(budget)});
  }
  return out;
}

std::vector<double> liquidation_value(const TradingStrategy& s,
                                      const FiniteMarket& market) {
  const int n = market.tree.node_count();
  if (static_cast<int>(s.phi0.size()) != n || static_cast<int>(s.phi1.size()) != n)
    throw std::invalid_argument("liquidation_value: strategy/market shape mismatch");
  std::vector<double> v(n);
  for (int id = 0; id < n; ++id) {
    double pos = std::max(s.phi1[id], 0.0);
    double neg = std::max(-s.phi1[id], 0.0);
    v[id] = s.phi0[id] + pos * market.bid(id) - neg * market.ask(id);
  }
  return v;
}

bool is_admissible(const TradingStrategy& s, const FiniteMarket& market,
                   double bound) {
  if (bound == std::numeric_limits<double>::infinity()) return true;
  if (bound < 0.0) throw std::invalid_argument("is_admissible: bound must be >= 0");
  for (double v : liquidation_value(s, market))
    if (v < -bound) return false;
  return true;
}

double conditional_expectation(const std::vector<double>& process,
                               const PricingMeasure& measure,
                               const EventTree& tree, int node) {
  if (static_cast<int>(process.size()) != tree.node_count())
    throw std::invalid_argument("conditional_expectation: process size != node count");
  if (tree.is_leaf(node)) return process[node];
  double mass = measure.node_mass(node);
  if (mass <= 0.0)
    throw DegenerateConditioningError(
        "conditional_expectation: zero mass at node " + std::to_string(node));
  double e = 0.0;
  for (int c : tree.children(node))
    e += measure.node_mass(c) / mass * process[c];
  return e;
}

}  // namespace asymparb
