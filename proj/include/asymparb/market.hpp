#pragma once

#include <limits>
#include <stdexcept>
#include <vector>

#include "asymparb/event_tree.hpp"

namespace asymparb {

/// Leaf weights below this are treated as zero when deciding whether a
/// measure is equivalent to the objective one.
inline constexpr double kEquivalenceTol = 1e-9;
inline constexpr double kContainmentTol = 1e-10;
inline constexpr double kMartingaleTol = 1e-9;

/// Two-asset market on a finite event tree: bond normalized to 1, one risky
/// asset with a strictly positive adapted price, proportional cost lambda.
struct FiniteMarket {
  EventTree tree;
  std::vector<double> leaf_prob;  // by leaf ordinal, strictly positive, sums to 1
  std::vector<double> price;     // by node id, strictly positive
  double lambda = 0.0;           // in [0, 1)

  double bid(int node) const { return (1.0 - lambda) * price[node]; }
  double ask(int node) const { return price[node]; }
};

/// Diagnostic check of all market invariants; empty result means valid.
std::vector<Violation> validate_market(const FiniteMarket& market);

/// Throws std::invalid_argument listing the violations, if any.
void require_valid(const FiniteMarket& market);

/// Probability measure on the leaves with its per-node cumulative masses.
class PricingMeasure {
 public:
  PricingMeasure(const EventTree& tree, std::vector<double> leaf_weight);

  const std::vector<double>& leaf_weight() const { return leaf_weight_; }
  double leaf_weight(int ordinal) const { return leaf_weight_[ordinal]; }
  const std::vector<double>& node_mass() const { return node_mass_; }
  double node_mass(int node) const { return node_mass_[node]; }
  bool is_equivalent(double tol = kEquivalenceTol) const;

 private:
  std::vector<double> leaf_weight_;  // by leaf ordinal
  std::vector<double> node_mass_;    // by node id
};

/// Pricing measure plus a shadow price living in the bid-ask spread and
/// forming a martingale under the measure.
struct ConsistentPriceSystem {
  PricingMeasure measure;
  std::vector<double> shadow;  // by node id
};

/// Re-verifies every consistent-price-system invariant against the market at
/// the given cost level. `require_equivalent` is dropped for boundary
/// witnesses coming out of the superreplication dual.
std::vector<Violation> check_cps(const ConsistentPriceSystem& cps,
                                 const FiniteMarket& market, double lambda,
                                 bool require_equivalent = true);

/// Adapted finite-variation holdings with their trade decomposition. The
/// pre-time-0 state is fixed at (0, 0); the root's increments encode a
/// time-0 trade.
struct TradingStrategy {
  std::vector<double> phi0;    // bond units, by node id
  std::vector<double> phi1;    // stock units
  std::vector<double> buy1;    // stock bought at the node, >= 0
  std::vector<double> sell1;   // stock sold at the node, >= 0
  std::vector<double> delta0;  // signed bond change at the node

  static TradingStrategy zero(const EventTree& tree);
  /// Rebuilds holdings from per-node increments by prefix sums along the tree.
  static TradingStrategy from_trades(const EventTree& tree,
                                     std::vector<double> buy1,
                                     std::vector<double> sell1,
                                     std::vector<double> delta0);
};

/// Self-financing and bookkeeping checks (holdings consistent with trades,
/// delta0 <= (1-lambda)*S*sell - S*buy up to tol).
std::vector<Violation> check_self_financing(const TradingStrategy& s,
                                            const FiniteMarket& market,
                                            double tol = 1e-9);

/// V(node) = phi0 + (phi1)^+ (1-lambda) S - (phi1)^- S. Throws on a
/// tree-shape mismatch between strategy and market.
std::vector<double> liquidation_value(const TradingStrategy& s,
                                      const FiniteMarket& market);

/// True iff the liquidation value stays above -bound at every node.
/// bound = +infinity is an accepted sentinel.
bool is_admissible(const TradingStrategy& s, const FiniteMarket& market,
                   double bound);

class DegenerateConditioningError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One-step conditional expectation of a per-node process under the measure:
/// sum over children of (mass(child)/mass(node)) * process(child). A leaf is
/// its own conditioning event, so the process value is returned there.
/// Throws DegenerateConditioningError when node_mass(node) == 0.
double conditional_expectation(const std::vector<double>& process,
                               const PricingMeasure& measure,
                               const EventTree& tree, int node);

}  // namespace asymparb
