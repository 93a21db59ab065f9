#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "asymparb/market.hpp"
#include "asymparb/simplex.hpp"

namespace asymparb {

class LpFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class HypothesisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Variable layout of the linearized price-system polytope: leaf weights q
/// (one per leaf ordinal) followed by node masses m = Z * shadow (one per
/// node id). The martingale condition and the bid-ask containment are linear
/// in (q, m) because Z(node) is itself a sum of leaf weights.
struct CpsPolytope {
  lp::LinearProgram lp;
  int num_leaves = 0;
  int q_index(int leaf_ordinal) const { return leaf_ordinal; }
  int m_index(int node_id) const { return num_leaves + node_id; }
};

/// Builds the polytope {q >= leaf_floor, sum q = 1, m(node) = sum m(children),
/// (1-lambda) S Z <= m <= S Z}. leaf_floor = 0 gives the closed polytope used
/// by superreplication duality; leaf_floor = kEquivalenceTol carves out the
/// equivalent measures.
CpsPolytope build_cps_polytope(const FiniteMarket& market, double lambda,
                               double leaf_floor);

/// Recovers a price system from a feasible (q, m) point of the polytope.
/// Shadows at zero-mass nodes default to the quoted price.
ConsistentPriceSystem cps_from_point(const FiniteMarket& market, double lambda,
                                     const std::vector<double>& x,
                                     const CpsPolytope& poly);

/// Existence and construction of a consistent price system. Maximizes the
/// minimum leaf weight; a system exists (with an equivalent measure) iff the
/// optimum exceeds the strict-positivity tolerance.
std::optional<ConsistentPriceSystem> find_cps(const FiniteMarket& market,
                                              double lambda);

/// Maximizes an arbitrary linear functional of the leaf weights over the
/// equivalent part of the polytope; used to produce distinct systems for the
/// convex-combination harness.
std::optional<ConsistentPriceSystem> find_cps_maximizing(
    const FiniteMarket& market, double lambda,
    const std::vector<double>& leaf_objective);

/// Zero-endowment self-financing strategy with nonnegative terminal
/// liquidation value and expected terminal value >= 1 under the objective
/// probabilities (the scale normalization), or nullopt when none exists.
std::optional<TradingStrategy> find_arbitrage(const FiniteMarket& market,
                                              double lambda);

struct SuperrepResult {
  /// false when the polytope is empty; dual and primal are then -infinity
  /// (the claim is superreplicable from arbitrarily negative capital).
  bool solvable = false;
  double dual_value = 0.0;    // sup of E_Q[claim] over the closed polytope
  double primal_value = 0.0;  // least initial bond endowment that superreplicates
  /// Zero-endowment trade schedule; together with initial capital
  /// primal_value its liquidation value dominates the claim at every leaf.
  TradingStrategy witness_strategy;
  /// Dual optimizer; its measure may touch the q >= 0 boundary.
  std::optional<ConsistentPriceSystem> witness_cps;
};

/// Primal/dual superreplication price of a per-leaf claim.
SuperrepResult superreplicate(const FiniteMarket& market, double lambda,
                              const std::vector<double>& claim);

/// Zero-endowment strategy whose liquidation value equals the claim at every
/// leaf (surplus bond disposed), available iff the superreplication dual
/// value is <= 1e-9.
std::optional<TradingStrategy> attain_claim(const FiniteMarket& market,
                                            double lambda,
                                            const std::vector<double>& claim);

struct ScanFlag {
  int strategy_index = 0;
  int node = 0;
  double value = 0.0;   // interior liquidation value found below the floor
  double floor = 0.0;   // -M, with M = -min of terminal liquidation values
};

/// Checks, for each strategy, that interior liquidation values never drop
/// below the terminal floor -M. Requires a consistent price system at every
/// cost level in lambda_grid; otherwise throws HypothesisError.
std::vector<ScanFlag> schach_scan(const FiniteMarket& market,
                                  const std::vector<double>& lambda_grid,
                                  const std::vector<TradingStrategy>& strategies);

}  // namespace asymparb
