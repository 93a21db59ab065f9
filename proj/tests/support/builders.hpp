#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "asymparb/market.hpp"

namespace asymparb::testing {

/// One-period binomial market: root price s0, up/down leaf prices, up
/// probability pu.
inline FiniteMarket make_binomial(double s0, double su, double sd, double pu,
                                  double lambda) {
  std::vector<TreeNode> nodes(3);
  nodes[0] = {0, std::nullopt, 0, {}};
  nodes[1] = {1, 0, 1, {}};
  nodes[2] = {2, 0, 1, {}};
  EventTree tree(1, std::move(nodes));
  return FiniteMarket{std::move(tree), {pu, 1.0 - pu}, {s0, su, sd}, lambda};
}

/// Buy `units` of stock at time 0 and hold; phi0 = -units * s0.
inline TradingStrategy buy_and_hold(const FiniteMarket& market, double units) {
  const int n = market.tree.node_count();
  std::vector<double> buy(n, 0.0), sell(n, 0.0), d0(n, 0.0);
  int root = market.tree.root();
  buy[root] = units;
  d0[root] = -units * market.price[root];
  return TradingStrategy::from_trades(market.tree, std::move(buy), std::move(sell),
                                      std::move(d0));
}

/// Recombining-free two-period tree with per-node prices listed in id order:
/// ids 0 (root), 1..b1 (time 1), then time-2 children appended per parent.
inline FiniteMarket make_two_period(const std::vector<double>& prices,
                                    const std::vector<int>& children_per_t1,
                                    const std::vector<double>& leaf_probs,
                                    double lambda) {
  std::vector<TreeNode> nodes;
  nodes.push_back({0, std::nullopt, 0, {}});
  int b1 = static_cast<int>(children_per_t1.size());
  for (int i = 0; i < b1; ++i) nodes.push_back({1 + i, 0, 1, {}});
  int next = 1 + b1;
  for (int i = 0; i < b1; ++i)
    for (int c = 0; c < children_per_t1[i]; ++c) nodes.push_back({next++, 1 + i, 2, {}});
  EventTree tree(2, std::move(nodes));
  return FiniteMarket{std::move(tree), leaf_probs, prices, lambda};
}

/// Deterministic random market source for the property suites: depth <= 3,
/// branching <= 3, prices in [0.5, 2], probabilities bounded away from 0.
class RandomMarketGen {
 public:
  explicit RandomMarketGen(std::uint64_t seed) : rng_(seed) {}

  FiniteMarket next(double lambda) {
    std::uniform_int_distribution<int> depth_dist(1, 3);
    std::uniform_int_distribution<int> branch_dist(1, 3);
    std::uniform_real_distribution<double> price_dist(0.5, 2.0);
    std::uniform_real_distribution<double> prob_dist(0.2, 1.0);

    const int depth = depth_dist(rng_);
    std::vector<TreeNode> nodes;
    nodes.push_back({0, std::nullopt, 0, {}});
    std::vector<int> frontier{0};
    int next_id = 1;
    for (int t = 1; t <= depth; ++t) {
      std::vector<int> next_frontier;
      for (int parent : frontier) {
        int kids = branch_dist(rng_);
        for (int c = 0; c < kids; ++c) {
          nodes.push_back({next_id, parent, t, {}});
          next_frontier.push_back(next_id);
          ++next_id;
        }
      }
      frontier = std::move(next_frontier);
    }
    EventTree tree(depth, std::move(nodes));

    std::vector<double> price(tree.node_count());
    for (double& p : price) p = price_dist(rng_);
    std::vector<double> probs(tree.leaf_count());
    double sum = 0.0;
    for (double& p : probs) {
      p = prob_dist(rng_);
      sum += p;
    }
    for (double& p : probs) p /= sum;
    return FiniteMarket{std::move(tree), std::move(probs), std::move(price), lambda};
  }

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }

  std::mt19937_64& rng() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace asymparb::testing
