#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "asymparb/halmos_savage.hpp"
#include "asymparb/market.hpp"
#include "asymparb/sequence_lab.hpp"

namespace asymparb::io {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Market file schema: {"horizon": int,
///   "nodes": [{"id": int, "parent": int|null, "time": int, "price": float}],
///   "leaf_probs": {"<leaf id>": float}, "lambda": float}.
FiniteMarket market_from_json(const nlohmann::json& j);
nlohmann::json market_to_json(const FiniteMarket& market);
FiniteMarket load_market(const std::filesystem::path& path);

/// Claim file: map from leaf id to payoff; returns values by leaf ordinal.
std::vector<double> claim_from_json(const nlohmann::json& j, const EventTree& tree);
std::vector<double> load_claim(const std::filesystem::path& path,
                               const EventTree& tree);

/// Family file: {"p": [...], "generators": [[...], ...]}.
hs::FiniteMeasureFamily family_from_json(const nlohmann::json& j);
hs::FiniteMeasureFamily load_family(const std::filesystem::path& path);

/// Sequence file: array of {"market": path, "lambda": float, "label"?: str};
/// market paths resolve relative to the sequence file.
seq::MarketSequence load_sequence(const std::filesystem::path& path);

/// Formats a double with 9 significant digits ('%.9g'), the CSV contract.
std::string fmt_g9(double x);

}  // namespace asymparb::io
