#include "asymparb/market_io.hpp"

#include <cstdio>
#include <fstream>

namespace asymparb::io {

namespace {

nlohmann::json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  return j;
}

int leaf_ordinal_for_key(const EventTree& tree, const std::string& key,
                         const char* what) {
  int id;
  try {
    id = std::stoi(key);
  } catch (...) {
    throw ParseError(std::string(what) + ": bad leaf id '" + key + "'");
  }
  if (id < 0 || id >= tree.node_count() || tree.leaf_ordinal(id) < 0)
    throw ParseError(std::string(what) + ": id " + key + " is not a leaf");
  return tree.leaf_ordinal(id);
}

}  // namespace

FiniteMarket market_from_json(const nlohmann::json& j) {
  try {
    int horizon = j.at("horizon").get<int>();
    std::vector<TreeNode> nodes;
    for (const auto& jn : j.at("nodes")) {
      TreeNode n;
      n.id = jn.at("id").get<int>();
      if (!jn.at("parent").is_null()) n.parent = jn.at("parent").get<int>();
      n.time = jn.at("time").get<int>();
      nodes.push_back(n);
    }
    EventTree tree(horizon, std::move(nodes));

    std::vector<double> price(tree.node_count(), 0.0);
    for (const auto& jn : j.at("nodes"))
      price[jn.at("id").get<int>()] = jn.at("price").get<double>();
    std::vector<double> probs(tree.leaf_count(), 0.0);
    for (const auto& [key, value] : j.at("leaf_probs").items())
      probs[leaf_ordinal_for_key(tree, key, "leaf_probs")] = value.get<double>();

    FiniteMarket market{std::move(tree), std::move(probs), std::move(price),
                        j.at("lambda").get<double>()};
    return market;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("market json: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("market json: ") + e.what());
  }
}

nlohmann::json market_to_json(const FiniteMarket& market) {
  nlohmann::json j;
  j["horizon"] = market.tree.horizon();
  j["lambda"] = market.lambda;
  nlohmann::json nodes = nlohmann::json::array();
  for (int id = 0; id < market.tree.node_count(); ++id) {
    const TreeNode& n = market.tree.node(id);
    nlohmann::json jn;
    jn["id"] = n.id;
    if (n.parent)
      jn["parent"] = *n.parent;
    else
      jn["parent"] = nullptr;
    jn["time"] = n.time;
    jn["price"] = market.price[id];
    nodes.push_back(jn);
  }
  j["nodes"] = std::move(nodes);
  nlohmann::json probs = nlohmann::json::object();
  for (int l = 0; l < market.tree.leaf_count(); ++l)
    probs[std::to_string(market.tree.leaf_node(l))] = market.leaf_prob[l];
  j["leaf_probs"] = std::move(probs);
  return j;
}

FiniteMarket load_market(const std::filesystem::path& path) {
  return market_from_json(load_json(path));
}

std::vector<double> claim_from_json(const nlohmann::json& j, const EventTree& tree) {
  if (!j.is_object()) throw ParseError("claim json: expected an object");
  std::vector<double> claim(tree.leaf_count(), 0.0);
  std::vector<char> seen(tree.leaf_count(), 0);
  for (const auto& [key, value] : j.items()) {
    int ord = leaf_ordinal_for_key(tree, key, "claim");
    claim[ord] = value.get<double>();
    seen[ord] = 1;
  }
  for (int l = 0; l < tree.leaf_count(); ++l)
    if (!seen[l])
      throw ParseError("claim: missing payoff for leaf id " +
                       std::to_string(tree.leaf_node(l)));
  return claim;
}

std::vector<double> load_claim(const std::filesystem::path& path,
                               const EventTree& tree) {
  return claim_from_json(load_json(path), tree);
}

hs::FiniteMeasureFamily family_from_json(const nlohmann::json& j) {
  try {
    hs::FiniteMeasureFamily family;
    family.base = j.at("p").get<std::vector<double>>();
    family.generators = j.at("generators").get<std::vector<std::vector<double>>>();
    return family;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("family json: ") + e.what());
  }
}

hs::FiniteMeasureFamily load_family(const std::filesystem::path& path) {
  return family_from_json(load_json(path));
}

seq::MarketSequence load_sequence(const std::filesystem::path& path) {
  nlohmann::json j = load_json(path);
  if (!j.is_array()) throw ParseError("sequence json: expected an array");
  seq::MarketSequence sequence;
  const auto base_dir = path.parent_path();
  try {
    for (const auto& je : j) {
      seq::SequenceEntry entry{
          load_market(base_dir / je.at("market").get<std::string>()),
          je.at("lambda").get<double>(),
          je.contains("label") ? je.at("label").get<std::string>() : ""};
      sequence.entries.push_back(std::move(entry));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("sequence json: ") + e.what());
  }
  return sequence;
}

std::string fmt_g9(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

}  // namespace asymparb::io
