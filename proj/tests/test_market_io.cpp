#include "asymparb/market_io.hpp"

#include <gtest/gtest.h>

#include "support/builders.hpp"

namespace asymparb::io {
namespace {

TEST(MarketJson, RoundTrip) {
  FiniteMarket m = testing::make_two_period({1.0, 1.2, 0.9, 1.4, 1.0, 0.8},
                                            {2, 1}, {0.3, 0.3, 0.4}, 0.15);
  FiniteMarket back = market_from_json(market_to_json(m));
  EXPECT_TRUE(validate_market(back).empty());
  EXPECT_EQ(back.tree.node_count(), m.tree.node_count());
  EXPECT_DOUBLE_EQ(back.lambda, 0.15);
  for (int id = 0; id < m.tree.node_count(); ++id)
    EXPECT_DOUBLE_EQ(back.price[id], m.price[id]);
  for (int l = 0; l < m.tree.leaf_count(); ++l)
    EXPECT_DOUBLE_EQ(back.leaf_prob[l], m.leaf_prob[l]);
}

TEST(MarketJson, ParsesTheDocumentedSchema) {
  auto j = nlohmann::json::parse(R"({
    "horizon": 1,
    "nodes": [
      {"id": 0, "parent": null, "time": 0, "price": 1.0},
      {"id": 1, "parent": 0, "time": 1, "price": 2.0},
      {"id": 2, "parent": 0, "time": 1, "price": 0.5}
    ],
    "leaf_probs": {"1": 0.5, "2": 0.5},
    "lambda": 0.0
  })");
  FiniteMarket m = market_from_json(j);
  EXPECT_TRUE(validate_market(m).empty());
  EXPECT_EQ(m.tree.leaf_count(), 2);
  EXPECT_DOUBLE_EQ(m.price[1], 2.0);
}

TEST(MarketJson, MissingFieldIsParseError) {
  auto j = nlohmann::json::parse(R"({"horizon": 1, "nodes": []})");
  EXPECT_THROW(market_from_json(j), ParseError);
}

TEST(MarketJson, NonLeafProbabilityKeyIsParseError) {
  auto j = nlohmann::json::parse(R"({
    "horizon": 1,
    "nodes": [
      {"id": 0, "parent": null, "time": 0, "price": 1.0},
      {"id": 1, "parent": 0, "time": 1, "price": 2.0},
      {"id": 2, "parent": 0, "time": 1, "price": 0.5}
    ],
    "leaf_probs": {"0": 0.5, "2": 0.5},
    "lambda": 0.0
  })");
  EXPECT_THROW(market_from_json(j), ParseError);
}

TEST(ClaimJson, MapsLeafIdsToOrdinals) {
  FiniteMarket m = testing::make_binomial(1.0, 2.0, 0.5, 0.5, 0.0);
  auto claim = claim_from_json(nlohmann::json::parse(R"({"1": 1.0, "2": 0.0})"),
                               m.tree);
  EXPECT_DOUBLE_EQ(claim[0], 1.0);
  EXPECT_DOUBLE_EQ(claim[1], 0.0);
  EXPECT_THROW(claim_from_json(nlohmann::json::parse(R"({"1": 1.0})"), m.tree),
               ParseError);
}

TEST(FamilyJson, ParsesAndValidates) {
  auto fam = family_from_json(nlohmann::json::parse(
      R"({"p": [0.25, 0.25, 0.25, 0.25],
          "generators": [[0.4, 0.2, 0.2, 0.2], [0.2, 0.4, 0.2, 0.2]]})"));
  EXPECT_EQ(fam.outcomes(), 4);
  EXPECT_EQ(fam.generators.size(), 2u);
  hs::require_valid(fam);
}

TEST(Format, NineSignificantDigits) {
  EXPECT_EQ(fmt_g9(0.274584240704232), "0.274584241");
  EXPECT_EQ(fmt_g9(1.0), "1");
  EXPECT_EQ(fmt_g9(-5.65685424949238), "-5.65685425");
  EXPECT_EQ(fmt_g9(3.16604139e-15), "3.16604139e-15");
}

}  // namespace
}  // namespace asymparb::io
