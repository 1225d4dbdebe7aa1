#include <gtest/gtest.h>

#include <random>

#include "rigicert/io.hpp"
#include "rigicert/suite.hpp"

using namespace rigicert;

namespace {

const char* kFourNode = R"({
  "version": 1,
  "graph": {"n": 4, "edges": [[0, 1, "bar"], [0, 2, "bar"], [1, 2, "bar"], [1, 3, "bar"]]},
  "framework": {"d": 2, "positions": [[-1, 0], [0, 0], [1, 0], [0, 1]], "generic": false},
  "stress": {"kind": "equilibrium", "order": 4, "entries": [1, -2, 4, 1, -2, 1, 0, 0, 0, 0]}
})";

std::string where_of(const std::string& text) {
  try {
    parse_fixture(text);
  } catch (const InputError& e) {
    return e.where();
  }
  return "<accepted>";
}

std::string replace(std::string s, const std::string& from, const std::string& to) {
  const auto at = s.find(from);
  EXPECT_NE(at, std::string::npos) << from;
  return s.replace(at, from.size(), to);
}

}  // namespace

TEST(ParseFixture, FourNodeFile) {
  const auto fx = parse_fixture(kFourNode);
  EXPECT_EQ(fx.framework.node_count(), 4u);
  EXPECT_EQ(fx.framework.dimension(), 2u);
  EXPECT_EQ(fx.stress_kind, StressKind::Equilibrium);
  ASSERT_TRUE(fx.stress.has_value());
  EXPECT_EQ(*fx.stress, *four_node_fixture().stress);
  EXPECT_EQ(fx.framework.graph(), four_node_fixture().framework.graph());
}

TEST(ParseFixture, ErrorLocations) {
  const std::string base = kFourNode;
  EXPECT_EQ(where_of(replace(base, ", [0, 1]]", "]")), "framework.positions");
  EXPECT_EQ(where_of(replace(base, "[0, 1]]", "[0]]")), "framework.positions[3]");
  EXPECT_EQ(where_of(replace(base, "\"version\": 1", "\"version\": 2")), "version");
  EXPECT_EQ(where_of(replace(base, "[1, 3, \"bar\"]", "[1, 3, \"rope\"]")), "graph.edges[3][2]");
  EXPECT_EQ(where_of(replace(base, "[1, 3, \"bar\"]", "[1, 1, \"bar\"]")), "graph.edges");
  EXPECT_EQ(where_of(replace(base, "\"generic\": false", "\"generic\": 0")), "framework.generic");
  EXPECT_EQ(where_of(replace(base, "\"generic\": false", "\"generic\": false, \"colour\": 1")), "framework.colour");
  EXPECT_EQ(where_of(replace(base, "\"order\": 4", "\"order\": 3")), "stress.order");
  EXPECT_EQ(where_of(replace(base, "0, 0, 0, 0]", "0, 0, 0]")), "stress.entries");
  EXPECT_EQ(where_of(replace(base, "[-1, 0]", "[-1, \"x\"]")), "framework.positions[0][1]");
  EXPECT_EQ(where_of("{"), "");
  EXPECT_EQ(where_of("{\"version\": 1}"), "graph");
}

TEST(SerializeFixture, CanonicalRoundTripOnGallery) {
  for (const auto& fx : all_fixtures()) {
    const std::string once = serialize_fixture(fx);
    const auto back = parse_fixture(once);
    EXPECT_EQ(serialize_fixture(back), once) << fx.name;
    EXPECT_EQ(back.name, fx.name);
    EXPECT_EQ(back.expected, fx.expected) << fx.name;
    EXPECT_EQ(back.framework.positions(), fx.framework.positions()) << fx.name;
    EXPECT_EQ(back.framework.graph(), fx.framework.graph()) << fx.name;
    EXPECT_EQ(back.stress.has_value(), fx.stress.has_value());
    if (fx.stress) EXPECT_EQ(*back.stress, *fx.stress) << fx.name;
  }
}

TEST(SerializeFixture, RandomDoublesSurvive) {
  std::mt19937_64 rng(71);
  for (int k = 0; k < 30; ++k) {
    const auto f = random_framework(rng, 2 + k % 6, 1 + k % 4);
    Fixture fx{"random", f, std::nullopt, StressKind::Spherical, {}};
    const auto back = parse_fixture(serialize_fixture(fx));
    EXPECT_EQ(back.framework.positions(), f.positions());
  }
}

TEST(SerializeFixture, CanonicalLayout) {
  const std::string s = serialize_fixture(four_node_fixture());
  EXPECT_EQ(s.rfind("{\n  \"expected\": {", 0), 0u);
  EXPECT_NE(s.find("      [-1, 0],\n"), std::string::npos);
  EXPECT_NE(s.find("\"entries\": [1, -2, 4, 1, -2, 1, 0, 0, 0, 0]"), std::string::npos);
  EXPECT_EQ(s.back(), '\n');
}

TEST(Digest, Fnv1a) {
  EXPECT_EQ(fnv1a(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a("a"), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(hex_digest("a"), "af63dc4c8601ec8c");
}
