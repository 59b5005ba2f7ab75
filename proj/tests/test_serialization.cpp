#include <gtest/gtest.h>

#include "egg/error.hpp"
#include "egg/serialization.hpp"
#include "fixtures.hpp"

namespace egg {
namespace {

using test::fix1;

ErrorCode parse_error(std::string_view text) {
  try {
    parse_graph(text);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "parse succeeded";
  return ErrorCode::kIo;
}

std::string replace_once(std::string s, const std::string& from, const std::string& to) {
  const auto pos = s.find(from);
  EXPECT_NE(pos, std::string::npos) << from;
  return s.replace(pos, from.size(), to);
}

TEST(Tokenizer, CountsStructuralCharactersAndRuns) {
  EXPECT_EQ(count_tokens(""), 0u);
  EXPECT_EQ(count_tokens("{\"a\":1}"), 7u);
  EXPECT_EQ(count_tokens("  hello   world \n"), 2u);
  EXPECT_EQ(count_tokens("[1, 2]"), 5u);
  EXPECT_EQ(ApproxTokenizer{}.count("a:b"), 3u);
}

TEST(Serialize, Fix1MatchesShippedFileAndIsStable) {
  const auto shipped = test::read_file(test::data_dir() / "fix1" / "graph.egg.json");
  const auto text = serialize(fix1());
  EXPECT_EQ(text, shipped);
  EXPECT_EQ(serialize(fix1()), text);
  // Frozen regression constant.
  EXPECT_EQ(count_tokens(text), 1415u);
}

TEST(Serialize, TopLevelKeyOrderAndTimestamps) {
  const auto text = serialize(fix1());
  std::size_t last = 0;
  for (const char* key : {"\"rooms\"", "\"objects\"", "\"events\"", "\"spatial_edges\"", "\"event_edges\""}) {
    const auto pos = text.find(key);
    ASSERT_NE(pos, std::string::npos) << key;
    EXPECT_GT(pos, last) << key;
    last = pos;
  }
  EXPECT_NE(text.find("\"start\": 100,\n"), std::string::npos);
  EXPECT_NE(text.find("\"start_iso\": \"1970-01-01T00:00:00.000100Z\""), std::string::npos);
}

TEST(Serialize, RoundTripIsAFixpoint) {
  const auto text = serialize(fix1());
  const auto parsed = parse_graph(text);
  EXPECT_EQ(parsed, fix1());
  EXPECT_EQ(serialize(Subgraph::full(parsed).materialize()), text);
  EXPECT_EQ(serialize(Subgraph::full(parsed)), text);
}

TEST(Serialize, InsertionOrderIndependence) {
  std::mt19937_64 rng(5);
  const auto text = serialize(fix1());
  for (int i = 0; i < 20; ++i) EXPECT_EQ(serialize(test::shuffled_copy(fix1(), rng)), text);
}

TEST(Serialize, RandomGraphsRoundTripAndShuffle) {
  std::mt19937_64 rng(31337);
  for (int i = 0; i < 100; ++i) {
    const auto g = test::random_graph(rng);
    const auto text = serialize(g);
    const auto back = parse_graph(text);
    EXPECT_EQ(back, g);
    EXPECT_EQ(serialize(back), text);
    EXPECT_EQ(serialize(test::shuffled_copy(g, rng)), text);
  }
}

TEST(Serialize, OmitEdgesKeepsEnvelope) {
  SerializeOptions opts;
  opts.omit_edges = true;
  const auto text = serialize(fix1(), opts);
  EXPECT_NE(text.find("\"event_edges\": []"), std::string::npos);
  EXPECT_LT(count_tokens(text), count_tokens(serialize(fix1())));
  EXPECT_EQ(parse_graph(text).event_edges().size(), 0u);
}

TEST(Serialize, RejectsInvalidGraph) {
  auto edges = fix1().event_edges();
  edges[0].interval.end = Timestamp{150};
  std::vector<SpatialNode> spatial;
  for (const auto& [id, n] : fix1().spatial_nodes()) spatial.push_back(n);
  std::vector<EventNode> events;
  for (const auto& [id, e] : fix1().event_nodes()) events.push_back(e);
  const auto bad = EggGraph::from_parts(spatial, events, fix1().spatial_edges(), edges);
  try {
    serialize(bad);
    ADD_FAILURE() << "serialized an invalid graph";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidGraph);
  }
}

TEST(Parse, ErrorClasses) {
  const auto text = serialize(fix1());
  EXPECT_EQ(parse_error(text.substr(0, text.size() / 2)), ErrorCode::kSyntax);
  EXPECT_EQ(parse_error("[]"), ErrorCode::kSchema);
  EXPECT_EQ(parse_error(replace_once(text, "\"summary\"", "\"summary\": \"x\", \"mood\"")), ErrorCode::kSchema);
  EXPECT_EQ(parse_error(replace_once(text, "\"id\": \"room_1\"", "\"id\": \"Room 1\"")), ErrorCode::kSchema);
  EXPECT_EQ(parse_error(replace_once(text, "\"end\": 200,\n        \"end_iso\": \"1970-01-01T00:00:00.000200Z\"\n      },\n      \"description\": \"the red",
                                     "\"end\": 150,\n        \"end_iso\": \"1970-01-01T00:00:00.000150Z\"\n      },\n      \"description\": \"the red")),
            ErrorCode::kIntegrity);
}

TEST(Parse, IsoMustMatchRawTimestamp) {
  const auto text = serialize(fix1());
  EXPECT_EQ(parse_error(replace_once(text, "1970-01-01T00:00:00.000100Z", "1970-01-01T00:00:00.000101Z")),
            ErrorCode::kSchema);
}

TEST(Parse, IsoRenderingsAreRequired) {
  const std::string text = R"({"rooms": [{"id": "room_1", "name": "r", "semantic_class": "room", "position": [0, 0, 0]}],
    "objects": [], "events": [], "spatial_edges": [], "event_edges": []})";
  EXPECT_EQ(parse_graph(text).spatial_nodes().size(), 1u);
  const auto without_iso = replace_once(serialize(fix1()), "\"start\": 100,\n        \"start_iso\": \"1970-01-01T00:00:00.000100Z\",\n", "\"start\": 100,\n");
  EXPECT_EQ(parse_error(without_iso), ErrorCode::kSchema);
}

}  // namespace
}  // namespace egg
