#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "egg/error.hpp"
#include "egg/graph.hpp"
#include "egg/serialization.hpp"
#include "fixtures.hpp"

namespace egg {
namespace {

using test::fix1;

struct Parts {
  std::vector<SpatialNode> spatial;
  std::vector<EventNode> events;
  std::vector<SpatialEdge> sedges;
  std::vector<EventEdge> eedges;

  explicit Parts(const EggGraph& g) : sedges(g.spatial_edges()), eedges(g.event_edges()) {
    for (const auto& [id, n] : g.spatial_nodes()) spatial.push_back(n);
    for (const auto& [id, e] : g.event_nodes()) events.push_back(e);
  }
  EggGraph build() const { return EggGraph::from_parts(spatial, events, sedges, eedges); }
};

std::vector<std::string> rules(const ValidationReport& r) {
  std::vector<std::string> out;
  for (const auto& v : r.violations) out.push_back(v.rule);
  return out;
}

using Rules = std::vector<std::string>;

TEST(Validate, Fix1IsClean) {
  const auto r = validate(fix1());
  EXPECT_TRUE(r.ok());
  EXPECT_TRUE(r.warnings.empty());
  EXPECT_EQ(r.spatial_count, 6u);
  EXPECT_EQ(r.event_count, 3u);
}

TEST(Validate, EventEdgeIntervalMismatch) {
  Parts p(fix1());
  p.eedges[0].interval.end = Timestamp{150};
  const auto r = validate(p.build());
  EXPECT_EQ(rules(r), Rules{std::string(rule::kEventEdgeInterval)});
  EXPECT_EQ(r.violations[0].id, "event_1->object_1");
}

TEST(Validate, OverlappingContainment) {
  Parts p(fix1());
  p.sedges.push_back({NodeId("room_2"), NodeId("object_2"), {{500}, {600}}});
  const auto r = validate(p.build());
  EXPECT_EQ(rules(r), Rules{std::string(rule::kDoubleContainment)});
  EXPECT_EQ(r.violations[0].id, "object_2");
}

TEST(Validate, DanglingEdges) {
  Parts p(fix1());
  p.eedges.push_back({NodeId("event_1"), NodeId("object_9"), {{100}, {200}}, "ghost"});
  EXPECT_EQ(rules(validate(p.build())), Rules{std::string(rule::kDanglingEdge)});

  Parts q(fix1());
  q.sedges.push_back({NodeId("room_7"), NodeId("object_3"), {{2000}, {3000}}});
  EXPECT_EQ(rules(validate(q.build())), Rules{std::string(rule::kDanglingEdge)});
}

TEST(Validate, NodeShapeRules) {
  {
    Parts p(fix1());
    p.spatial[0].caption.reset();  // object_1
    EXPECT_EQ(rules(validate(p.build())), Rules{std::string(rule::kObjectCaption)});
  }
  {
    Parts p(fix1());
    std::swap(p.spatial[0].history[0], p.spatial[0].history[1]);
    EXPECT_EQ(rules(validate(p.build())), Rules{std::string(rule::kHistoryOrder)});
  }
  {
    Parts p(fix1());
    p.events[0].summary.clear();
    EXPECT_EQ(rules(validate(p.build())), Rules{std::string(rule::kEventSummary)});
  }
  {
    Parts p(fix1());
    p.events[0].observation_position.x = std::nan("");
    EXPECT_EQ(rules(validate(p.build())), Rules{std::string(rule::kNonFinite)});
  }
  {
    Parts p(fix1());
    p.events[2].interval = {{700}, {600}};
    p.eedges.back().interval = p.events[2].interval;
    // Reported once for the event and once for its edge.
    EXPECT_EQ(rules(validate(p.build())), (Rules{std::string(rule::kIntervalOrder), std::string(rule::kIntervalOrder)}));
  }
}

TEST(Validate, EdgeLayerAndDuplicates) {
  {
    Parts p(fix1());
    p.eedges.push_back({NodeId("event_3"), NodeId("room_2"), {{500}, {600}}, "room event"});
    EXPECT_EQ(rules(validate(p.build())), Rules{std::string(rule::kEdgeLayer)});
  }
  {
    Parts p(fix1());
    p.sedges.push_back({NodeId("room_1"), NodeId("object_2"), {{10}, {20}}});
    EXPECT_EQ(rules(validate(p.build())), Rules{std::string(rule::kDuplicateEdge)});
  }
  {
    // from_parts only rejects repeats within one node list; cross-list clashes are validate's job.
    Parts p(fix1());
    p.spatial.push_back(p.spatial[0]);
    p.spatial.back().id = NodeId("event_1");
    const auto r = rules(validate(p.build()));
    EXPECT_NE(std::find(r.begin(), r.end(), rule::kDuplicateId), r.end());
    EXPECT_NE(std::find(r.begin(), r.end(), rule::kIdPrefix), r.end());
    p.spatial.back().id = NodeId("object_1");
    EXPECT_THROW(p.build(), Error);
  }
}

TEST(Validate, ShippedDefectFixtures) {
  const std::pair<const char*, std::string_view> cases[] = {
      {"interval_mismatch", rule::kEventEdgeInterval},
      {"dangling_edge", rule::kDanglingEdge},
      {"double_containment", rule::kDoubleContainment},
  };
  for (const auto& [name, expected] : cases) {
    const auto text = test::read_file(test::data_dir() / "defects" / (std::string(name) + ".egg.json"));
    const auto r = validate(parse_graph_unchecked(text));
    EXPECT_EQ(rules(r), Rules{std::string(expected)}) << name;
    try {
      parse_graph(text);
      ADD_FAILURE() << name << " parsed without an integrity error";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kIntegrity) << name;
      EXPECT_NE(std::string(e.what()).find(expected), std::string::npos) << e.what();
    }
  }
}

}  // namespace
}  // namespace egg
