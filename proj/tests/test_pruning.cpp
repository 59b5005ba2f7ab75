#include <gtest/gtest.h>

#include <algorithm>
#include <functional>

#include "egg/error.hpp"
#include "egg/pruning.hpp"
#include "egg/serialization.hpp"
#include "fixtures.hpp"

namespace egg {
namespace {

using test::fix1;
using test::ids;

const PruneConfig kLiteral{LocationEventRule::kLiteral, TimeHierarchyRule::kLiteral};
const PruneConfig kDefault{};

Subgraph whole() { return Subgraph::full(fix1()); }

void expect_nodes(const Subgraph& s, const IdSet& spatial, const IdSet& events) {
  EXPECT_EQ(s.spatial_ids(), spatial);
  EXPECT_EQ(s.event_ids(), events);
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an egg::Error";
  return ErrorCode::kIo;
}

TEST(PruneTime, Examples) {
  expect_nodes(prune_time(whole(), {{0}, {250}}, kLiteral), ids({"object_1", "object_4"}), ids({"event_1"}));
  EXPECT_TRUE(prune_time(whole(), {{0}, {50}}, kLiteral).is_empty());
  expect_nodes(prune_time(whole(), {{0}, {1000}}, kDefault),
               ids({"object_1", "object_3", "object_4", "room_1", "room_2"}),
               ids({"event_1", "event_2", "event_3"}));
}

TEST(PruneTime, PendingLocationsSurviveOnlyWithKeepAncestors) {
  const auto kept = prune_time(whole(), {{0}, {50}}, kDefault, ids({"room_2"}));
  expect_nodes(kept, ids({"room_2"}), {});
  EXPECT_TRUE(prune_time(whole(), {{0}, {50}}, kLiteral, ids({"room_2"})).is_empty());
}

TEST(PruneLocation, Examples) {
  const auto closure = prune_location(whole(), ids({"room_1"}), kDefault);
  expect_nodes(closure, ids({"room_1", "object_1", "object_2", "object_4"}), ids({"event_1", "event_2"}));
  const auto literal = prune_location(whole(), ids({"room_1"}), kLiteral);
  expect_nodes(literal, ids({"room_1", "object_1", "object_2", "object_4"}), {});
  EXPECT_EQ(prune_location(whole(), ids({"room_1", "room_2"}), kDefault), whole());
  EXPECT_EQ(code_of([] { prune_location(whole(), ids({"room_9"}), kDefault); }), ErrorCode::kUnknownLocationId);
}

TEST(PruneSpatial, Examples) {
  expect_nodes(prune_spatial(whole(), ids({"object_1"})), ids({"object_1", "object_4"}), ids({"event_1", "event_2"}));
  EXPECT_TRUE(prune_spatial(whole(), ids({"object_2"})).is_empty());
  EXPECT_TRUE(prune_spatial(whole(), {}).is_empty());
  EXPECT_EQ(code_of([] { prune_spatial(whole(), ids({"object_9"})); }), ErrorCode::kUnknownSpatialId);
}

TEST(PruneEvent, Examples) {
  expect_nodes(prune_event(whole(), ids({"event_3"})), ids({"object_3"}), ids({"event_3"}));
  EXPECT_EQ(prune_event(whole(), ids({"event_1", "event_2"})).spatial_ids(), ids({"object_1", "object_4"}));
  EXPECT_TRUE(prune_event(whole(), {}).is_empty());
  EXPECT_EQ(code_of([] { prune_event(whole(), ids({"event_7"})); }), ErrorCode::kUnknownEventId);
}

TEST(ExpandHistory, Examples) {
  const auto& g = fix1();
  const auto g2 = prune_event(whole(), ids({"event_2"}));
  expect_nodes(expand_history(g, g2, ids({"object_1"})), ids({"object_1", "object_4"}), ids({"event_1", "event_2"}));
  expect_nodes(expand_history(g, g2, ids({"object_2"})), ids({"object_2"}), {});
  EXPECT_TRUE(expand_history(g, g2, {}).is_empty());
  EXPECT_EQ(code_of([&] { expand_history(g, g2, ids({"object_9"})); }), ErrorCode::kUnknownSpatialId);
}

TEST(MergeRelevance, Examples) {
  EXPECT_EQ(merge_relevance(whole(), ids({"object_1", "object_2"}), ids({"event_1"})),
            (MergedRelevance{ids({"object_1"}), ids({"event_1"})}));
  EXPECT_EQ(merge_relevance(whole(), ids({"object_2"}), ids({"event_3"})), MergedRelevance{});
  EXPECT_EQ(merge_relevance(whole(), fix1().object_ids(), fix1().event_ids()),
            (MergedRelevance{ids({"object_1", "object_3", "object_4"}), fix1().event_ids()}));
  EXPECT_EQ(code_of([] { merge_relevance(whole(), {}, ids({"event_1"})); }), ErrorCode::kEmptyInputSet);
  EXPECT_EQ(code_of([] { merge_relevance(whole(), ids({"object_1"}), {}); }), ErrorCode::kEmptyInputSet);
}

TEST(PrunePipeline, Fix1DocumentedQuery) {
  const RelevantInfo iq{TimeInterval{{0}, {1000}}, ids({"room_1"}), ids({"object_1", "object_2"}), ids({"event_1"})};
  const auto literal = prune_pipeline(fix1(), iq, {LocationEventRule::kDescendantClosure, TimeHierarchyRule::kLiteral});
  expect_nodes(literal, ids({"object_1", "object_4"}), ids({"event_1", "event_2"}));
  const auto kept = prune_pipeline(fix1(), iq, kDefault);
  expect_nodes(kept, ids({"object_1", "object_4", "room_1", "room_2"}), ids({"event_1", "event_2"}));
  EXPECT_TRUE(validate(kept.materialize()).ok());
}

TEST(PrunePipeline, CaseSplit) {
  const RelevantInfo events_only{TimeInterval{{0}, {1000}}, {}, {}, ids({"event_3"})};
  expect_nodes(prune_pipeline(fix1(), events_only, {LocationEventRule::kDescendantClosure, TimeHierarchyRule::kLiteral}),
               ids({"object_3"}), ids({"event_3"}));
  expect_nodes(prune_pipeline(fix1(), events_only, kDefault), ids({"object_3", "room_2"}), ids({"event_3"}));
  EXPECT_TRUE(prune_pipeline(fix1(), RelevantInfo{}, kDefault).is_empty());
  EXPECT_TRUE(prune_pipeline(fix1(), RelevantInfo{TimeInterval{{0}, {1000}}, ids({"room_1"}), {}, {}}, kDefault).is_empty());
}

TEST(PrunePipeline, RejectsUnknownIds) {
  EXPECT_EQ(code_of([] { prune_pipeline(fix1(), {std::nullopt, ids({"object_1"}), {}, {}}, kDefault); }),
            ErrorCode::kUnknownLocationId);
  EXPECT_EQ(code_of([] { prune_pipeline(fix1(), {std::nullopt, {}, ids({"object_8"}), {}}, kDefault); }),
            ErrorCode::kUnknownSpatialId);
  EXPECT_EQ(code_of([] { prune_pipeline(fix1(), {std::nullopt, {}, {}, ids({"event_8"})}, kDefault); }),
            ErrorCode::kUnknownEventId);
}

TEST(CompressionRatio, Fix1) {
  const auto& g = fix1();
  EXPECT_DOUBLE_EQ(compression_ratio(g, Subgraph::full(g)), 0.0);
  const double empty = compression_ratio(g, Subgraph::empty(g));
  EXPECT_GT(empty, 0.97);
  EXPECT_LT(empty, 1.0);
  const RelevantInfo iq{TimeInterval{{0}, {1000}}, ids({"room_1"}), ids({"object_1", "object_2"}), ids({"event_1"})};
  // Frozen from the first run of the pipeline example above.
  EXPECT_NEAR(compression_ratio(g, prune_pipeline(g, iq, kDefault)), 0.313780918727915, 1e-12);
}

TEST(PruneConfigText, RoundTrips) {
  EXPECT_EQ(parse_location_rule("literal"), LocationEventRule::kLiteral);
  EXPECT_EQ(parse_location_rule("closure"), LocationEventRule::kDescendantClosure);
  EXPECT_EQ(parse_time_rule("ancestors"), TimeHierarchyRule::kKeepAncestors);
  EXPECT_FALSE(parse_time_rule("overlap").has_value());
  EXPECT_EQ(to_string(TimeHierarchyRule::kLiteral), "literal");
}

// Property tests over random graphs.

class PruningProperties : public ::testing::Test {
 protected:
  std::mt19937_64 rng{20260816};
};

bool subset(const IdSet& a, const IdSet& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

void expect_contracted(const Subgraph& out, const Subgraph& in) {
  EXPECT_TRUE(subset(out.spatial_ids(), in.spatial_ids()));
  EXPECT_TRUE(subset(out.event_ids(), in.event_ids()));
}

TEST_F(PruningProperties, ContractionClosureAndIdempotence) {
  for (int i = 0; i < 100; ++i) {
    const auto g = test::random_graph(rng);
    const auto full = Subgraph::full(g);
    const auto t = test::random_interval(rng, 1000);
    const auto l = test::random_subset(rng, g.room_ids(), 0.5);
    const auto s = test::random_subset(rng, g.object_ids());
    const auto e = test::random_subset(rng, g.event_ids());
    for (const auto& cfg : {kLiteral, kDefault}) {
      const auto ft = prune_time(full, t, cfg);
      const auto fl = prune_location(full, l, cfg);
      const auto fs = prune_spatial(full, s);
      const auto fe = prune_event(full, e);
      const auto fh = expand_history(g, fe, s);
      for (const auto* out : {&ft, &fl, &fs, &fe, &fh}) {
        expect_contracted(*out, full);
        EXPECT_TRUE(validate(out->materialize()).ok());
      }
      EXPECT_EQ(prune_time(ft, t, cfg), ft);
      EXPECT_EQ(prune_location(fl, l, cfg), fl);
      // A queried node without events is dropped, so re-apply with the survivors only.
      IdSet s_kept;
      for (const auto& id : s)
        if (fs.spatial_ids().contains(id)) s_kept.insert(id);
      EXPECT_EQ(prune_spatial(fs, s_kept), fs);
      EXPECT_EQ(prune_event(fe, e), fe);
    }
  }
}

TEST_F(PruningProperties, TimeMonotonicity) {
  for (int i = 0; i < 100; ++i) {
    const auto g = test::random_graph(rng);
    const auto full = Subgraph::full(g);
    const auto inner = test::random_interval(rng, 1000);
    const TimeInterval outer{{std::max<std::int64_t>(0, inner.start.micros - 100)}, {inner.end.micros + 100}};
    for (const auto& cfg : {kLiteral, kDefault}) {
      const auto a = prune_time(full, inner, cfg);
      const auto b = prune_time(full, outer, cfg);
      EXPECT_TRUE(subset(a.spatial_ids(), b.spatial_ids()));
      EXPECT_TRUE(subset(a.event_ids(), b.event_ids()));
    }
  }
}

TEST_F(PruningProperties, MergeOutputsAreLinked) {
  for (int i = 0; i < 100; ++i) {
    const auto g = test::random_graph(rng);
    const auto s = test::random_subset(rng, g.object_ids(), 0.5);
    const auto e = test::random_subset(rng, g.event_ids(), 0.5);
    if (s.empty() || e.empty()) continue;
    const auto m = merge_relevance(Subgraph::full(g), s, e);
    EXPECT_TRUE(subset(m.spatial, s));
    EXPECT_TRUE(subset(m.events, e));
    for (const auto& n : m.spatial) {
      bool linked = false;
      for (const auto& edge : g.event_edges()) linked |= edge.spatial == n && m.events.contains(edge.event);
      EXPECT_TRUE(linked) << n.str();
    }
  }
}

TEST_F(PruningProperties, PipelineContainmentAndCoverage) {
  for (int i = 0; i < 100; ++i) {
    const auto g = test::random_graph(rng);
    const RelevantInfo everything{g.horizon(), g.room_ids(), g.object_ids(), g.event_ids()};
    for (const auto& cfg : {kLiteral, kDefault}) {
      const auto out = prune_pipeline(g, everything, cfg);
      EXPECT_TRUE(validate(out.materialize()).ok());
      for (const auto& id : out.spatial_ids()) EXPECT_NE(g.find_spatial(id), nullptr);
      if (cfg.location_event_rule == LocationEventRule::kLiteral) continue;
      // With the literal location rule no event survives stage 1; otherwise every grounded
      // event whose objects sit in some room does.
      for (const auto& edge : g.event_edges()) {
        bool housed = false;
        for (const auto& se : g.spatial_edges()) housed |= se.child == edge.spatial;
        if (housed) EXPECT_TRUE(out.event_ids().contains(edge.event)) << edge.event.str();
      }
    }
  }
}

TEST_F(PruningProperties, TokenMonotonicity) {
  for (int i = 0; i < 100; ++i) {
    const auto g = test::random_graph(rng);
    const auto full_tokens = count_tokens(serialize(g));
    const auto sub = prune_pipeline(
        g, {test::random_interval(rng, 1000), {}, test::random_subset(rng, g.object_ids()), {}}, kDefault);
    IdSet objects;
    for (const auto& id : test::random_subset(rng, sub.spatial_ids(), 0.5))
      if (g.find_spatial(id)->layer == Layer::kObject) objects.insert(id);
    const auto sub2 = prune_spatial(sub, objects);
    EXPECT_LE(count_tokens(serialize(sub)), full_tokens);
    EXPECT_LE(count_tokens(serialize(sub2)), count_tokens(serialize(sub)));
    EXPECT_GE(compression_ratio(g, sub), 0.0);
  }
}

}  // namespace
}  // namespace egg
