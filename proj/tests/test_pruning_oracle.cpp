#include <gtest/gtest.h>

#include "egg/pruning.hpp"
#include "fixtures.hpp"
#include "oracle.hpp"

namespace egg {
namespace {

namespace o = oracle;

const PruneConfig kLiteral{LocationEventRule::kLiteral, TimeHierarchyRule::kLiteral};

// Each manipulation function against the brute-force comprehension, 200 graphs of at
// most 30 spatial and 15 event nodes. Inputs are themselves random subgraphs so the
// functions are exercised on partial edge sets too.
TEST(PruningOracle, TwoHundredRandomGraphs) {
  std::mt19937_64 rng(1234);
  for (int seed = 0; seed < 200; ++seed) {
    const auto g = test::random_graph(rng);
    const auto full = Subgraph::full(g);
    const auto base = rng() % 2 == 0
                          ? full
                          : prune_location(full, test::random_subset(rng, g.room_ids(), 0.6), PruneConfig{});
    const auto in = o::of(base);

    const auto t = test::random_interval(rng, 1000);
    auto rooms = base.spatial_ids();
    IdSet l;
    for (const auto& id : test::random_subset(rng, rooms, 0.5))
      if (g.find_spatial(id)->layer == Layer::kRoom) l.insert(id);
    IdSet s;
    for (const auto& id : test::random_subset(rng, base.spatial_ids(), 0.3))
      if (g.find_spatial(id)->layer == Layer::kObject) s.insert(id);
    const auto e = test::random_subset(rng, base.event_ids(), 0.3);

    SCOPED_TRACE("graph " + std::to_string(seed));
    EXPECT_EQ(o::of(prune_time(base, t, kLiteral)), o::time(g, in, t, false));
    EXPECT_EQ(o::of(prune_time(base, t, PruneConfig{}, l)), o::time(g, in, t, true, o::names(l)));
    EXPECT_EQ(o::of(prune_location(base, l, kLiteral)), o::location(g, in, o::names(l), true));
    EXPECT_EQ(o::of(prune_location(base, l, PruneConfig{})), o::location(g, in, o::names(l), false));
    EXPECT_EQ(o::of(prune_spatial(base, s)), o::spatial(g, in, o::names(s)));
    EXPECT_EQ(o::of(prune_event(base, e)), o::event(g, in, o::names(e)));
    EXPECT_EQ(o::of(expand_history(g, base, s)), o::history(g, o::names(s)));
    if (!s.empty() && !e.empty()) {
      const auto m = merge_relevance(base, s, e);
      const auto [s_star, e_star] = o::merge(in, o::names(s), o::names(e));
      EXPECT_EQ(o::names(m.spatial), s_star);
      EXPECT_EQ(o::names(m.events), e_star);
    }
  }
}

TEST(PruningOracle, PipelineComposition) {
  std::mt19937_64 rng(99);
  for (int seed = 0; seed < 200; ++seed) {
    const auto g = test::random_graph(rng);
    RelevantInfo iq;
    if (rng() % 3) iq.time = test::random_interval(rng, 1000);
    iq.locations = test::random_subset(rng, g.room_ids(), 0.4);
    iq.spatial = test::random_subset(rng, g.object_ids(), 0.2);
    iq.events = test::random_subset(rng, g.event_ids(), 0.2);
    for (const auto& cfg : {kLiteral, PruneConfig{},
                            PruneConfig{LocationEventRule::kDescendantClosure, TimeHierarchyRule::kLiteral}}) {
      const auto got = o::of(prune_pipeline(g, iq, cfg));
      const auto want = o::pipeline(g, iq, cfg);
      EXPECT_EQ(got, want) << "graph " << seed << "\n got " << o::describe(got) << "\nwant " << o::describe(want);
    }
  }
}

TEST(PruningOracle, Fix1Examples) {
  const auto& g = test::fix1();
  const auto in = o::whole(g);
  EXPECT_EQ(o::time(g, in, {{0}, {250}}, false).events, (std::set<std::string>{"event_1"}));
  EXPECT_EQ(o::of(prune_time(Subgraph::full(g), {{0}, {250}}, kLiteral)), o::time(g, in, {{0}, {250}}, false));
  const RelevantInfo iq{TimeInterval{{0}, {1000}}, test::ids({"room_1"}), test::ids({"object_1", "object_2"}),
                        test::ids({"event_1"})};
  const auto want = o::pipeline(g, iq, PruneConfig{});
  EXPECT_EQ(want.spatial, (std::set<std::string>{"object_1", "object_4", "room_1", "room_2"}));
  EXPECT_EQ(want.events, (std::set<std::string>{"event_1", "event_2"}));
  EXPECT_EQ(o::of(prune_pipeline(g, iq, PruneConfig{})), want);
}

}  // namespace
}  // namespace egg
