#include "fixtures.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "egg/serialization.hpp"

namespace egg::test {

std::filesystem::path data_dir() { return EGG_TEST_DATA_DIR; }
std::filesystem::path fixtures_dir() { return EGG_TEST_FIXTURES_DIR; }

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const EggGraph& fix1() {
  static const EggGraph g = parse_graph(read_file(data_dir() / "fix1" / "graph.egg.json"));
  return g;
}

IdSet ids(std::initializer_list<const char*> list) {
  IdSet out;
  for (const char* s : list) out.insert(NodeId(s));
  return out;
}

namespace {

std::int64_t uniform(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

bool coin(std::mt19937_64& rng, double p) { return std::bernoulli_distribution(p)(rng); }

NodeId make_id(const char* prefix, std::size_t n) { return NodeId(std::string(prefix) + "_" + std::to_string(n)); }

const char* kClasses[] = {"mug", "kettle", "lamp", "laptop", "book", "chair"};

}  // namespace

TimeInterval random_interval(std::mt19937_64& rng, std::int64_t horizon) {
  auto a = uniform(rng, 0, horizon);
  auto b = uniform(rng, 0, horizon);
  if (a > b) std::swap(a, b);
  return {{a}, {b}};
}

IdSet random_subset(std::mt19937_64& rng, const IdSet& from, double p) {
  IdSet out;
  for (const auto& id : from)
    if (coin(rng, p)) out.insert(id);
  return out;
}

EggGraph random_graph(std::mt19937_64& rng, const RandomGraphSpec& spec) {
  const auto n_rooms = static_cast<std::size_t>(uniform(rng, 1, static_cast<std::int64_t>(spec.max_rooms)));
  const auto n_objects =
      static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(spec.max_spatial - n_rooms)));
  const auto n_events = static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(spec.max_events)));

  std::vector<SpatialNode> spatial;
  std::vector<SpatialEdge> sedges;
  for (std::size_t r = 1; r <= n_rooms; ++r) {
    SpatialNode n;
    n.id = make_id("room", r);
    n.layer = Layer::kRoom;
    n.name = "room " + std::to_string(r);
    n.semantic_class = "room";
    n.static_position = Position3{static_cast<double>(r) * 10.0, 0.0, 0.0};
    spatial.push_back(std::move(n));
  }
  std::vector<NodeId> objects;
  for (std::size_t o = 1; o <= n_objects; ++o) {
    SpatialNode n;
    n.id = make_id("object", o);
    n.layer = Layer::kObject;
    n.semantic_class = kClasses[uniform(rng, 0, std::size(kClasses) - 1)];
    n.name = n.semantic_class + " " + std::to_string(o);
    n.caption = "a " + n.semantic_class;
    std::int64_t t = uniform(rng, 0, 50);
    while (t <= spec.horizon && coin(rng, 0.7)) {
      n.history.push_back({{t}, {static_cast<double>(t), 1.0, 0.5}, std::nullopt});
      t += uniform(rng, 1, spec.horizon / 3);
    }
    // Consecutive placements touch or leave a gap; an object may have none at all.
    if (coin(rng, 0.85)) {
      std::int64_t start = uniform(rng, 0, spec.horizon / 4);
      while (start <= spec.horizon) {
        const std::int64_t end = std::min(spec.horizon, start + uniform(rng, 0, spec.horizon / 2));
        sedges.push_back({make_id("room", uniform(rng, 1, n_rooms)), n.id, {{start}, {end}}});
        if (end == spec.horizon || coin(rng, 0.3)) break;
        start = end + (coin(rng, 0.5) ? 0 : uniform(rng, 1, 50));
        if (start == end && end == spec.horizon) break;
      }
    }
    objects.push_back(n.id);
    spatial.push_back(std::move(n));
  }
  // Two touching placements in the same room would be a duplicate edge; merge them.
  std::sort(sedges.begin(), sedges.end(), [](const SpatialEdge& a, const SpatialEdge& b) {
    return std::tie(a.child, a.interval) < std::tie(b.child, b.interval);
  });
  std::vector<SpatialEdge> merged;
  for (auto& e : sedges) {
    if (!merged.empty() && merged.back().child == e.child && merged.back().parent == e.parent &&
        merged.back().interval.end >= e.interval.start) {
      merged.back().interval.end = std::max(merged.back().interval.end, e.interval.end);
    } else {
      merged.push_back(e);
    }
  }

  std::vector<EventNode> events;
  std::vector<EventEdge> eedges;
  for (std::size_t k = 1; k <= n_events; ++k) {
    EventNode e;
    e.id = make_id("event", k);
    e.interval = random_interval(rng, spec.horizon);
    e.summary = "event " + std::to_string(k);
    e.observation_position = {1.0, 2.0, 1.2};
    for (const auto& o : objects)
      if (coin(rng, 3.0 / static_cast<double>(objects.size() + 1)))
        eedges.push_back({e.id, o, e.interval, "touches " + o.str()});
    events.push_back(std::move(e));
  }
  return EggGraph::from_parts(std::move(spatial), std::move(events), std::move(merged), std::move(eedges));
}

EggGraph shuffled_copy(const EggGraph& g, std::mt19937_64& rng) {
  std::vector<SpatialNode> spatial;
  for (const auto& [id, n] : g.spatial_nodes()) spatial.push_back(n);
  std::vector<EventNode> events;
  for (const auto& [id, e] : g.event_nodes()) events.push_back(e);
  auto sedges = g.spatial_edges();
  auto eedges = g.event_edges();
  std::shuffle(spatial.begin(), spatial.end(), rng);
  std::shuffle(events.begin(), events.end(), rng);
  std::shuffle(sedges.begin(), sedges.end(), rng);
  std::shuffle(eedges.begin(), eedges.end(), rng);
  return EggGraph::from_parts(std::move(spatial), std::move(events), std::move(sedges), std::move(eedges));
}

}  // namespace egg::test
