#include "egg/graph.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "egg/error.hpp"

namespace egg {

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_lower(char c) { return c >= 'a' && c <= 'z'; }

std::string_view strip_leading_zeros(std::string_view digits) {
  const auto pos = digits.find_first_not_of('0');
  return pos == std::string_view::npos ? digits.substr(digits.size() - 1) : digits.substr(pos);
}

std::string_view expected_prefix(Layer layer) { return layer == Layer::kRoom ? "room" : "object"; }

std::string edge_label(const NodeId& a, const NodeId& b) { return a.str() + "->" + b.str(); }

template <class T>
void insert_sorted(std::vector<T>& v, T value) {
  v.insert(std::upper_bound(v.begin(), v.end(), value), std::move(value));
}

}  // namespace

NodeId::NodeId(std::string text) : text_(std::move(text)) {
  if (!is_well_formed(text_)) throw Error(ErrorCode::kInvalidId, "malformed node id '" + text_ + "'");
}

bool NodeId::is_well_formed(std::string_view text) {
  const auto us = text.find('_');
  if (us == std::string_view::npos || us == 0 || us + 1 == text.size()) return false;
  return std::all_of(text.begin(), text.begin() + us, is_lower) &&
         std::all_of(text.begin() + us + 1, text.end(), is_digit);
}

std::string_view NodeId::prefix() const {
  const std::string_view v = text_;
  return v.substr(0, v.find('_'));
}

std::string_view NodeId::suffix() const {
  const std::string_view v = text_;
  const auto us = v.find('_');
  return us == std::string_view::npos ? std::string_view{} : v.substr(us + 1);
}

std::strong_ordering NodeId::operator<=>(const NodeId& other) const {
  if (auto c = prefix().compare(other.prefix()); c != 0) return c <=> 0;
  const auto a = strip_leading_zeros(suffix());
  const auto b = strip_leading_zeros(other.suffix());
  if (a.size() != b.size()) return a.size() <=> b.size();
  if (auto c = a.compare(b); c != 0) return c <=> 0;
  return text_.compare(other.text_) <=> 0;
}

bool Position3::finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }

std::string_view to_string(Layer layer) { return layer == Layer::kRoom ? "room" : "object"; }

EggGraph EggGraph::from_parts(std::vector<SpatialNode> spatial, std::vector<EventNode> events,
                              std::vector<SpatialEdge> spatial_edges, std::vector<EventEdge> event_edges) {
  EggGraph g;
  for (auto& n : spatial) {
    auto id = n.id;
    if (!g.spatial_.emplace(id, std::move(n)).second)
      throw Error(ErrorCode::kDuplicateId, "spatial node '" + id.str() + "' listed twice");
  }
  for (auto& e : events) {
    auto id = e.id;
    if (!g.events_.emplace(id, std::move(e)).second)
      throw Error(ErrorCode::kDuplicateId, "event node '" + id.str() + "' listed twice");
  }
  std::sort(spatial_edges.begin(), spatial_edges.end());
  std::sort(event_edges.begin(), event_edges.end());
  g.spatial_edges_ = std::move(spatial_edges);
  g.event_edges_ = std::move(event_edges);
  return g;
}

const SpatialNode* EggGraph::find_spatial(const NodeId& id) const {
  auto it = spatial_.find(id);
  return it == spatial_.end() ? nullptr : &it->second;
}

const EventNode* EggGraph::find_event(const NodeId& id) const {
  auto it = events_.find(id);
  return it == events_.end() ? nullptr : &it->second;
}

IdSet EggGraph::room_ids() const {
  IdSet out;
  for (const auto& [id, n] : spatial_)
    if (n.layer == Layer::kRoom) out.insert(id);
  return out;
}

IdSet EggGraph::object_ids() const {
  IdSet out;
  for (const auto& [id, n] : spatial_)
    if (n.layer == Layer::kObject) out.insert(id);
  return out;
}

IdSet EggGraph::event_ids() const {
  IdSet out;
  for (const auto& [id, e] : events_) out.insert(id);
  return out;
}

TimeInterval EggGraph::horizon() const {
  std::optional<TimeInterval> h;
  auto grow = [&h](const TimeInterval& t) { h = h ? hull(*h, t) : t; };
  for (const auto& [id, n] : spatial_)
    for (const auto& s : n.history) grow({s.time, s.time});
  for (const auto& [id, e] : events_) grow(e.interval);
  for (const auto& e : spatial_edges_) grow(e.interval);
  for (const auto& e : event_edges_) grow(e.interval);
  return h.value_or(TimeInterval{});
}

// ---------------------------------------------------------------------------
// GraphBuilder

GraphBuilder& GraphBuilder::add_spatial_node(SpatialNode node) {
  if (g_.contains(node.id)) throw Error(ErrorCode::kDuplicateId, "node '" + node.id.str() + "' already exists");
  if (node.id.prefix() != expected_prefix(node.layer))
    throw Error(ErrorCode::kInvariantViolation,
                "id '" + node.id.str() + "' does not match layer " + std::string(to_string(node.layer)));
  if (node.layer == Layer::kRoom) {
    if (!node.static_position) throw Error(ErrorCode::kInvariantViolation, "room '" + node.id.str() + "' has no position");
    if (!node.history.empty()) throw Error(ErrorCode::kInvariantViolation, "room '" + node.id.str() + "' has a history");
    if (!node.static_position->finite())
      throw Error(ErrorCode::kInvariantViolation, "room '" + node.id.str() + "' has a non-finite position");
  } else {
    if (node.static_position)
      throw Error(ErrorCode::kInvariantViolation, "object '" + node.id.str() + "' has a static position");
    if (!node.caption || node.caption->empty())
      throw Error(ErrorCode::kInvariantViolation, "object '" + node.id.str() + "' has no caption");
    for (std::size_t i = 0; i < node.history.size(); ++i) {
      if (!node.history[i].position.finite() || node.history[i].time.micros < 0)
        throw Error(ErrorCode::kInvariantViolation, "object '" + node.id.str() + "' has an invalid snapshot");
      if (i > 0 && !(node.history[i - 1].time < node.history[i].time))
        throw Error(ErrorCode::kInvariantViolation, "object '" + node.id.str() + "' history is not strictly sorted");
    }
  }
  auto id = node.id;
  g_.spatial_.emplace(std::move(id), std::move(node));
  return *this;
}

GraphBuilder& GraphBuilder::add_spatial_edge(SpatialEdge edge) {
  const auto* parent = g_.find_spatial(edge.parent);
  const auto* child = g_.find_spatial(edge.child);
  if (!parent) throw Error(ErrorCode::kUnknownSpatialId, "unknown spatial node '" + edge.parent.str() + "'");
  if (!child) throw Error(ErrorCode::kUnknownSpatialId, "unknown spatial node '" + edge.child.str() + "'");
  if (parent->layer != Layer::kRoom || child->layer != Layer::kObject)
    throw Error(ErrorCode::kInvariantViolation, "spatial edge " + edge_label(edge.parent, edge.child) +
                                                    " must link a room to an object");
  if (!edge.interval.valid())
    throw Error(ErrorCode::kInvariantViolation, "spatial edge " + edge_label(edge.parent, edge.child) +
                                                    " has an invalid interval");
  for (const auto& other : g_.spatial_edges_) {
    if (other.child != edge.child) continue;
    if (other == edge || other.interval.overlaps_interior(edge.interval))
      throw Error(ErrorCode::kInvariantViolation,
                  "object '" + edge.child.str() + "' would be contained by " + other.parent.str() + " and " +
                      edge.parent.str() + " at the same time");
  }
  insert_sorted(g_.spatial_edges_, std::move(edge));
  return *this;
}

GraphBuilder& GraphBuilder::ground_event(EventNode event, const std::vector<Grounding>& groundings) {
  if (g_.contains(event.id)) throw Error(ErrorCode::kDuplicateId, "node '" + event.id.str() + "' already exists");
  if (event.id.prefix() != "event")
    throw Error(ErrorCode::kInvariantViolation, "id '" + event.id.str() + "' is not an event id");
  if (!event.interval.valid())
    throw Error(ErrorCode::kInvariantViolation, "event '" + event.id.str() + "' has an invalid interval");
  if (event.summary.empty())
    throw Error(ErrorCode::kInvariantViolation, "event '" + event.id.str() + "' has an empty summary");
  if (!event.observation_position.finite())
    throw Error(ErrorCode::kInvariantViolation, "event '" + event.id.str() + "' has a non-finite position");

  // Stage all changes on copies so a failure leaves the graph untouched.
  std::map<NodeId, std::vector<AttributeSnapshot>> histories;
  IdSet seen;
  for (const auto& gr : groundings) {
    const auto* node = g_.find_spatial(gr.spatial);
    if (!node || node->layer != Layer::kObject)
      throw Error(ErrorCode::kUnknownSpatialId, "event '" + event.id.str() + "' grounds unknown object '" +
                                                    gr.spatial.str() + "'");
    if (!seen.insert(gr.spatial).second)
      throw Error(ErrorCode::kDuplicateId, "event '" + event.id.str() + "' grounds '" + gr.spatial.str() + "' twice");
    if (gr.description.empty())
      throw Error(ErrorCode::kInvariantViolation, "grounding of '" + gr.spatial.str() + "' has no description");
    if (!event.interval.contains(gr.first.time) || !event.interval.contains(gr.last.time) ||
        gr.last.time < gr.first.time)
      throw Error(ErrorCode::kSnapshotOutsideInterval,
                  "snapshots of '" + gr.spatial.str() + "' do not lie within event '" + event.id.str() + "'");
    if (!gr.first.position.finite() || !gr.last.position.finite())
      throw Error(ErrorCode::kInvariantViolation, "snapshot of '" + gr.spatial.str() + "' is not finite");

    auto& hist = histories.try_emplace(gr.spatial, node->history).first->second;
    for (const auto* snap : {&gr.first, &gr.last}) {
      auto it = std::lower_bound(hist.begin(), hist.end(), snap->time,
                                 [](const AttributeSnapshot& s, Timestamp t) { return s.time < t; });
      if (it != hist.end() && it->time == snap->time) {
        if (*it == *snap) continue;
        throw Error(ErrorCode::kInvariantViolation, "object '" + gr.spatial.str() +
                                                        "' already has a different snapshot at " +
                                                        std::to_string(snap->time.micros));
      }
      hist.insert(it, *snap);
    }
  }

  for (auto& [id, hist] : histories) g_.spatial_.at(id).history = std::move(hist);
  for (const auto& gr : groundings)
    insert_sorted(g_.event_edges_, EventEdge{event.id, gr.spatial, event.interval, gr.description});
  auto id = event.id;
  g_.events_.emplace(std::move(id), std::move(event));
  return *this;
}

EggGraph add_spatial_node(EggGraph g, SpatialNode node) {
  return std::move(GraphBuilder(std::move(g)).add_spatial_node(std::move(node))).build();
}

EggGraph add_spatial_edge(EggGraph g, SpatialEdge edge) {
  return std::move(GraphBuilder(std::move(g)).add_spatial_edge(std::move(edge))).build();
}

EggGraph ground_event(EggGraph g, EventNode event, const std::vector<Grounding>& groundings) {
  return std::move(GraphBuilder(std::move(g)).ground_event(std::move(event), groundings)).build();
}

// ---------------------------------------------------------------------------
// Validation

ValidationReport validate(const EggGraph& g) {
  ValidationReport report;
  report.spatial_count = g.spatial_nodes().size();
  report.event_count = g.event_nodes().size();
  auto fail = [&report](std::string_view r, const std::string& id, std::string msg) {
    report.violations.push_back({std::string(r), id, std::move(msg)});
  };
  auto check_interval = [&](const TimeInterval& t, const std::string& id) {
    if (t.start.micros < 0 || t.end.micros < 0) fail(rule::kTimestamp, id, "negative timestamp");
    if (t.end < t.start) fail(rule::kIntervalOrder, id, "interval ends before it starts");
  };

  for (const auto& [id, n] : g.spatial_nodes()) {
    if (id.prefix() != expected_prefix(n.layer))
      fail(rule::kIdPrefix, id.str(), "prefix does not match layer " + std::string(to_string(n.layer)));
    if (g.find_event(id)) fail(rule::kDuplicateId, id.str(), "id used by both a spatial and an event node");
    if (n.layer == Layer::kRoom) {
      if (!n.static_position) fail(rule::kRoomShape, id.str(), "room has no position");
      if (!n.history.empty()) fail(rule::kRoomShape, id.str(), "room has a history");
      if (n.static_position && !n.static_position->finite()) fail(rule::kNonFinite, id.str(), "room position");
    } else {
      if (n.static_position) fail(rule::kRoomShape, id.str(), "object has a static position");
      if (!n.caption || n.caption->empty()) fail(rule::kObjectCaption, id.str(), "object has no caption");
      for (std::size_t i = 0; i < n.history.size(); ++i) {
        const auto& s = n.history[i];
        if (s.time.micros < 0) fail(rule::kTimestamp, id.str(), "negative snapshot time");
        if (!s.position.finite()) fail(rule::kNonFinite, id.str(), "snapshot position");
        if (i > 0 && !(n.history[i - 1].time < s.time))
          fail(rule::kHistoryOrder, id.str(), "history not strictly ascending at index " + std::to_string(i));
      }
    }
  }

  for (const auto& [id, e] : g.event_nodes()) {
    if (id.prefix() != "event") fail(rule::kIdPrefix, id.str(), "event id must use the 'event' prefix");
    check_interval(e.interval, id.str());
    if (e.summary.empty()) fail(rule::kEventSummary, id.str(), "empty summary");
    if (!e.observation_position.finite()) fail(rule::kNonFinite, id.str(), "observation position");
  }

  const auto& sedges = g.spatial_edges();
  for (std::size_t i = 0; i < sedges.size(); ++i) {
    const auto& e = sedges[i];
    const auto label = edge_label(e.parent, e.child);
    const auto* p = g.find_spatial(e.parent);
    const auto* c = g.find_spatial(e.child);
    check_interval(e.interval, label);
    if (!p || !c) {
      fail(rule::kDanglingEdge, label, "spatial edge endpoint does not exist");
      continue;
    }
    if (p->layer != Layer::kRoom || c->layer != Layer::kObject)
      fail(rule::kEdgeLayer, label, "spatial edge must link a room to an object");
    for (std::size_t j = i + 1; j < sedges.size(); ++j) {
      const auto& o = sedges[j];
      if (o.child != e.child) continue;
      const bool clash = o.interval == e.interval || o.interval.overlaps_interior(e.interval);
      if (!clash) continue;
      if (o.parent == e.parent)
        fail(rule::kDuplicateEdge, label, "overlapping edges between the same pair");
      else
        fail(rule::kDoubleContainment, e.child.str(),
             "contained by " + e.parent.str() + " and " + o.parent.str() + " at the same time");
    }
  }

  std::map<NodeId, std::size_t> grounding_count;
  const auto& eedges = g.event_edges();
  for (std::size_t i = 0; i < eedges.size(); ++i) {
    const auto& e = eedges[i];
    const auto label = edge_label(e.event, e.spatial);
    const auto* ev = g.find_event(e.event);
    const auto* sp = g.find_spatial(e.spatial);
    check_interval(e.interval, label);
    if (!ev || !sp) {
      fail(rule::kDanglingEdge, label, "event edge endpoint does not exist");
      continue;
    }
    ++grounding_count[e.event];
    if (sp->layer != Layer::kObject) fail(rule::kEdgeLayer, label, "events ground objects only");
    if (e.interval != ev->interval) fail(rule::kEventEdgeInterval, label, "edge interval differs from event interval");
    if (e.description.empty()) fail(rule::kEdgeDescription, label, "empty description");
    if (i > 0 && eedges[i - 1].event == e.event && eedges[i - 1].spatial == e.spatial)
      fail(rule::kDuplicateEdge, label, "event grounds the same element twice");
  }

  for (const auto& [id, e] : g.event_nodes())
    if (!grounding_count.contains(id))
      report.warnings.push_back({std::string(rule::kEmptyGrounding), id.str(), "event grounds no spatial element"});
  return report;
}

IdSet events_in(const EggGraph& g, const TimeInterval& t) {
  IdSet out;
  for (const auto& [id, e] : g.event_nodes())
    if (t.contains(e.interval)) out.insert(id);
  return out;
}

std::optional<NodeId> containing_room(const EggGraph& g, const NodeId& object, Timestamp at) {
  const auto* n = g.find_spatial(object);
  if (!n || n->layer != Layer::kObject)
    throw Error(ErrorCode::kUnknownSpatialId, "'" + object.str() + "' is not an object of the graph");
  const SpatialEdge* best = nullptr;
  for (const auto& e : g.spatial_edges()) {
    if (e.child != object || !e.interval.contains(at)) continue;
    if (!best || best->interval.start < e.interval.start) best = &e;
  }
  if (!best) return std::nullopt;
  return best->parent;
}

}  // namespace egg
