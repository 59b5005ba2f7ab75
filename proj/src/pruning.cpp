#include "egg/pruning.hpp"

#include <algorithm>

#include "egg/error.hpp"

namespace egg {

namespace {

bool intersects(const IdSet& set, const NodeId& id) { return set.contains(id); }

template <class Pred>
IdSet filter(const IdSet& in, Pred pred) {
  IdSet out;
  for (const auto& id : in)
    if (pred(id)) out.insert(id);
  return out;
}

void require_subset(const IdSet& sub, const IdSet& super, ErrorCode code, std::string_view what) {
  for (const auto& id : sub)
    if (!super.contains(id))
      throw Error(code, std::string(what) + " '" + id.str() + "' is not part of the input graph");
}

// Event edges of `g` as (event, spatial) pairs, restricted to the retained edge set.
template <class Fn>
void for_each_event_edge(const Subgraph& g, Fn fn) {
  const auto& edges = g.parent().event_edges();
  for (auto idx : g.event_edges()) fn(edges[idx]);
}

template <class Fn>
void for_each_spatial_edge(const Subgraph& g, Fn fn) {
  const auto& edges = g.parent().spatial_edges();
  for (auto idx : g.spatial_edges()) fn(edges[idx]);
}

}  // namespace

// ---------------------------------------------------------------------------
// Subgraph

Subgraph Subgraph::full(const EggGraph& g) {
  Subgraph s(g);
  s.spatial_ids_ = [&] {
    IdSet ids;
    for (const auto& [id, n] : g.spatial_nodes()) ids.insert(id);
    return ids;
  }();
  s.event_ids_ = g.event_ids();
  for (std::size_t i = 0; i < g.spatial_edges().size(); ++i) s.spatial_edges_.insert(i);
  for (std::size_t i = 0; i < g.event_edges().size(); ++i) s.event_edges_.insert(i);
  return s;
}

Subgraph Subgraph::empty(const EggGraph& g) { return Subgraph(g); }

Subgraph Subgraph::select(const Subgraph& edge_source, IdSet spatial_ids, IdSet event_ids) {
  Subgraph s(edge_source.parent());
  const auto& sedges = s.parent_->spatial_edges();
  const auto& eedges = s.parent_->event_edges();
  for (auto idx : edge_source.spatial_edges_)
    if (spatial_ids.contains(sedges[idx].parent) && spatial_ids.contains(sedges[idx].child))
      s.spatial_edges_.insert(idx);
  for (auto idx : edge_source.event_edges_)
    if (event_ids.contains(eedges[idx].event) && spatial_ids.contains(eedges[idx].spatial))
      s.event_edges_.insert(idx);
  s.spatial_ids_ = std::move(spatial_ids);
  s.event_ids_ = std::move(event_ids);
  return s;
}

EggGraph Subgraph::materialize() const {
  std::vector<SpatialNode> spatial;
  std::vector<EventNode> events;
  std::vector<SpatialEdge> sedges;
  std::vector<EventEdge> eedges;
  for (const auto& id : spatial_ids_) spatial.push_back(*parent_->find_spatial(id));
  for (const auto& id : event_ids_) events.push_back(*parent_->find_event(id));
  for (auto idx : spatial_edges_) sedges.push_back(parent_->spatial_edges()[idx]);
  for (auto idx : event_edges_) eedges.push_back(parent_->event_edges()[idx]);
  return EggGraph::from_parts(std::move(spatial), std::move(events), std::move(sedges), std::move(eedges));
}

bool Subgraph::operator==(const Subgraph& other) const {
  return parent_ == other.parent_ && spatial_ids_ == other.spatial_ids_ && event_ids_ == other.event_ids_ &&
         spatial_edges_ == other.spatial_edges_ && event_edges_ == other.event_edges_;
}

// ---------------------------------------------------------------------------
// Config parsing

std::optional<LocationEventRule> parse_location_rule(std::string_view text) {
  if (text == "literal") return LocationEventRule::kLiteral;
  if (text == "closure") return LocationEventRule::kDescendantClosure;
  return std::nullopt;
}

std::optional<TimeHierarchyRule> parse_time_rule(std::string_view text) {
  if (text == "literal") return TimeHierarchyRule::kLiteral;
  if (text == "ancestors") return TimeHierarchyRule::kKeepAncestors;
  return std::nullopt;
}

std::string_view to_string(LocationEventRule r) {
  return r == LocationEventRule::kLiteral ? "literal" : "closure";
}

std::string_view to_string(TimeHierarchyRule r) {
  return r == TimeHierarchyRule::kLiteral ? "literal" : "ancestors";
}

// ---------------------------------------------------------------------------
// Manipulation functions

Subgraph prune_time(const Subgraph& g, const TimeInterval& t_q, const PruneConfig& cfg,
                    const IdSet& pending_locations) {
  const auto& full = g.parent();
  IdSet events = filter(g.event_ids(), [&](const NodeId& id) { return t_q.contains(full.find_event(id)->interval); });
  IdSet spatial;
  for_each_event_edge(g, [&](const EventEdge& e) {
    if (events.contains(e.event)) spatial.insert(e.spatial);
  });

  if (cfg.time_hierarchy_rule == TimeHierarchyRule::kKeepAncestors) {
    IdSet rooms;
    for_each_spatial_edge(g, [&](const SpatialEdge& e) {
      if (spatial.contains(e.child)) rooms.insert(e.parent);
    });
    for (const auto& id : pending_locations)
      if (g.spatial_ids().contains(id) && full.find_spatial(id)->layer == Layer::kRoom) rooms.insert(id);
    spatial.insert(rooms.begin(), rooms.end());
  }
  return Subgraph::select(g, std::move(spatial), std::move(events));
}

Subgraph prune_location(const Subgraph& g, const IdSet& l_q, const PruneConfig& cfg) {
  require_subset(l_q, g.spatial_ids(), ErrorCode::kUnknownLocationId, "location");
  IdSet spatial = l_q;
  for_each_spatial_edge(g, [&](const SpatialEdge& e) {
    if (l_q.contains(e.parent)) spatial.insert(e.child);
  });
  const IdSet& anchors = cfg.location_event_rule == LocationEventRule::kLiteral ? l_q : spatial;
  IdSet events;
  for_each_event_edge(g, [&](const EventEdge& e) {
    if (intersects(anchors, e.spatial)) events.insert(e.event);
  });
  return Subgraph::select(g, std::move(spatial), std::move(events));
}

Subgraph prune_spatial(const Subgraph& g, const IdSet& s_q) {
  require_subset(s_q, g.spatial_ids(), ErrorCode::kUnknownSpatialId, "spatial node");
  IdSet events;
  for_each_event_edge(g, [&](const EventEdge& e) {
    if (s_q.contains(e.spatial)) events.insert(e.event);
  });
  IdSet spatial;
  for_each_event_edge(g, [&](const EventEdge& e) {
    if (events.contains(e.event)) spatial.insert(e.spatial);
  });
  return Subgraph::select(g, std::move(spatial), std::move(events));
}

Subgraph prune_event(const Subgraph& g, const IdSet& e_q) {
  require_subset(e_q, g.event_ids(), ErrorCode::kUnknownEventId, "event");
  IdSet spatial;
  for_each_event_edge(g, [&](const EventEdge& e) {
    if (e_q.contains(e.event)) spatial.insert(e.spatial);
  });
  return Subgraph::select(g, std::move(spatial), e_q);
}

Subgraph expand_history(const EggGraph& full, const Subgraph& g, const IdSet& s_q) {
  if (&g.parent() != &full)
    throw Error(ErrorCode::kInvalidGraph, "history expansion needs a subgraph of the given full graph");
  for (const auto& id : s_q)
    if (!full.find_spatial(id)) throw Error(ErrorCode::kUnknownSpatialId, "unknown spatial node '" + id.str() + "'");
  IdSet events;
  for (const auto& e : full.event_edges())
    if (s_q.contains(e.spatial)) events.insert(e.event);
  IdSet spatial = s_q;
  for (const auto& e : full.event_edges())
    if (events.contains(e.event)) spatial.insert(e.spatial);
  return Subgraph::select(Subgraph::full(full), std::move(spatial), std::move(events));
}

MergedRelevance merge_relevance(const Subgraph& g, const IdSet& s_q, const IdSet& e_q) {
  if (s_q.empty() || e_q.empty())
    throw Error(ErrorCode::kEmptyInputSet, "merging needs both spatial elements and events");
  MergedRelevance out;
  for_each_event_edge(g, [&](const EventEdge& e) {
    if (s_q.contains(e.spatial) && e_q.contains(e.event)) {
      out.spatial.insert(e.spatial);
      out.events.insert(e.event);
    }
  });
  return out;
}

// ---------------------------------------------------------------------------
// Pipeline

Subgraph prune_scope(const EggGraph& full, const TimeInterval& t_q, const IdSet& l_q, const PruneConfig& cfg) {
  const Subgraph after_time = prune_time(Subgraph::full(full), t_q, cfg, l_q);
  const IdSet reachable = filter(l_q, [&](const NodeId& id) { return after_time.spatial_ids().contains(id); });
  // Literal time pruning drops rooms. With none of them left there is no location to
  // restrict to, which reads the same as an empty L_Q.
  if (reachable.empty()) return after_time;
  return prune_location(after_time, reachable, cfg);
}

Subgraph prune_pipeline(const EggGraph& full, const RelevantInfo& i_q, const PruneConfig& cfg) {
  for (const auto& id : i_q.locations) {
    const auto* n = full.find_spatial(id);
    if (!n || n->layer != Layer::kRoom) throw Error(ErrorCode::kUnknownLocationId, "unknown room '" + id.str() + "'");
  }
  for (const auto& id : i_q.spatial)
    if (!full.find_spatial(id)) throw Error(ErrorCode::kUnknownSpatialId, "unknown spatial node '" + id.str() + "'");
  for (const auto& id : i_q.events)
    if (!full.find_event(id)) throw Error(ErrorCode::kUnknownEventId, "unknown event '" + id.str() + "'");

  const TimeInterval t_q = i_q.time.value_or(full.horizon());
  const IdSet l_q = i_q.locations.empty() ? full.room_ids() : i_q.locations;
  const Subgraph whole = Subgraph::full(full);

  // Stage 1: where and when to look.
  const Subgraph stage1 = prune_scope(full, t_q, l_q, cfg);

  // Stage 2: what to look at. Requested ids that stage 1 pruned away cannot be selected.
  const bool has_spatial = !i_q.spatial.empty();
  const bool has_events = !i_q.events.empty();
  const IdSet s_in = filter(i_q.spatial, [&](const NodeId& id) { return stage1.spatial_ids().contains(id); });
  const IdSet e_in = filter(i_q.events, [&](const NodeId& id) { return stage1.event_ids().contains(id); });

  IdSet expand_from;
  Subgraph stage2 = Subgraph::empty(full);
  if (has_spatial && has_events) {
    const auto merged = merge_relevance(stage1, i_q.spatial, i_q.events);
    stage2 = prune_event(prune_spatial(stage1, merged.spatial), merged.events);
    expand_from = merged.spatial;
  } else if (has_spatial) {
    stage2 = prune_spatial(stage1, s_in);
    expand_from = i_q.spatial;
  } else if (has_events) {
    stage2 = prune_event(stage1, e_in);
  }

  // Stage 3: history of the relevant elements, clipped to the time window.
  Subgraph result = has_spatial ? prune_time(expand_history(full, stage2, expand_from), t_q, cfg) : stage2;

  if (cfg.time_hierarchy_rule == TimeHierarchyRule::kKeepAncestors && !result.is_empty()) {
    IdSet spatial = result.spatial_ids();
    for (const auto& e : full.spatial_edges())
      if (result.spatial_ids().contains(e.child)) spatial.insert(e.parent);
    result = Subgraph::select(whole, std::move(spatial), result.event_ids());
  }
  return result;
}

}  // namespace egg
