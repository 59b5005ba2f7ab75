#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string_view>

#include "egg/graph.hpp"

namespace egg {

/// Node selection over a parent EggGraph together with the edges retained by closure.
///
/// A Subgraph is a non-owning view: the parent graph must outlive it. Edges are stored
/// as indices into the parent's edge lists.
class Subgraph {
 public:
  static Subgraph full(const EggGraph& g);
  static Subgraph empty(const EggGraph& g);

  /// Selects the given nodes and applies the closure rule over `edge_source`'s edges:
  /// a spatial edge survives when both endpoints are selected, an event edge when its
  /// event and spatial endpoints are selected.
  static Subgraph select(const Subgraph& edge_source, IdSet spatial_ids, IdSet event_ids);

  const EggGraph& parent() const { return *parent_; }
  const IdSet& spatial_ids() const { return spatial_ids_; }
  const IdSet& event_ids() const { return event_ids_; }
  const std::set<std::size_t>& spatial_edges() const { return spatial_edges_; }
  const std::set<std::size_t>& event_edges() const { return event_edges_; }

  bool is_empty() const { return spatial_ids_.empty() && event_ids_.empty(); }

  /// Copies the selected nodes and edges into a standalone graph.
  EggGraph materialize() const;

  bool operator==(const Subgraph& other) const;

 private:
  explicit Subgraph(const EggGraph& g) : parent_(&g) {}

  const EggGraph* parent_;
  IdSet spatial_ids_;
  IdSet event_ids_;
  std::set<std::size_t> spatial_edges_;
  std::set<std::size_t> event_edges_;
};

/// Query-relevant information (time window, locations, spatial elements, events).
struct RelevantInfo {
  std::optional<TimeInterval> time;
  IdSet locations;
  IdSet spatial;
  IdSet events;

  bool operator==(const RelevantInfo&) const = default;
};

enum class LocationEventRule {
  kLiteral,            // keep events with an event edge straight to a location node
  kDescendantClosure,  // keep events with an event edge to any node kept by location pruning
};

enum class TimeHierarchyRule {
  kLiteral,        // keep only nodes with an event edge to a kept event
  kKeepAncestors,  // also keep rooms above kept objects and rooms still to be location-pruned
};

struct PruneConfig {
  LocationEventRule location_event_rule = LocationEventRule::kDescendantClosure;
  TimeHierarchyRule time_hierarchy_rule = TimeHierarchyRule::kKeepAncestors;
};

std::optional<LocationEventRule> parse_location_rule(std::string_view text);  // "literal" | "closure"
std::optional<TimeHierarchyRule> parse_time_rule(std::string_view text);      // "literal" | "ancestors"
std::string_view to_string(LocationEventRule r);
std::string_view to_string(TimeHierarchyRule r);

/// Keeps events inside `t_q` and the spatial nodes grounded by them. In keep-ancestors
/// mode, rooms of `g` that parent a kept object are kept too, as are `pending_locations`
/// (rooms that a following location pruning step will ask for).
Subgraph prune_time(const Subgraph& g, const TimeInterval& t_q, const PruneConfig& cfg,
                    const IdSet& pending_locations = {});

/// Keeps the locations, their children, and the events attached to them (see LocationEventRule).
/// Throws Error(kUnknownLocationId) if a location is not in `g`.
Subgraph prune_location(const Subgraph& g, const IdSet& l_q, const PruneConfig& cfg);

/// Keeps events grounding any of `s_q`, then every spatial node those events ground.
/// A queried node without events is dropped. Throws Error(kUnknownSpatialId).
Subgraph prune_spatial(const Subgraph& g, const IdSet& s_q);

/// Keeps exactly `e_q` and the spatial nodes they ground. Throws Error(kUnknownEventId).
Subgraph prune_event(const Subgraph& g, const IdSet& e_q);

/// Pulls from `full` every event grounding any of `s_q`, plus `s_q` itself and all nodes
/// those events ground. `g` does not influence the selection. Throws Error(kUnknownSpatialId).
Subgraph expand_history(const EggGraph& full, const Subgraph& g, const IdSet& s_q);

struct MergedRelevance {
  IdSet spatial;
  IdSet events;

  bool operator==(const MergedRelevance&) const = default;
};

/// Keeps the queried elements and events that are linked to each other by an event edge
/// of `g`. Ids absent from `g` cannot be linked and are dropped. Throws Error(kEmptyInputSet)
/// if either input set is empty.
MergedRelevance merge_relevance(const Subgraph& g, const IdSet& s_q, const IdSet& e_q);

/// First pipeline stage: time pruning of `full` followed by location pruning. Locations
/// that time pruning removed are skipped; when none is left, location pruning is skipped.
Subgraph prune_scope(const EggGraph& full, const TimeInterval& t_q, const IdSet& l_q, const PruneConfig& cfg);

/// Staged pruning: time and location, then spatial/event selection (merged when both are
/// given), then history expansion re-pruned to the time window. Absent time means the full
/// horizon, empty locations mean every room. Throws Error(kUnknown*Id) for ids not in `full`.
///
/// With keep-ancestors hierarchy retention the result additionally contains the rooms that
/// parent its objects in `full`.
Subgraph prune_pipeline(const EggGraph& full, const RelevantInfo& i_q, const PruneConfig& cfg);

}  // namespace egg
