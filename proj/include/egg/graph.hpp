#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "egg/time.hpp"

namespace egg {

/// Node identifier of the form `<prefix>_<digits>`, e.g. `room_1`, `object_12`, `event_3`.
///
/// Ordering is by prefix, then by numeric suffix, so `object_2 < object_10`.
class NodeId {
 public:
  NodeId() = default;
  /// Throws Error(kInvalidId) unless `text` matches `[a-z]+_[0-9]+`.
  explicit NodeId(std::string text);

  static bool is_well_formed(std::string_view text);

  const std::string& str() const { return text_; }
  std::string_view prefix() const;
  std::string_view suffix() const;

  std::strong_ordering operator<=>(const NodeId& other) const;
  bool operator==(const NodeId& other) const { return text_ == other.text_; }

 private:
  std::string text_;
};

using IdSet = std::set<NodeId>;

struct Position3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  bool finite() const;
  bool operator==(const Position3&) const = default;
};

struct AttributeSnapshot {
  Timestamp time;
  Position3 position;
  std::optional<std::string> state;

  bool operator==(const AttributeSnapshot&) const = default;
};

enum class Layer { kRoom, kObject };

std::string_view to_string(Layer layer);

struct SpatialNode {
  NodeId id;
  Layer layer = Layer::kObject;
  std::string name;
  std::string semantic_class;
  std::optional<std::string> caption;
  std::optional<Position3> static_position;  // rooms only
  std::vector<AttributeSnapshot> history;    // objects only, strictly ascending by time

  bool operator==(const SpatialNode&) const = default;
};

struct EventNode {
  NodeId id;
  TimeInterval interval;
  std::string summary;
  Position3 observation_position;

  bool operator==(const EventNode&) const = default;
};

/// Room-contains-object relation valid over `interval`.
struct SpatialEdge {
  NodeId parent;
  NodeId child;
  TimeInterval interval;

  auto operator<=>(const SpatialEdge&) const = default;
};

/// Grounds an event on one spatial element; `description` says what happened to that element.
struct EventEdge {
  NodeId event;
  NodeId spatial;
  TimeInterval interval;
  std::string description;

  auto operator<=>(const EventEdge&) const = default;
};

/// One grounded element of an event: the element, its role description, and its
/// attribute snapshots at the start and end of the observed change.
struct Grounding {
  NodeId spatial;
  std::string description;
  AttributeSnapshot first;
  AttributeSnapshot last;
};

class GraphBuilder;

/// Event-grounded scene graph. Immutable once built; mutations go through GraphBuilder
/// or the value-returning free functions below.
///
/// Edge lists are kept in canonical order: spatial edges by (parent, child, interval),
/// event edges by (event, spatial).
class EggGraph {
 public:
  using SpatialMap = std::map<NodeId, SpatialNode>;
  using EventMap = std::map<NodeId, EventNode>;

  EggGraph() = default;

  /// Assembles a graph without any checking. Used by the parser and by tests that
  /// plant defects; run validate() on the result.
  /// Throws Error(kDuplicateId) if a node id repeats within a list.
  static EggGraph from_parts(std::vector<SpatialNode> spatial, std::vector<EventNode> events,
                             std::vector<SpatialEdge> spatial_edges, std::vector<EventEdge> event_edges);

  const SpatialMap& spatial_nodes() const { return spatial_; }
  const EventMap& event_nodes() const { return events_; }
  const std::vector<SpatialEdge>& spatial_edges() const { return spatial_edges_; }
  const std::vector<EventEdge>& event_edges() const { return event_edges_; }

  const SpatialNode* find_spatial(const NodeId& id) const;
  const EventNode* find_event(const NodeId& id) const;
  bool contains(const NodeId& id) const { return find_spatial(id) || find_event(id); }

  IdSet room_ids() const;
  IdSet object_ids() const;
  IdSet event_ids() const;

  /// Hull of every interval and snapshot time in the graph; [0, 0] when there are none.
  TimeInterval horizon() const;

  bool operator==(const EggGraph&) const = default;

 private:
  friend class GraphBuilder;

  SpatialMap spatial_;
  EventMap events_;
  std::vector<SpatialEdge> spatial_edges_;
  std::vector<EventEdge> event_edges_;
};

/// Exclusively owned mutable view used during construction. Every operation keeps all
/// graph invariants or throws without modifying the graph.
class GraphBuilder {
 public:
  GraphBuilder() = default;
  explicit GraphBuilder(EggGraph g) : g_(std::move(g)) {}

  GraphBuilder& add_spatial_node(SpatialNode node);
  GraphBuilder& add_spatial_edge(SpatialEdge edge);
  GraphBuilder& ground_event(EventNode event, const std::vector<Grounding>& groundings);

  const EggGraph& graph() const { return g_; }
  EggGraph build() && { return std::move(g_); }

 private:
  EggGraph g_;
};

EggGraph add_spatial_node(EggGraph g, SpatialNode node);
EggGraph add_spatial_edge(EggGraph g, SpatialEdge edge);
EggGraph ground_event(EggGraph g, EventNode event, const std::vector<Grounding>& groundings);

/// Stable rule identifiers reported by validate().
namespace rule {
inline constexpr std::string_view kIdPrefix = "id-prefix";
inline constexpr std::string_view kDuplicateId = "duplicate-id";
inline constexpr std::string_view kTimestamp = "timestamp-range";
inline constexpr std::string_view kIntervalOrder = "interval-order";
inline constexpr std::string_view kNonFinite = "non-finite-position";
inline constexpr std::string_view kRoomShape = "room-shape";
inline constexpr std::string_view kObjectCaption = "object-caption";
inline constexpr std::string_view kHistoryOrder = "history-order";
inline constexpr std::string_view kEventSummary = "event-summary";
inline constexpr std::string_view kDanglingEdge = "dangling-edge";
inline constexpr std::string_view kEdgeLayer = "edge-layer";
inline constexpr std::string_view kDuplicateEdge = "duplicate-edge";
inline constexpr std::string_view kDoubleContainment = "double-containment";
inline constexpr std::string_view kEventEdgeInterval = "event-edge-interval";
inline constexpr std::string_view kEdgeDescription = "edge-description";
inline constexpr std::string_view kEmptyGrounding = "empty-grounding";  // warning only
}  // namespace rule

struct Violation {
  std::string rule;
  std::string id;  // offending node id, or an edge rendered as "parent->child"
  std::string message;

  bool operator==(const Violation&) const = default;
};

struct ValidationReport {
  std::vector<Violation> violations;
  std::vector<Violation> warnings;
  std::size_t spatial_count = 0;  // N, the number of tracked spatial elements
  std::size_t event_count = 0;

  bool ok() const { return violations.empty(); }
};

ValidationReport validate(const EggGraph& g);

/// Events whose interval lies inside `t`.
IdSet events_in(const EggGraph& g, const TimeInterval& t);

/// Room containing `object` at `at`. When two consecutive edges touch at `at`, the edge
/// starting at `at` wins (the object has just arrived there).
std::optional<NodeId> containing_room(const EggGraph& g, const NodeId& object, Timestamp at);

}  // namespace egg
