#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "egg/graph.hpp"

namespace egg {

struct RoomEntry {
  NodeId id;
  std::string name;
  Position3 position;
};

struct RoomTransition {
  NodeId room_id;
  TimeInterval interval;
};

struct ObjectEntry {
  NodeId id;
  std::string name;
  std::string semantic_class;
  std::string caption;
  NodeId initial_room;
  // Later placements. The initial room covers the horizon up to the first transition.
  std::vector<RoomTransition> room_transitions;
};

/// Static description of a scene (`scene.manifest.json`).
struct SceneManifest {
  // Observation horizon; derived from transitions and records when absent.
  std::optional<TimeInterval> horizon;
  std::vector<RoomEntry> rooms;
  std::vector<ObjectEntry> objects;
};

struct GroundingRecord {
  NodeId spatial_id;
  std::string description;
  AttributeSnapshot first;
  AttributeSnapshot last;
};

/// One pre-captioned observed event (a line of `events.records.jsonl`).
struct EventRecord {
  NodeId event_id;
  TimeInterval interval;
  std::string summary;
  std::vector<Position3> camera_positions;
  std::vector<GroundingRecord> groundings;
  std::optional<NodeId> room_hint;
};

SceneManifest parse_manifest(std::string_view text);
std::string write_manifest(const SceneManifest& m);

/// One JSON object per non-blank line. Diagnostics name the 1-based line.
std::vector<EventRecord> parse_records(std::string_view jsonl);
std::string write_records(const std::vector<EventRecord>& records);

/// Arithmetic mean of the camera positions. Throws Error(kSchema) on an empty list.
Position3 mean_position(const std::vector<Position3>& positions);

/// Builds the graph: rooms and objects from the manifest, containment edges from the
/// placements, then one grounded event per record in interval order.
EggGraph ingest(const SceneManifest& manifest, const std::vector<EventRecord>& records);

}  // namespace egg
