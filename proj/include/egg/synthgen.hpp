#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "egg/ingest.hpp"
#include "egg/query.hpp"

namespace egg {

enum class EventTemplate { kMakeCoffee, kMoveObject, kUseObject, kToggleState };

std::string_view to_string(EventTemplate t);  // "make-coffee", "move-object", "use-object", "toggle-state"
std::optional<EventTemplate> parse_event_template(std::string_view text);

struct QuestionMix {
  std::size_t text = 24;
  std::size_t binary = 27;
  std::size_t node = 19;
  std::size_t time = 10;
};

struct GenParams {
  std::uint64_t seed = 42;
  std::size_t n_rooms = 2;
  std::size_t n_objects = 21;
  std::size_t n_events = 35;
  // Defaults to 20 minutes per event starting at 2025-08-30T08:00:00Z.
  std::optional<TimeInterval> horizon;
  std::vector<EventTemplate> templates = {EventTemplate::kMakeCoffee, EventTemplate::kMoveObject,
                                          EventTemplate::kUseObject, EventTemplate::kToggleState};
  QuestionMix questions;
  // Probability of dropping each word of event summaries and descriptions.
  double word_dropout = 0.0;
};

/// What a generated question asks, for checking gold answers against a graph.
struct QuestionFacts {
  std::string kind;  // e.g. "coffee-mug", "object-room-now"; see synthgen.cpp
  std::optional<NodeId> subject;
  std::optional<NodeId> room;
  std::optional<std::string> semantic_class;
};

struct SynthData {
  SceneManifest manifest;
  std::vector<EventRecord> records;
  std::vector<QueryRecord> queries;
  std::vector<QuestionFacts> facts;  // parallel to `queries`
};

/// Simulates a scene and derives questions with gold answers from the simulated world
/// state. Output is a pure function of `params`. A question kind with too few candidates
/// yields fewer questions than requested.
///
/// Throws Error(kInfeasibleParams), e.g. for events without templates, objects without
/// rooms, or an event that no enabled template can realize.
SynthData generate(const GenParams& params);

}  // namespace egg
