#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "egg/graph.hpp"

namespace egg {

enum class Modality { kText, kBinary, kNode, kTime };

std::string_view to_string(Modality m);
std::optional<Modality> parse_modality(std::string_view text);

/// A time answer: either an instant or an interval.
using TimeValue = std::variant<Timestamp, TimeInterval>;

/// Modality-typed answer content: text, boolean, node set, or time value.
using AnswerPayload = std::variant<std::string, bool, IdSet, TimeValue>;

bool payload_matches(Modality m, const AnswerPayload& p);

/// Compact human-readable rendering: `true`, `room_1,room_2`, `[100, 200]`, or the text.
std::string render_payload(const AnswerPayload& p);

struct QueryRecord {
  std::string id;
  std::string question;
  Modality modality = Modality::kText;
  AnswerPayload gold;
  // Free-form labels; the harness reports per-tag results ("event-dependent", ...).
  std::vector<std::string> tags;
};

struct Answer {
  Modality modality = Modality::kText;
  AnswerPayload payload;
  bool abstained = false;
  std::optional<std::string> rationale;
};

/// The answer a generator gives when the context holds nothing usable.
Answer abstain(Modality m);

/// `dataset.qa.json`: {"queries": [{id, question, modality, gold, tags?}, ...]}.
std::vector<QueryRecord> parse_dataset(std::string_view text);
std::string write_dataset(const std::vector<QueryRecord>& queries);

}  // namespace egg
