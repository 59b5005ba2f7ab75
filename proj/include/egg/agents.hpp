#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "egg/graph.hpp"
#include "egg/pruning.hpp"
#include "egg/query.hpp"

namespace egg {

struct Extraction {
  RelevantInfo info;
  // Names the agent returned that match nothing in the graph.
  std::vector<std::string> warnings;
};

/// Produces I_Q for a question. Implementations must be safe to call concurrently.
class RelevanceExtractor {
 public:
  virtual ~RelevanceExtractor() = default;
  /// Every returned id resolves in `full`. Throws Error(kExtractionFailed) or Error(kTransport).
  virtual Extraction extract(const QueryRecord& query, const EggGraph& full, const PruneConfig& cfg) const = 0;
};

/// Answers a question from serialized graph text. Safe to call concurrently.
class AnswerGenerator {
 public:
  virtual ~AnswerGenerator() = default;
  /// Throws Error(kGenerationFailed), Error(kModalityViolation) or Error(kTransport).
  virtual Answer generate(const QueryRecord& query, std::string_view context) const = 0;
};

/// Scores a predicted answer against the gold answer in [0, 1]. Safe to call concurrently.
class Judge {
 public:
  virtual ~Judge() = default;
  /// Throws Error(kJudgeFailed) or Error(kTransport).
  virtual double score(const QueryRecord& query, const AnswerPayload& gold, const Answer& predicted) const = 0;
};

struct Agents {
  std::shared_ptr<const RelevanceExtractor> extractor;
  std::shared_ptr<const AnswerGenerator> generator;
  std::shared_ptr<const Judge> judge;
};

/// Keyword-rule extractor.
///
/// Phase A matches room names in the question (all rooms when none match) over the full
/// horizon. Phase B runs on the graph pruned to that scope: objects named in full, else
/// objects whose class is mentioned, and events whose summary shares a word stem with the
/// rest of the question.
class ScriptedExtractor final : public RelevanceExtractor {
 public:
  Extraction extract(const QueryRecord& query, const EggGraph& full, const PruneConfig& cfg) const override;
};

/// Rule-based generator over the parsed context graph. Abstains on an empty context.
class ScriptedGenerator final : public AnswerGenerator {
 public:
  Answer generate(const QueryRecord& query, std::string_view context) const override;
};

/// Exact match for binary, node and time answers; token F1 for text.
class ScriptedJudge final : public Judge {
 public:
  double score(const QueryRecord& query, const AnswerPayload& gold, const Answer& predicted) const override;
};

Agents scripted_agents();

/// |a ∩ b| / |a ∪ b|, with 1 for two empty sets.
double jaccard(const IdSet& a, const IdSet& b);

}  // namespace egg
