#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "egg/agents.hpp"
#include "egg/graph.hpp"
#include "egg/prompts.hpp"
#include "egg/pruning.hpp"
#include "egg/query.hpp"

namespace egg {

enum class AblationMode { kFull, kSpatialOnly, kEventOnly, kNoEdges, kPassedNoEdges };

std::string_view to_string(AblationMode m);  // "full", "spatial_only", ...
std::optional<AblationMode> parse_ablation(std::string_view text);

struct AblatedGraph {
  EggGraph graph;
  bool omit_edges = false;  // serialize without event edges
};

/// spatial_only drops events and event edges; event_only drops spatial nodes and all edges;
/// no_edges drops event edges; passed_no_edges keeps the graph and sets omit_edges.
AblatedGraph ablate(const EggGraph& g, AblationMode mode);

struct EvalConfig {
  bool prune = true;
  PruneConfig prune_config;
  AblationMode ablation = AblationMode::kFull;
  int trials = 1;
  std::size_t concurrency = 4;
  // Echoed into the report only.
  std::uint64_t seed = 0;
  std::string captioning = "ground-truth";
  std::string agent = "scripted";
  PromptLibrary prompts;  // the `answer` template is used for prompt token accounting
};

/// Result of answering one question.
struct QueryOutcome {
  std::optional<RelevantInfo> info;  // absent when pruning was skipped or extraction failed
  bool pruned = false;
  std::string context;  // serialized graph handed to the generator
  std::size_t prompt_tokens = 0;
  std::size_t context_tokens = 0;
  Answer answer;
  std::vector<std::string> notes;
};

/// Ablate, extract I_Q, prune, serialize, generate. Extraction failures fall back to the
/// unpruned graph with a note; other errors propagate.
QueryOutcome run_query(const QueryRecord& query, const EggGraph& g, const Agents& agents, const EvalConfig& cfg);

struct EvalRow {
  std::string id;
  int trial = 0;
  Modality modality = Modality::kText;
  std::vector<std::string> tags;
  bool pruned = false;
  std::string answer;  // rendered payload
  bool abstained = false;
  double score = 0.0;         // judge score
  bool exact = false;         // payload equals gold
  std::optional<double> jaccard;  // node rows
  std::size_t prompt_tokens = 0;
  std::size_t context_tokens = 0;
  std::size_t tokens_used = 0;
  double compression = 0.0;
  std::vector<std::string> notes;
};

/// Aggregates over rows; a field is empty when no row contributes to it.
struct Aggregates {
  std::size_t rows = 0;
  std::optional<double> s_all;
  std::optional<double> s_text;
  std::optional<double> a_binary;
  std::optional<double> a_node;        // mean Jaccard
  std::optional<double> a_node_exact;  // fraction of exact set matches
  std::optional<double> s_time;
  std::optional<double> mean_tokens;
  std::size_t total_tokens = 0;
  std::optional<double> mean_compression;

  bool operator==(const Aggregates&) const = default;
};

Aggregates aggregate(const std::vector<EvalRow>& rows);

struct EvalReport {
  EvalConfig config;
  std::vector<EvalRow> rows;  // sorted by (id, trial)
  Aggregates aggregates;
};

/// Runs every query `cfg.trials` times with at most `cfg.concurrency` queries in flight.
/// A failing query is scored 0 with an error note; the run never aborts.
EvalReport run_eval(const std::vector<QueryRecord>& dataset, const EggGraph& g, const Agents& agents,
                    const EvalConfig& cfg);

/// `report.json` text.
std::string report_json(const EvalReport& report);

/// Fixed-width table with one line per report: method, pruning, captioning, S_all, S_text,
/// A_binary, A_node, S_time, tokens per trial in thousands, compression.
std::string report_table(const std::vector<const EvalReport*>& reports);

}  // namespace egg
