#include "egg/eval.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include <fmt/format.h>

#include "egg/error.hpp"
#include "egg/serialization.hpp"
#include "json_util.hpp"

namespace egg {

using detail::ordered_json;

namespace {

constexpr std::pair<AblationMode, std::string_view> kAblationNames[] = {
    {AblationMode::kFull, "full"},
    {AblationMode::kSpatialOnly, "spatial_only"},
    {AblationMode::kEventOnly, "event_only"},
    {AblationMode::kNoEdges, "no_edges"},
    {AblationMode::kPassedNoEdges, "passed_no_edges"},
};

std::string_view method_label(AblationMode m) {
  switch (m) {
    case AblationMode::kFull: return "EGG";
    case AblationMode::kSpatialOnly: return "Spatial-only";
    case AblationMode::kEventOnly: return "Event-only";
    case AblationMode::kNoEdges: return "EGG (w.o edges)";
    case AblationMode::kPassedNoEdges: return "EGG (passed w.o edges)";
  }
  return "EGG";
}

template <class Pred, class Value>
std::optional<double> mean_of(const std::vector<EvalRow>& rows, Pred pred, Value value) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& r : rows) {
    if (!pred(r)) continue;
    sum += value(r);
    ++n;
  }
  if (n == 0) return std::nullopt;
  return sum / static_cast<double>(n);
}

ordered_json optional_number(const std::optional<double>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); }

EvalRow score_row(const QueryRecord& q, int trial, const EggGraph& g, const Agents& agents, const EvalConfig& cfg,
                  std::size_t full_tokens) {
  EvalRow row;
  row.id = q.id;
  row.trial = trial;
  row.modality = q.modality;
  row.tags = q.tags;
  try {
    auto out = run_query(q, g, agents, cfg);
    row.pruned = out.pruned;
    row.notes = std::move(out.notes);
    row.prompt_tokens = out.prompt_tokens;
    row.context_tokens = out.context_tokens;
    row.tokens_used = out.prompt_tokens + out.context_tokens;
    row.compression =
        full_tokens == 0 ? 0.0 : 1.0 - static_cast<double>(out.context_tokens) / static_cast<double>(full_tokens);
    row.answer = render_payload(out.answer.payload);
    row.abstained = out.answer.abstained;
    row.exact = out.answer.payload == q.gold;
    if (q.modality == Modality::kNode) {
      const auto* pred = std::get_if<IdSet>(&out.answer.payload);
      row.jaccard = pred ? jaccard(*pred, std::get<IdSet>(q.gold)) : 0.0;
    }
    row.score = std::clamp(agents.judge->score(q, q.gold, out.answer), 0.0, 1.0);
  } catch (const std::exception& e) {
    row.score = 0.0;
    row.exact = false;
    if (q.modality == Modality::kNode) row.jaccard = 0.0;
    row.notes.push_back(std::string("failed: ") + e.what());
  }
  return row;
}

}  // namespace

std::string_view to_string(AblationMode m) {
  for (const auto& [mode, name] : kAblationNames)
    if (mode == m) return name;
  return "full";
}

std::optional<AblationMode> parse_ablation(std::string_view text) {
  for (const auto& [mode, name] : kAblationNames)
    if (name == text) return mode;
  return std::nullopt;
}

AblatedGraph ablate(const EggGraph& g, AblationMode mode) {
  std::vector<SpatialNode> spatial;
  std::vector<EventNode> events;
  std::vector<SpatialEdge> sedges;
  std::vector<EventEdge> eedges;
  const bool keep_spatial = mode != AblationMode::kEventOnly;
  const bool keep_events = mode != AblationMode::kSpatialOnly;
  const bool keep_event_edges = mode == AblationMode::kFull || mode == AblationMode::kPassedNoEdges;
  if (keep_spatial) {
    for (const auto& [id, n] : g.spatial_nodes()) spatial.push_back(n);
    sedges = g.spatial_edges();
  }
  if (keep_events)
    for (const auto& [id, e] : g.event_nodes()) events.push_back(e);
  if (keep_event_edges) eedges = g.event_edges();
  return AblatedGraph{EggGraph::from_parts(std::move(spatial), std::move(events), std::move(sedges), std::move(eedges)),
                      mode == AblationMode::kPassedNoEdges};
}

QueryOutcome run_query(const QueryRecord& query, const EggGraph& g, const Agents& agents, const EvalConfig& cfg) {
  const AblatedGraph ab = ablate(g, cfg.ablation);
  const SerializeOptions opts{ab.omit_edges};
  QueryOutcome out;

  std::optional<Subgraph> sub;
  if (cfg.prune) {
    try {
      auto ex = agents.extractor->extract(query, ab.graph, cfg.prune_config);
      for (auto& w : ex.warnings) out.notes.push_back(std::move(w));
      sub = prune_pipeline(ab.graph, ex.info, cfg.prune_config);
      out.info = std::move(ex.info);
      out.pruned = true;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kExtractionFailed) throw;
      out.notes.push_back(std::string("extraction failed, answering from the unpruned graph: ") + e.what());
    }
  }
  out.context = sub ? serialize(*sub, opts) : serialize(ab.graph, opts);
  out.context_tokens = count_tokens(out.context);
  out.prompt_tokens = count_tokens(cfg.prompts.render(
      "answer", {{"QUESTION", query.question}, {"GRAPH", ""}, {"MODALITY", std::string(to_string(query.modality))}}));

  out.answer = agents.generator->generate(query, out.context);
  if (out.answer.modality != query.modality || !payload_matches(query.modality, out.answer.payload))
    throw Error(ErrorCode::kModalityViolation, "answer does not match the " + std::string(to_string(query.modality)) +
                                                   " modality");
  return out;
}

Aggregates aggregate(const std::vector<EvalRow>& rows) {
  Aggregates a;
  a.rows = rows.size();
  auto all = [](const EvalRow&) { return true; };
  auto of = [](Modality m) { return [m](const EvalRow& r) { return r.modality == m; }; };
  a.s_all = mean_of(rows, all, [](const EvalRow& r) { return r.score; });
  a.s_text = mean_of(rows, of(Modality::kText), [](const EvalRow& r) { return r.score; });
  a.s_time = mean_of(rows, of(Modality::kTime), [](const EvalRow& r) { return r.score; });
  a.a_binary = mean_of(rows, of(Modality::kBinary), [](const EvalRow& r) { return r.exact ? 1.0 : 0.0; });
  a.a_node = mean_of(rows, of(Modality::kNode), [](const EvalRow& r) { return r.jaccard.value_or(0.0); });
  a.a_node_exact = mean_of(rows, of(Modality::kNode), [](const EvalRow& r) { return r.exact ? 1.0 : 0.0; });
  a.mean_tokens = mean_of(rows, all, [](const EvalRow& r) { return static_cast<double>(r.tokens_used); });
  a.mean_compression = mean_of(rows, all, [](const EvalRow& r) { return r.compression; });
  for (const auto& r : rows) a.total_tokens += r.tokens_used;
  return a;
}

EvalReport run_eval(const std::vector<QueryRecord>& dataset, const EggGraph& g, const Agents& agents,
                    const EvalConfig& cfg) {
  if (cfg.trials < 1) throw Error(ErrorCode::kSchema, "trials must be >= 1");
  const std::size_t full_tokens = count_tokens(serialize(g));
  const std::size_t trials = static_cast<std::size_t>(cfg.trials);
  const std::size_t jobs = dataset.size() * trials;

  EvalReport report;
  report.config = cfg;
  report.rows.resize(jobs);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs; i = next++)
      report.rows[i] = score_row(dataset[i / trials], static_cast<int>(i % trials), g, agents, cfg, full_tokens);
  };
  const std::size_t n_threads = std::clamp<std::size_t>(cfg.concurrency, 1, std::max<std::size_t>(jobs, 1));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  }

  std::stable_sort(report.rows.begin(), report.rows.end(),
                   [](const EvalRow& a, const EvalRow& b) { return std::tie(a.id, a.trial) < std::tie(b.id, b.trial); });
  report.aggregates = aggregate(report.rows);
  return report;
}

std::string report_json(const EvalReport& report) {
  const auto& c = report.config;
  const auto& a = report.aggregates;
  ordered_json j;
  j["config"] = {{"agent", c.agent},
                 {"pruning", c.prune},
                 {"location_event_rule", std::string(to_string(c.prune_config.location_event_rule))},
                 {"time_hierarchy_rule", std::string(to_string(c.prune_config.time_hierarchy_rule))},
                 {"ablation", std::string(to_string(c.ablation))},
                 {"captioning", c.captioning},
                 {"trials", c.trials},
                 {"seed", c.seed}};
  j["aggregates"] = {{"rows", a.rows},
                     {"S_all", optional_number(a.s_all)},
                     {"S_text", optional_number(a.s_text)},
                     {"A_binary", optional_number(a.a_binary)},
                     {"A_node", optional_number(a.a_node)},
                     {"A_node_exact", optional_number(a.a_node_exact)},
                     {"S_time", optional_number(a.s_time)},
                     {"mean_tokens", optional_number(a.mean_tokens)},
                     {"total_tokens", a.total_tokens},
                     {"mean_compression", optional_number(a.mean_compression)}};
  j["rows"] = ordered_json::array();
  for (const auto& r : report.rows) {
    ordered_json row;
    row["id"] = r.id;
    row["trial"] = r.trial;
    row["modality"] = std::string(to_string(r.modality));
    if (!r.tags.empty()) row["tags"] = r.tags;
    row["pruned"] = r.pruned;
    row["answer"] = r.answer;
    row["abstained"] = r.abstained;
    row["score"] = r.score;
    row["exact"] = r.exact;
    if (r.jaccard) row["jaccard"] = *r.jaccard;
    row["prompt_tokens"] = r.prompt_tokens;
    row["context_tokens"] = r.context_tokens;
    row["tokens_used"] = r.tokens_used;
    row["compression"] = r.compression;
    if (!r.notes.empty()) row["notes"] = r.notes;
    j["rows"].push_back(std::move(row));
  }
  return j.dump(2) + "\n";
}

std::string report_table(const std::vector<const EvalReport*>& reports) {
  auto num = [](const std::optional<double>& v) { return v ? fmt::format("{:.3f}", *v) : std::string("-"); };
  std::string out = fmt::format("{:<24} {:<8} {:<13} {:>7} {:>7} {:>9} {:>7} {:>7} {:>12} {:>12}\n", "Method",
                                "Pruning", "Captioning", "S_all", "S_text", "A_binary", "A_node", "S_time",
                                "Tokens (1K)", "Compression");
  for (const auto* r : reports) {
    const auto& a = r->aggregates;
    const double per_trial_k =
        static_cast<double>(a.total_tokens) / static_cast<double>(std::max(r->config.trials, 1)) / 1000.0;
    const std::string compression = a.mean_compression ? fmt::format("{:.2f} %", *a.mean_compression * 100.0) : "-";
    out += fmt::format("{:<24} {:<8} {:<13} {:>7} {:>7} {:>9} {:>7} {:>7} {:>12.1f} {:>12}\n",
                       method_label(r->config.ablation), r->config.prune ? "yes" : "no", r->config.captioning,
                       num(a.s_all), num(a.s_text), num(a.a_binary), num(a.a_node), num(a.s_time), per_trial_k,
                       compression);
  }
  return out;
}

}  // namespace egg
