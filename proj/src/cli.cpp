#include "egg/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "egg/agents.hpp"
#include "egg/error.hpp"
#include "egg/eval.hpp"
#include "egg/ingest.hpp"
#include "egg/remote_agents.hpp"
#include "egg/serialization.hpp"
#include "egg/synthgen.hpp"
#include "egg/text_match.hpp"
#include "json_util.hpp"

namespace egg::cli {

namespace fs = std::filesystem;
using detail::ObjectReader;

namespace {

// A malformed flag value; reported as a usage error.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view text, std::ostream& out) {
  if (path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorCode::kIo, "cannot write '" + path + "'");
  f << text;
}

IdSet parse_ids(const std::string& csv) {
  IdSet out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.insert(NodeId(item));
  return out;
}

TimeInterval parse_span(const std::string& text) {
  const auto colon = text.find(':');
  TimeInterval t;
  try {
    if (colon == std::string::npos) throw std::invalid_argument("missing ':'");
    std::size_t used = 0;
    t.start.micros = std::stoll(text.substr(0, colon), &used);
    if (used != colon) throw std::invalid_argument("trailing characters");
    const auto rest = text.substr(colon + 1);
    t.end.micros = std::stoll(rest, &used);
    if (used != rest.size()) throw std::invalid_argument("trailing characters");
  } catch (const std::logic_error&) {
    throw UsageError("time span '" + text + "' must look like START:END in microseconds");
  }
  if (!t.valid()) throw UsageError("time span '" + text + "' must satisfy 0 <= START <= END");
  return t;
}

// {"time": {"start", "end"}?, "locations": [...], "spatial": [...], "events": [...]}, all optional.
RelevantInfo parse_relevant_info(std::string_view text) {
  const auto doc = detail::parse_json(text, "relevant info");
  ObjectReader r(doc, "$");
  RelevantInfo info;
  if (r.optional("time")) {
    info.time = r.interval("time");
    if (!info.time->valid()) detail::schema_error(r.path("time"), "start must be >= 0 and <= end");
  }
  for (auto [key, set] : {std::pair{"locations", &info.locations}, std::pair{"spatial", &info.spatial},
                          std::pair{"events", &info.events}}) {
    if (const auto* arr = r.optional(key)) {
      detail::expect_array(*arr, r.path(key));
      for (std::size_t i = 0; i < arr->size(); ++i)
        set->insert(detail::read_id((*arr)[i], r.path(key) + "[" + std::to_string(i) + "]"));
    }
  }
  r.finish();
  return info;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kTransport:
    case ErrorCode::kExtractionFailed:
    case ErrorCode::kGenerationFailed:
    case ErrorCode::kModalityViolation:
    case ErrorCode::kJudgeFailed: return kExitTransport;
    case ErrorCode::kSyntax:
    case ErrorCode::kSchema:
    case ErrorCode::kIntegrity:
    case ErrorCode::kInvalidGraph:
    case ErrorCode::kInvariantViolation:
    case ErrorCode::kDuplicateId:
    case ErrorCode::kSnapshotOutsideInterval: return kExitFailure;
    default: return kExitUsage;
  }
}

struct PruneFlags {
  std::string location_rule = "closure";
  std::string time_rule = "ancestors";

  void add(CLI::App* app) {
    app->add_option("--location-rule", location_rule, "Events kept by location pruning")
        ->check(CLI::IsMember({"literal", "closure"}));
    app->add_option("--time-rule", time_rule, "Hierarchy kept by time pruning")
        ->check(CLI::IsMember({"literal", "ancestors"}));
  }
  PruneConfig config() const { return {*parse_location_rule(location_rule), *parse_time_rule(time_rule)}; }
};

struct AgentFlags {
  std::string agent = "scripted";
  std::string replay;
  std::string record;
  std::string prompts;
  std::string model;
  double temperature = 0.0;

  void add(CLI::App* app) {
    app->add_option("--agent", agent, "Agent implementation")->check(CLI::IsMember({"scripted", "remote"}));
    app->add_option("--replay", replay, "Serve remote-agent replies from this fixture directory");
    app->add_option("--record", record, "Record remote-agent exchanges into this directory");
    app->add_option("--prompts", prompts, "Directory with prompt template overrides");
    app->add_option("--model", model, "Chat model name");
    app->add_option("--temperature", temperature, "Sampling temperature")->check(CLI::NonNegativeNumber);
  }

  AgentConfig config() const {
    AgentConfig cfg = AgentConfig::from_env();
    if (!prompts.empty()) cfg.prompts = PromptLibrary::from_directory(prompts);
    if (!model.empty()) cfg.model = model;
    cfg.temperature = temperature;
    return cfg;
  }

  Agents make() const {
    if (agent == "scripted") return scripted_agents();
    const auto cfg = config();
    std::shared_ptr<const ChatClient> client;
    if (!replay.empty()) {
      client = std::make_shared<ReplayChatClient>(replay);
    } else {
      client = make_http_client(cfg);
    }
    if (!record.empty()) client = std::make_shared<RecordingChatClient>(client, record);
    return remote_agents(client, cfg);
  }
};

void print_report(const ValidationReport& report, std::ostream& out) {
  for (const auto& v : report.violations) out << fmt::format("error {} {}: {}\n", v.rule, v.id, v.message);
  for (const auto& v : report.warnings) out << fmt::format("warning {} {}: {}\n", v.rule, v.id, v.message);
  out << fmt::format("{} violation(s), {} warning(s), N={} spatial element(s), {} event(s)\n",
                     report.violations.size(), report.warnings.size(), report.spatial_count, report.event_count);
}

std::string join_ids(const IdSet& ids) {
  std::string out;
  for (const auto& id : ids) out += (out.empty() ? "" : ",") + id.str();
  return out.empty() ? "-" : out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Event-grounded scene graph toolkit: build, validate, prune, query, evaluate, generate"};
  app.name("egg");
  app.require_subcommand(1);
  bool quiet = false;
  app.add_flag("-q,--quiet", quiet, "Only log errors");

  // build
  std::string manifest_path, records_path, out_path = "-";
  auto* build = app.add_subcommand("build", "Ingest a scene manifest and event records into a graph file");
  build->add_option("--manifest", manifest_path, "scene.manifest.json")->required();
  build->add_option("--records", records_path, "events.records.jsonl")->required();
  build->add_option("--out", out_path, "Output graph file ('-' for stdout)");

  // validate
  std::string graph_path;
  auto* validate_cmd = app.add_subcommand("validate", "Check a graph file against the graph invariants");
  validate_cmd->add_option("graph", graph_path, "Graph file")->required();

  // prune
  std::string iq_path, time_span, locations, objects, events;
  bool omit_edges = false;
  PruneFlags prune_flags;
  auto* prune = app.add_subcommand("prune", "Extract the subgraph relevant to a manually given I_Q");
  prune->add_option("graph", graph_path, "Graph file")->required();
  prune->add_option("--iq", iq_path, "JSON file with time, locations, spatial, events");
  prune->add_option("--time", time_span, "Time window START:END in microseconds");
  prune->add_option("--locations", locations, "Comma-separated room ids");
  prune->add_option("--objects", objects, "Comma-separated spatial element ids");
  prune->add_option("--events", events, "Comma-separated event ids");
  prune->add_option("--out", out_path, "Output subgraph file ('-' for stdout)");
  prune->add_flag("--omit-edges", omit_edges, "Serialize without event edges");
  prune_flags.add(prune);

  // query
  std::string question, modality_text;
  bool no_prune = false;
  bool as_json = false;
  bool show_context = false;
  AgentFlags agent_flags;
  auto* query = app.add_subcommand("query", "Answer one question about a graph");
  query->add_option("graph", graph_path, "Graph file")->required();
  query->add_option("question", question, "Natural-language question")->required();
  query->add_option("--modality", modality_text, "Answer type (inferred from the question when omitted)")
      ->check(CLI::IsMember({"text", "binary", "node", "time"}));
  query->add_flag("--no-prune", no_prune, "Answer from the whole graph");
  query->add_flag("--json", as_json, "Print the answer as JSON");
  query->add_flag("--show-context", show_context, "Also print the serialized context");
  agent_flags.add(query);
  prune_flags.add(query);

  // eval
  std::string dataset_path, ablation = "full", eval_out, captioning = "ground-truth";
  int trials = 1;
  std::size_t concurrency = 4;
  std::uint64_t seed = 0;
  std::optional<double> min_score;
  auto* eval = app.add_subcommand("eval", "Run a QA dataset and report scores, tokens and compression");
  eval->add_option("--dataset", dataset_path, "dataset.qa.json")->required();
  eval->add_option("--graph", graph_path, "Graph file")->required();
  eval->add_option("--ablate", ablation, "Graph variant")
      ->check(CLI::IsMember({"full", "spatial_only", "event_only", "no_edges", "passed_no_edges"}));
  eval->add_option("--trials", trials, "Runs per query")->check(CLI::PositiveNumber);
  eval->add_option("--concurrency", concurrency, "Queries in flight")->check(CLI::PositiveNumber);
  eval->add_option("--seed", seed, "Seed echoed into the report");
  eval->add_option("--captioning", captioning, "Captioning source echoed into the report");
  eval->add_option("--out", eval_out, "Directory for report.json and report.txt");
  eval->add_option("--min-score", min_score, "Exit 1 when S_all falls below this value");
  eval->add_flag("--no-prune", no_prune, "Answer from the whole graph");
  agent_flags.add(eval);
  prune_flags.add(eval);

  // gen
  GenParams gen_params;
  std::string gen_out, gen_horizon, gen_templates, gen_questions;
  auto* gen = app.add_subcommand("gen", "Generate a synthetic scene, event records and QA dataset");
  gen->add_option("--out", gen_out, "Output directory")->required();
  gen->add_option("--seed", gen_params.seed, "Random seed");
  gen->add_option("--rooms", gen_params.n_rooms, "Number of rooms");
  gen->add_option("--objects", gen_params.n_objects, "Number of objects");
  gen->add_option("--events", gen_params.n_events, "Number of events");
  gen->add_option("--horizon", gen_horizon, "Observation window START:END in microseconds");
  gen->add_option("--templates", gen_templates,
                  "Comma-separated subset of make-coffee,move-object,use-object,toggle-state");
  gen->add_option("--questions", gen_questions, "Question counts TEXT,BINARY,NODE,TIME");
  gen->add_option("--word-dropout", gen_params.word_dropout, "Per-word dropout in captions")
      ->check(CLI::Range(0.0, 0.99));

  // inspect
  auto* inspect = app.add_subcommand("inspect", "Summarize a graph file");
  inspect->add_option("graph", graph_path, "Graph file")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  if (quiet) spdlog::set_level(spdlog::level::err);

  try {
    if (build->parsed()) {
      const auto g = ingest(parse_manifest(read_file(manifest_path)), parse_records(read_file(records_path)));
      write_file(out_path, serialize(g), out);
      return kExitOk;
    }

    if (validate_cmd->parsed()) {
      const auto report = validate(parse_graph_unchecked(read_file(graph_path)));
      print_report(report, out);
      return report.ok() ? kExitOk : kExitFailure;
    }

    if (prune->parsed()) {
      const auto g = parse_graph(read_file(graph_path));
      RelevantInfo info = iq_path.empty() ? RelevantInfo{} : parse_relevant_info(read_file(iq_path));
      if (!time_span.empty()) info.time = parse_span(time_span);
      if (!locations.empty()) info.locations = parse_ids(locations);
      if (!objects.empty()) info.spatial = parse_ids(objects);
      if (!events.empty()) info.events = parse_ids(events);
      const auto sub = prune_pipeline(g, info, prune_flags.config());
      const auto text = serialize(sub, {omit_edges});
      write_file(out_path, text, out);
      auto& stats = out_path == "-" ? err : out;
      stats << fmt::format("kept {} spatial element(s) and {} event(s); compression {:.4f}\n", sub.spatial_ids().size(),
                           sub.event_ids().size(), 1.0 - static_cast<double>(count_tokens(text)) /
                                                             static_cast<double>(count_tokens(serialize(g))));
      return kExitOk;
    }

    if (query->parsed()) {
      const auto g = parse_graph(read_file(graph_path));
      QueryRecord q;
      q.id = "query";
      q.question = question;
      q.modality = modality_text.empty() ? infer_modality(question) : *parse_modality(modality_text);
      EvalConfig cfg;
      cfg.prune = !no_prune;
      cfg.prune_config = prune_flags.config();
      if (agent_flags.agent == "remote") cfg.prompts = agent_flags.config().prompts;
      const auto outcome = run_query(q, g, agent_flags.make(), cfg);
      if (show_context) out << outcome.context;
      for (const auto& note : outcome.notes) err << "note: " << note << "\n";
      if (as_json) {
        detail::ordered_json j;
        j["modality"] = std::string(to_string(q.modality));
        j["answer"] = render_payload(outcome.answer.payload);
        j["abstained"] = outcome.answer.abstained;
        if (outcome.answer.rationale) j["rationale"] = *outcome.answer.rationale;
        if (outcome.info) {
          j["relevant"] = {{"time", fmt::format("{}:{}", outcome.info->time->start.micros, outcome.info->time->end.micros)},
                           {"locations", join_ids(outcome.info->locations)},
                           {"spatial", join_ids(outcome.info->spatial)},
                           {"events", join_ids(outcome.info->events)}};
        }
        j["context_tokens"] = outcome.context_tokens;
        out << j.dump(2) << "\n";
      } else {
        out << render_payload(outcome.answer.payload) << "\n";
      }
      return kExitOk;
    }

    if (eval->parsed()) {
      const auto g = parse_graph(read_file(graph_path));
      const auto dataset = parse_dataset(read_file(dataset_path));
      EvalConfig cfg;
      cfg.prune = !no_prune;
      cfg.prune_config = prune_flags.config();
      cfg.ablation = *parse_ablation(ablation);
      cfg.trials = trials;
      cfg.concurrency = concurrency;
      cfg.seed = seed;
      cfg.captioning = captioning;
      cfg.agent = agent_flags.agent;
      if (agent_flags.agent == "remote") cfg.prompts = agent_flags.config().prompts;
      const auto report = run_eval(dataset, g, agent_flags.make(), cfg);
      const auto table = report_table({&report});
      if (!eval_out.empty()) {
        fs::create_directories(eval_out);
        write_file((fs::path(eval_out) / "report.json").string(), report_json(report), out);
        write_file((fs::path(eval_out) / "report.txt").string(), table, out);
      }
      out << table;
      std::size_t failed = 0;
      for (const auto& row : report.rows)
        for (const auto& note : row.notes)
          if (note.starts_with("failed: ")) {
            ++failed;
            err << fmt::format("{} (trial {}): {}\n", row.id, row.trial, note);
          }
      if (min_score && report.aggregates.s_all.value_or(0.0) < *min_score) {
        err << fmt::format("S_all {:.4f} is below the required {:.4f}\n", report.aggregates.s_all.value_or(0.0),
                           *min_score);
        return kExitFailure;
      }
      return kExitOk;
    }

    if (gen->parsed()) {
      if (!gen_horizon.empty()) gen_params.horizon = parse_span(gen_horizon);
      if (!gen_templates.empty()) {
        gen_params.templates.clear();
        std::stringstream ss(gen_templates);
        std::string item;
        while (std::getline(ss, item, ',')) {
          auto t = parse_event_template(item);
          if (!t) throw UsageError("unknown event template '" + item + "'");
          gen_params.templates.push_back(*t);
        }
      }
      if (!gen_questions.empty()) {
        std::vector<std::size_t> counts;
        std::stringstream ss(gen_questions);
        std::string item;
        try {
          while (std::getline(ss, item, ',')) counts.push_back(std::stoul(item));
        } catch (const std::logic_error&) {
          counts.clear();
        }
        if (counts.size() != 4) throw UsageError("--questions needs four counts TEXT,BINARY,NODE,TIME");
        gen_params.questions = {counts[0], counts[1], counts[2], counts[3]};
      }
      const auto data = generate(gen_params);
      const auto g = ingest(data.manifest, data.records);
      fs::create_directories(gen_out);
      const fs::path dir(gen_out);
      write_file((dir / "scene.manifest.json").string(), write_manifest(data.manifest), out);
      write_file((dir / "events.records.jsonl").string(), write_records(data.records), out);
      write_file((dir / "dataset.qa.json").string(), write_dataset(data.queries), out);
      write_file((dir / "graph.egg.json").string(), serialize(g), out);
      out << fmt::format("wrote {} room(s), {} object(s), {} event(s), {} question(s) to {}\n", data.manifest.rooms.size(),
                         data.manifest.objects.size(), data.records.size(), data.queries.size(), gen_out);
      return kExitOk;
    }

    if (inspect->parsed()) {
      const auto g = parse_graph(read_file(graph_path));
      const auto h = g.horizon();
      out << fmt::format("rooms: {}\nobjects: {}\nevents: {}\nspatial edges: {}\nevent edges: {}\n", g.room_ids().size(),
                         g.object_ids().size(), g.event_ids().size(), g.spatial_edges().size(), g.event_edges().size());
      out << fmt::format("horizon: {} .. {} ({} .. {})\n", h.start.micros, h.end.micros, to_iso8601(h.start),
                         to_iso8601(h.end));
      for (const auto& id : g.room_ids()) {
        std::size_t children = 0;
        std::set<NodeId> seen;
        for (const auto& e : g.spatial_edges())
          if (e.parent == id && seen.insert(e.child).second) ++children;
        out << fmt::format("  {} \"{}\": {} object(s) over time\n", id.str(), g.find_spatial(id)->name, children);
      }
      out << fmt::format("tokens: {}\n", count_tokens(serialize(g)));
      return kExitOk;
    }
  } catch (const Error& e) {
    err << "egg: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "egg: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace egg::cli
