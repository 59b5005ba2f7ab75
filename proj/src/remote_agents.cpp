#include "egg/remote_agents.hpp"

#include <cstdlib>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "egg/error.hpp"
#include "egg/serialization.hpp"
#include "egg/text_match.hpp"
#include "query_json.hpp"

namespace egg {

using detail::json;

namespace {

// A reply that parsed but broke the requested shape, or did not parse at all.
struct BadReply {
  ErrorCode code;
  std::string what;
};

constexpr std::string_view kScopeSchema = R"({"type":"object","properties":{)"
    R"("time":{"anyOf":[{"type":"object","properties":{"start":{"type":"integer"},"end":{"type":"integer"}},)"
    R"("required":["start","end"],"additionalProperties":false},{"type":"null"}]},)"
    R"("rooms":{"type":"array","items":{"type":"string"}}},)"
    R"("required":["time","rooms"],"additionalProperties":false})";

constexpr std::string_view kEntitySchema = R"({"type":"object","properties":{)"
    R"("objects":{"type":"array","items":{"type":"string"}},)"
    R"("events":{"type":"array","items":{"type":"string"}}},)"
    R"("required":["objects","events"],"additionalProperties":false})";

constexpr std::string_view kJudgeSchema =
    R"({"type":"object","properties":{"score":{"type":"number"}},"required":["score"],"additionalProperties":false})";

std::string answer_schema(Modality m) {
  std::string value;
  switch (m) {
    case Modality::kText: value = R"({"type":"string"})"; break;
    case Modality::kBinary: value = R"({"type":"boolean"})"; break;
    case Modality::kNode: value = R"({"type":"array","items":{"type":"string"}})"; break;
    case Modality::kTime:
      value = R"({"anyOf":[{"type":"object","properties":{"start":{"type":"integer"},"end":{"type":"integer"}},)"
              R"("required":["start","end"],"additionalProperties":false},)"
              R"({"type":"object","properties":{"at":{"type":"integer"}},"required":["at"],"additionalProperties":false}]})";
      break;
  }
  return R"({"type":"object","properties":{"answer":)" + value +
         R"(,"rationale":{"type":"string"},"abstained":{"type":"boolean"}},)"
         R"("required":["answer","rationale","abstained"],"additionalProperties":false})";
}

json parse_reply(const std::string& reply) {
  try {
    auto j = json::parse(reply);
    if (!j.is_object()) throw BadReply{ErrorCode::kSyntax, "reply is not a JSON object"};
    return j;
  } catch (const json::parse_error& e) {
    throw BadReply{ErrorCode::kSyntax, std::string("reply is not JSON: ") + e.what()};
  }
}

std::vector<std::string> string_list(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array()) throw BadReply{ErrorCode::kSchema, std::string("missing list '") + key + "'"};
  std::vector<std::string> out;
  for (const auto& v : j[key]) {
    if (!v.is_string()) throw BadReply{ErrorCode::kSchema, std::string("'") + key + "' must hold strings"};
    out.push_back(v.get<std::string>());
  }
  return out;
}

// Sends the request; on a malformed reply, asks once more with the parse error attached.
template <class Parse>
auto ask(const ChatClient& client, ChatRequest request, Parse parse, ErrorCode syntax_code, ErrorCode shape_code) {
  std::string reply = client.complete(request);
  try {
    return parse(reply);
  } catch (const BadReply& first) {
    spdlog::warn("malformed {} reply ({}), re-prompting", request.schema_name, first.what);
    request.messages.push_back({"assistant", reply});
    request.messages.push_back(
        {"user", "Your reply did not match the required JSON shape: " + first.what + ". Reply with JSON only."});
    reply = client.complete(request);
    try {
      return parse(reply);
    } catch (const BadReply& second) {
      throw Error(second.code == ErrorCode::kSyntax ? syntax_code : shape_code,
                  request.schema_name + " reply still malformed after re-prompt: " + second.what);
    }
  }
}

ChatRequest make_request(const AgentConfig& cfg, std::string schema_name, std::string_view schema, std::string prompt) {
  ChatRequest r;
  r.model = cfg.model;
  r.temperature = cfg.temperature;
  r.schema_name = std::move(schema_name);
  r.response_schema = std::string(schema);
  r.messages.push_back({"user", std::move(prompt)});
  return r;
}

std::string horizon_text(const TimeInterval& t) {
  return fmt::format("{} to {} ({} to {})", t.start.micros, t.end.micros, to_iso8601(t.start), to_iso8601(t.end));
}

void resolve_all(const std::vector<std::string>& names, const std::vector<NamedEntity>& candidates, IdSet& out,
                 std::vector<std::string>& warnings, std::string_view kind) {
  for (const auto& name : names) {
    auto ids = resolve_name(name, candidates);
    if (ids.empty()) {
      warnings.push_back(fmt::format("dropped unknown {} '{}'", kind, name));
      spdlog::warn("{}", warnings.back());
    }
    out.insert(ids.begin(), ids.end());
  }
}

}  // namespace

AgentConfig AgentConfig::from_env() {
  AgentConfig cfg;
  if (const char* e = std::getenv("EGG_ENDPOINT")) cfg.endpoint = e;
  if (const char* k = std::getenv("EGG_API_KEY")) cfg.api_key = k;
  return cfg;
}

void AgentConfig::check() const {
  if (!(temperature >= 0.0)) throw Error(ErrorCode::kSchema, "temperature must be >= 0");
  if (max_retries < 0) throw Error(ErrorCode::kSchema, "max retries must be >= 0");
}

std::shared_ptr<const ChatClient> make_http_client(const AgentConfig& cfg) {
  if (cfg.endpoint.empty()) throw Error(ErrorCode::kTransport, "no chat endpoint configured (set EGG_ENDPOINT)");
  HttpOptions opts;
  opts.endpoint = cfg.endpoint;
  opts.api_key = cfg.api_key;
  opts.timeout = cfg.timeout;
  opts.max_retries = cfg.max_retries;
  return std::make_shared<HttpChatClient>(std::move(opts));
}

// ---------------------------------------------------------------------------

RemoteExtractor::RemoteExtractor(std::shared_ptr<const ChatClient> client, AgentConfig cfg)
    : client_(std::move(client)), cfg_(std::move(cfg)) {
  cfg_.check();
}

Extraction RemoteExtractor::extract(const QueryRecord& query, const EggGraph& full, const PruneConfig& cfg) const {
  if (full.spatial_nodes().empty() && full.event_nodes().empty())
    throw Error(ErrorCode::kExtractionFailed, "graph is empty");
  Extraction out;
  const auto horizon = full.horizon();
  const auto rooms = rooms_of(full);

  std::string room_lines;
  for (const auto& r : rooms) room_lines += "- " + r.name + "\n";
  const auto scope_prompt = cfg_.prompts.render(
      "extract_scope", {{"QUESTION", query.question}, {"ROOMS", room_lines}, {"HORIZON", horizon_text(horizon)}});

  struct Scope {
    std::optional<TimeInterval> time;
    std::vector<std::string> rooms;
  };
  const auto scope = ask(
      *client_, make_request(cfg_, "extract_scope", kScopeSchema, scope_prompt),
      [](const std::string& reply) {
        const auto j = parse_reply(reply);
        Scope s;
        s.rooms = string_list(j, "rooms");
        if (!j.contains("time")) throw BadReply{ErrorCode::kSchema, "missing 'time'"};
        const auto& t = j["time"];
        if (!t.is_null()) {
          if (!t.is_object() || !t.contains("start") || !t.contains("end") || !t["start"].is_number_integer() ||
              !t["end"].is_number_integer())
            throw BadReply{ErrorCode::kSchema, "'time' must be null or {start, end} integers"};
          TimeInterval iv{{t["start"].get<std::int64_t>()}, {t["end"].get<std::int64_t>()}};
          if (!iv.valid()) throw BadReply{ErrorCode::kSchema, "'time' must satisfy 0 <= start <= end"};
          s.time = iv;
        }
        return s;
      },
      ErrorCode::kExtractionFailed, ErrorCode::kExtractionFailed);

  out.info.time = scope.time.value_or(horizon);
  resolve_all(scope.rooms, rooms, out.info.locations, out.warnings, "room");
  if (out.info.locations.empty()) out.info.locations = full.room_ids();

  const EggGraph g1 = prune_scope(full, *out.info.time, out.info.locations, cfg).materialize();
  const auto objects = objects_of(g1);
  std::string object_lines;
  for (const auto& o : objects) object_lines += "- " + o.name + ": " + o.caption + "\n";
  std::string event_lines;
  for (const auto& [id, e] : g1.event_nodes()) event_lines += "- " + id.str() + ": " + e.summary + "\n";
  const auto entity_prompt = cfg_.prompts.render(
      "extract_entities", {{"QUESTION", query.question}, {"OBJECTS", object_lines}, {"EVENTS", event_lines}});

  using Lists = std::pair<std::vector<std::string>, std::vector<std::string>>;
  const auto lists = ask(
      *client_, make_request(cfg_, "extract_entities", kEntitySchema, entity_prompt),
      [](const std::string& reply) {
        const auto j = parse_reply(reply);
        return Lists{string_list(j, "objects"), string_list(j, "events")};
      },
      ErrorCode::kExtractionFailed, ErrorCode::kExtractionFailed);

  resolve_all(lists.first, objects, out.info.spatial, out.warnings, "object");
  for (const auto& name : lists.second) {
    if (NodeId::is_well_formed(name) && g1.find_event(NodeId(name))) {
      out.info.events.insert(NodeId(name));
    } else {
      out.warnings.push_back(fmt::format("dropped unknown event '{}'", name));
      spdlog::warn("{}", out.warnings.back());
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

RemoteGenerator::RemoteGenerator(std::shared_ptr<const ChatClient> client, AgentConfig cfg)
    : client_(std::move(client)), cfg_(std::move(cfg)) {
  cfg_.check();
}

Answer RemoteGenerator::generate(const QueryRecord& query, std::string_view context) const {
  EggGraph g;
  try {
    g = parse_graph(context);
  } catch (const Error& e) {
    throw Error(ErrorCode::kGenerationFailed, std::string("context is not a graph: ") + e.what());
  }
  std::vector<NamedEntity> nodes = rooms_of(g);
  for (auto& o : objects_of(g)) nodes.push_back(std::move(o));

  const auto prompt = cfg_.prompts.render(
      "answer",
      {{"QUESTION", query.question}, {"GRAPH", std::string(context)}, {"MODALITY", std::string(to_string(query.modality))}});
  const Modality m = query.modality;
  return ask(
      *client_, make_request(cfg_, "answer", answer_schema(m), prompt),
      [&](const std::string& reply) {
        const auto j = parse_reply(reply);
        if (!j.contains("answer")) throw BadReply{ErrorCode::kSchema, "missing 'answer'"};
        Answer a;
        a.modality = m;
        if (j.contains("rationale") && j["rationale"].is_string()) a.rationale = j["rationale"].get<std::string>();
        if (j.contains("abstained") && j["abstained"].is_boolean()) a.abstained = j["abstained"].get<bool>();
        if (m == Modality::kNode) {
          if (!j["answer"].is_array()) throw BadReply{ErrorCode::kSchema, "node answer must be a list"};
          IdSet ids;
          std::vector<std::string> dropped;
          for (const auto& v : j["answer"]) {
            if (!v.is_string()) throw BadReply{ErrorCode::kSchema, "node answer must hold strings"};
            const auto s = v.get<std::string>();
            if (NodeId::is_well_formed(s) && g.contains(NodeId(s))) {
              ids.insert(NodeId(s));
            } else {
              resolve_all({s}, nodes, ids, dropped, "node");
            }
          }
          a.payload = std::move(ids);
        } else {
          try {
            a.payload = detail::payload_from_json(m, j["answer"], "$.answer");
          } catch (const Error& e) {
            throw BadReply{ErrorCode::kSchema, e.what()};
          }
        }
        return a;
      },
      ErrorCode::kGenerationFailed, ErrorCode::kModalityViolation);
}

// ---------------------------------------------------------------------------

RemoteJudge::RemoteJudge(std::shared_ptr<const ChatClient> client, AgentConfig cfg)
    : client_(std::move(client)), cfg_(std::move(cfg)) {
  cfg_.check();
}

double RemoteJudge::score(const QueryRecord& query, const AnswerPayload& gold, const Answer& predicted) const {
  const auto prompt = cfg_.prompts.render("judge", {{"QUESTION", query.question},
                                                    {"MODALITY", std::string(to_string(query.modality))},
                                                    {"GOLD", render_payload(gold)},
                                                    {"ANSWER", render_payload(predicted.payload)}});
  return ask(
      *client_, make_request(cfg_, "judge", kJudgeSchema, prompt),
      [](const std::string& reply) {
        const auto j = parse_reply(reply);
        if (!j.contains("score") || !j["score"].is_number()) throw BadReply{ErrorCode::kSchema, "missing numeric 'score'"};
        const double s = j["score"].get<double>();
        if (!(s >= 0.0 && s <= 1.0)) throw BadReply{ErrorCode::kSchema, "score must lie in [0, 1]"};
        return s;
      },
      ErrorCode::kJudgeFailed, ErrorCode::kJudgeFailed);
}

Agents remote_agents(std::shared_ptr<const ChatClient> client, const AgentConfig& cfg) {
  return Agents{std::make_shared<RemoteExtractor>(client, cfg), std::make_shared<RemoteGenerator>(client, cfg),
                std::make_shared<RemoteJudge>(client, cfg)};
}

}  // namespace egg
