#include "mock_chat.hpp"

#include <nlohmann/json.hpp>

#include "egg/agents.hpp"
#include "egg/error.hpp"
#include "egg/text_match.hpp"
#include "query_json.hpp"

namespace egg::mock {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string between(const std::string& text, const std::string& open, const std::string& close) {
  const auto a = text.find(open);
  if (a == std::string::npos) return {};
  const auto start = a + open.size();
  const auto b = text.find(close, start);
  return text.substr(start, b == std::string::npos ? std::string::npos : b - start);
}

std::string line_after(const std::string& text, const std::string& label) { return between(text, label, "\n"); }

// "- key: value" or "- key" lines of a list section.
std::vector<std::pair<std::string, std::string>> list_lines(const std::string& section) {
  std::vector<std::pair<std::string, std::string>> out;
  std::size_t pos = 0;
  while (pos < section.size()) {
    auto end = section.find('\n', pos);
    if (end == std::string::npos) end = section.size();
    const auto line = section.substr(pos, end - pos);
    pos = end + 1;
    if (line.rfind("- ", 0) != 0) continue;
    const auto colon = line.find(": ");
    if (colon == std::string::npos) {
      out.emplace_back(line.substr(2), "");
    } else {
      out.emplace_back(line.substr(2, colon - 2), line.substr(colon + 2));
    }
  }
  return out;
}

bool mentions(const std::string& question, const std::string& name) {
  const auto q = words(question);
  const auto n = words(name);
  if (n.empty() || n.size() > q.size()) return false;
  for (std::size_t i = 0; i + n.size() <= q.size(); ++i)
    if (std::equal(n.begin(), n.end(), q.begin() + static_cast<std::ptrdiff_t>(i))) return true;
  return false;
}

std::string scope_reply(const std::string& prompt) {
  const auto question = line_after(prompt, "Question: ");
  ordered_json j;
  j["time"] = nullptr;
  j["rooms"] = ordered_json::array();
  for (const auto& [name, rest] : list_lines(between(prompt, "Rooms:\n", "\n\n")))
    if (mentions(question, name)) j["rooms"].push_back(name);
  return j.dump();
}

std::string entities_reply(const std::string& prompt) {
  const auto question = line_after(prompt, "Question: ");
  std::set<std::string> stems;
  for (const auto& w : words(question))
    if (!is_stopword(w)) stems.insert(stem(w));
  ordered_json j;
  j["objects"] = ordered_json::array();
  j["events"] = ordered_json::array();
  for (const auto& [name, caption] : list_lines(between(prompt, "Objects (name: caption):\n", "\n\n")))
    if (mentions(question, name)) j["objects"].push_back(name);
  for (const auto& [id, summary] : list_lines(between(prompt, "Events (id: summary):\n", "\n\n"))) {
    for (const auto& w : words(summary)) {
      if (!is_stopword(w) && stems.contains(stem(w))) {
        j["events"].push_back(id);
        break;
      }
    }
  }
  return j.dump();
}

std::string answer_reply(const std::string& prompt) {
  QueryRecord q;
  q.question = line_after(prompt, "\nQuestion: ");
  q.modality = parse_modality(line_after(prompt, "Answer type: ")).value_or(Modality::kText);
  const auto graph = between(prompt, "Scene graph:\n", "\n\nQuestion: ");
  const Answer a = ScriptedGenerator{}.generate(q, graph);
  ordered_json j;
  j["answer"] = detail::payload_to_json(a.payload);
  j["rationale"] = a.rationale.value_or("");
  j["abstained"] = a.abstained;
  return j.dump();
}

std::string judge_reply(const std::string& prompt) {
  const auto gold = line_after(prompt, "Reference answer: ");
  const auto answer = line_after(prompt, "Candidate answer: ");
  ordered_json j;
  j["score"] = gold == answer ? 1.0 : token_f1(gold, answer);
  return j.dump();
}

}  // namespace

std::string respond(const ChatRequest& request) {
  if (request.messages.empty()) throw Error(ErrorCode::kTransport, "request without messages");
  const auto& prompt = request.messages.front().content;
  if (request.schema_name == "extract_scope") return scope_reply(prompt);
  if (request.schema_name == "extract_entities") return entities_reply(prompt);
  if (request.schema_name == "answer") return answer_reply(prompt);
  if (request.schema_name == "judge") return judge_reply(prompt);
  throw Error(ErrorCode::kTransport, "unknown request kind '" + request.schema_name + "'");
}

std::string respond_http(const std::string& body) {
  const auto j = json::parse(body);
  ChatRequest r;
  r.model = j.at("model").get<std::string>();
  for (const auto& m : j.at("messages")) r.messages.push_back({m.at("role"), m.at("content")});
  if (j.contains("response_format")) r.schema_name = j["response_format"]["json_schema"]["name"].get<std::string>();
  ordered_json out;
  out["id"] = "mock-" + fnv1a_hex(body);
  out["object"] = "chat.completion";
  out["model"] = r.model;
  out["choices"] = ordered_json::array(
      {{{"index", 0}, {"message", {{"role", "assistant"}, {"content", respond(r)}}}, {"finish_reason", "stop"}}});
  return out.dump();
}

}  // namespace egg::mock
