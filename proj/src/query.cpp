#include "egg/query.hpp"

#include <set>

#include <fmt/format.h>

#include "egg/error.hpp"
#include "query_json.hpp"

namespace egg {

using detail::json;
using detail::ObjectReader;
using detail::ordered_json;

std::string_view to_string(Modality m) {
  switch (m) {
    case Modality::kText: return "text";
    case Modality::kBinary: return "binary";
    case Modality::kNode: return "node";
    case Modality::kTime: return "time";
  }
  return "text";
}

std::optional<Modality> parse_modality(std::string_view text) {
  for (auto m : {Modality::kText, Modality::kBinary, Modality::kNode, Modality::kTime})
    if (to_string(m) == text) return m;
  return std::nullopt;
}

bool payload_matches(Modality m, const AnswerPayload& p) {
  switch (m) {
    case Modality::kText: return std::holds_alternative<std::string>(p);
    case Modality::kBinary: return std::holds_alternative<bool>(p);
    case Modality::kNode: return std::holds_alternative<IdSet>(p);
    case Modality::kTime: return std::holds_alternative<TimeValue>(p);
  }
  return false;
}

std::string render_payload(const AnswerPayload& p) {
  struct Visitor {
    std::string operator()(const std::string& s) const { return s; }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
    std::string operator()(const IdSet& ids) const {
      std::string out;
      for (const auto& id : ids) {
        if (!out.empty()) out += ',';
        out += id.str();
      }
      return out;
    }
    std::string operator()(const TimeValue& t) const {
      if (const auto* at = std::get_if<Timestamp>(&t)) return std::to_string(at->micros);
      const auto& iv = std::get<TimeInterval>(t);
      return fmt::format("[{}, {}]", iv.start.micros, iv.end.micros);
    }
  };
  return std::visit(Visitor{}, p);
}

Answer abstain(Modality m) {
  Answer a;
  a.modality = m;
  a.abstained = true;
  switch (m) {
    case Modality::kText: a.payload = std::string("insufficient information"); break;
    case Modality::kBinary: a.payload = false; break;
    case Modality::kNode: a.payload = IdSet{}; break;
    case Modality::kTime: a.payload = TimeValue{Timestamp{}}; break;
  }
  return a;
}

namespace detail {

ordered_json payload_to_json(const AnswerPayload& p) {
  if (const auto* s = std::get_if<std::string>(&p)) return *s;
  if (const auto* b = std::get_if<bool>(&p)) return *b;
  if (const auto* ids = std::get_if<IdSet>(&p)) {
    auto arr = ordered_json::array();
    for (const auto& id : *ids) arr.push_back(id.str());
    return arr;
  }
  const auto& t = std::get<TimeValue>(p);
  ordered_json j;
  if (const auto* at = std::get_if<Timestamp>(&t)) {
    j["at"] = at->micros;
  } else {
    const auto& iv = std::get<TimeInterval>(t);
    j["start"] = iv.start.micros;
    j["end"] = iv.end.micros;
  }
  return j;
}

AnswerPayload payload_from_json(Modality m, const json& j, const std::string& path) {
  switch (m) {
    case Modality::kText:
      if (!j.is_string()) schema_error(path, "text answer must be a string");
      return j.get<std::string>();
    case Modality::kBinary:
      if (!j.is_boolean()) schema_error(path, "binary answer must be a boolean");
      return j.get<bool>();
    case Modality::kNode: {
      expect_array(j, path);
      IdSet ids;
      for (std::size_t i = 0; i < j.size(); ++i) ids.insert(read_id(j[i], path + "[" + std::to_string(i) + "]"));
      return ids;
    }
    case Modality::kTime: {
      ObjectReader r(j, path);
      TimeValue t;
      if (r.optional("at")) {
        t = Timestamp{r.integer("at")};
      } else {
        TimeInterval iv{{r.integer("start")}, {r.integer("end")}};
        if (!iv.valid()) schema_error(path, "time interval must satisfy 0 <= start <= end");
        t = iv;
      }
      r.finish();
      return t;
    }
  }
  schema_error(path, "unknown modality");
}

}  // namespace detail

std::vector<QueryRecord> parse_dataset(std::string_view text) {
  const json doc = detail::parse_json(text, "dataset");
  ObjectReader r(doc, "$");
  const auto& arr = detail::expect_array(r.required("queries"), r.path("queries"));
  r.finish();
  std::vector<QueryRecord> out;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    ObjectReader qr(arr[i], r.path("queries") + "[" + std::to_string(i) + "]");
    QueryRecord q;
    q.id = qr.string("id");
    if (!seen.insert(q.id).second) throw Error(ErrorCode::kDuplicateId, "question id '" + q.id + "' repeats");
    q.question = qr.string("question");
    const auto modality = qr.string("modality");
    const auto m = parse_modality(modality);
    if (!m) detail::schema_error(qr.path("modality"), "unknown modality '" + modality + "'");
    q.modality = *m;
    q.gold = detail::payload_from_json(q.modality, qr.required("gold"), qr.path("gold"));
    if (const auto* tags = qr.optional("tags")) {
      detail::expect_array(*tags, qr.path("tags"));
      for (const auto& t : *tags) {
        if (!t.is_string()) detail::schema_error(qr.path("tags"), "tags must be strings");
        q.tags.push_back(t.get<std::string>());
      }
    }
    qr.finish();
    out.push_back(std::move(q));
  }
  return out;
}

std::string write_dataset(const std::vector<QueryRecord>& queries) {
  ordered_json doc;
  doc["queries"] = ordered_json::array();
  for (const auto& q : queries) {
    ordered_json j;
    j["id"] = q.id;
    j["question"] = q.question;
    j["modality"] = std::string(to_string(q.modality));
    j["gold"] = detail::payload_to_json(q.gold);
    if (!q.tags.empty()) j["tags"] = q.tags;
    doc["queries"].push_back(std::move(j));
  }
  return doc.dump(2) + "\n";
}

}  // namespace egg
