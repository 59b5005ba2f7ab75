#include "egg/serialization.hpp"

#include <cctype>

#include "egg/error.hpp"
#include "json_util.hpp"

namespace egg {

using detail::json;
using detail::ObjectReader;
using detail::ordered_json;

namespace {

ordered_json write_interval(const TimeInterval& t) {
  ordered_json j;
  j["start"] = t.start.micros;
  j["start_iso"] = to_iso8601(t.start);
  j["end"] = t.end.micros;
  j["end_iso"] = to_iso8601(t.end);
  return j;
}

ordered_json write_node(const SpatialNode& n) {
  ordered_json j;
  j["id"] = n.id.str();
  j["name"] = n.name;
  j["semantic_class"] = n.semantic_class;
  if (n.caption) j["caption"] = *n.caption;
  if (n.layer == Layer::kRoom) {
    j["position"] = detail::write_position(*n.static_position);
    return j;
  }
  j["history"] = ordered_json::array();
  for (const auto& s : n.history) {
    ordered_json sj;
    sj["time"] = s.time.micros;
    sj["time_iso"] = to_iso8601(s.time);
    sj["position"] = detail::write_position(s.position);
    if (s.state) sj["state"] = *s.state;
    j["history"].push_back(std::move(sj));
  }
  return j;
}

Timestamp read_stamp(ObjectReader& r, std::string_view key) {
  const auto micros = r.integer(key);
  const std::string iso_key = std::string(key) + "_iso";
  const auto iso = r.string(iso_key);
  const Timestamp t{micros};
  if (micros < 0) detail::schema_error(r.path(key), "negative timestamp");
  if (iso != to_iso8601(t)) detail::schema_error(r.path(iso_key), "does not match the raw timestamp");
  return t;
}

TimeInterval read_interval(const json& j, const std::string& path) {
  ObjectReader r(j, path);
  TimeInterval t;
  t.start = read_stamp(r, "start");
  t.end = read_stamp(r, "end");
  r.finish();
  return t;
}

SpatialNode read_node(const json& j, const std::string& path, Layer layer) {
  ObjectReader r(j, path);
  SpatialNode n;
  n.layer = layer;
  n.id = r.id("id");
  n.name = r.string("name");
  n.semantic_class = r.string("semantic_class");
  n.caption = r.optional_string("caption");
  if (layer == Layer::kRoom) {
    n.static_position = r.position("position");
  } else {
    const auto& hist = detail::expect_array(r.required("history"), r.path("history"));
    for (std::size_t i = 0; i < hist.size(); ++i) {
      ObjectReader sr(hist[i], r.path("history") + "[" + std::to_string(i) + "]");
      AttributeSnapshot s;
      s.time = read_stamp(sr, "time");
      s.position = sr.position("position");
      s.state = sr.optional_string("state");
      sr.finish();
      n.history.push_back(std::move(s));
    }
  }
  r.finish();
  return n;
}

bool is_structural(char c) {
  switch (c) {
    case '{': case '}': case '[': case ']': case ':': case ',': case '"':
      return true;
    default:
      return false;
  }
}

}  // namespace

std::string serialize(const EggGraph& g, const SerializeOptions& opts) {
  if (auto report = validate(g); !report.ok()) {
    const auto& v = report.violations.front();
    throw Error(ErrorCode::kInvalidGraph, v.rule + " at " + v.id + ": " + v.message);
  }
  ordered_json doc;
  doc["rooms"] = ordered_json::array();
  doc["objects"] = ordered_json::array();
  for (const auto& [id, n] : g.spatial_nodes())
    doc[n.layer == Layer::kRoom ? "rooms" : "objects"].push_back(write_node(n));

  doc["events"] = ordered_json::array();
  for (const auto& [id, e] : g.event_nodes()) {
    ordered_json j;
    j["id"] = id.str();
    j["interval"] = write_interval(e.interval);
    j["summary"] = e.summary;
    j["observation_position"] = detail::write_position(e.observation_position);
    doc["events"].push_back(std::move(j));
  }

  doc["spatial_edges"] = ordered_json::array();
  for (const auto& e : g.spatial_edges()) {
    ordered_json j;
    j["parent"] = e.parent.str();
    j["child"] = e.child.str();
    j["interval"] = write_interval(e.interval);
    doc["spatial_edges"].push_back(std::move(j));
  }

  doc["event_edges"] = ordered_json::array();
  if (!opts.omit_edges) {
    for (const auto& e : g.event_edges()) {
      ordered_json j;
      j["event"] = e.event.str();
      j["spatial"] = e.spatial.str();
      j["interval"] = write_interval(e.interval);
      j["description"] = e.description;
      doc["event_edges"].push_back(std::move(j));
    }
  }
  return doc.dump(2) + "\n";
}

std::string serialize(const Subgraph& g, const SerializeOptions& opts) { return serialize(g.materialize(), opts); }

EggGraph parse_graph_unchecked(std::string_view text) {
  const json doc = detail::parse_json(text, "graph");
  ObjectReader r(doc, "$");
  std::vector<SpatialNode> spatial;
  std::vector<EventNode> events;
  std::vector<SpatialEdge> sedges;
  std::vector<EventEdge> eedges;

  for (auto [key, layer] : {std::pair{"rooms", Layer::kRoom}, std::pair{"objects", Layer::kObject}}) {
    const auto& arr = detail::expect_array(r.required(key), r.path(key));
    for (std::size_t i = 0; i < arr.size(); ++i)
      spatial.push_back(read_node(arr[i], r.path(key) + "[" + std::to_string(i) + "]", layer));
  }

  const auto& ev = detail::expect_array(r.required("events"), r.path("events"));
  for (std::size_t i = 0; i < ev.size(); ++i) {
    ObjectReader er(ev[i], r.path("events") + "[" + std::to_string(i) + "]");
    EventNode e;
    e.id = er.id("id");
    e.interval = read_interval(er.required("interval"), er.path("interval"));
    e.summary = er.string("summary");
    e.observation_position = er.position("observation_position");
    er.finish();
    events.push_back(std::move(e));
  }

  const auto& se = detail::expect_array(r.required("spatial_edges"), r.path("spatial_edges"));
  for (std::size_t i = 0; i < se.size(); ++i) {
    ObjectReader er(se[i], r.path("spatial_edges") + "[" + std::to_string(i) + "]");
    SpatialEdge e;
    e.parent = er.id("parent");
    e.child = er.id("child");
    e.interval = read_interval(er.required("interval"), er.path("interval"));
    er.finish();
    sedges.push_back(std::move(e));
  }

  const auto& ee = detail::expect_array(r.required("event_edges"), r.path("event_edges"));
  for (std::size_t i = 0; i < ee.size(); ++i) {
    ObjectReader er(ee[i], r.path("event_edges") + "[" + std::to_string(i) + "]");
    EventEdge e;
    e.event = er.id("event");
    e.spatial = er.id("spatial");
    e.interval = read_interval(er.required("interval"), er.path("interval"));
    e.description = er.string("description");
    er.finish();
    eedges.push_back(std::move(e));
  }
  r.finish();

  EggGraph g;
  try {
    g = EggGraph::from_parts(std::move(spatial), std::move(events), std::move(sedges), std::move(eedges));
  } catch (const Error& e) {
    throw Error(ErrorCode::kIntegrity, e.what());
  }
  return g;
}

EggGraph parse_graph(std::string_view text) {
  EggGraph g = parse_graph_unchecked(text);
  if (auto report = validate(g); !report.ok()) {
    const auto& v = report.violations.front();
    throw Error(ErrorCode::kIntegrity, v.rule + " at " + v.id + ": " + v.message +
                                           (report.violations.size() > 1
                                                ? " (+" + std::to_string(report.violations.size() - 1) + " more)"
                                                : ""));
  }
  return g;
}

std::size_t ApproxTokenizer::count(std::string_view text) const {
  std::size_t tokens = 0;
  bool in_run = false;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      in_run = false;
    } else if (is_structural(c)) {
      ++tokens;
      in_run = false;
    } else if (!in_run) {
      ++tokens;
      in_run = true;
    }
  }
  return tokens;
}

std::size_t count_tokens(std::string_view text) { return ApproxTokenizer{}.count(text); }

double compression_ratio(const EggGraph& full, const Subgraph& sub, const Tokenizer& tokenizer) {
  const auto full_tokens = tokenizer.count(serialize(full));
  if (full_tokens == 0) return 0.0;
  const auto sub_tokens = tokenizer.count(serialize(sub));
  return 1.0 - static_cast<double>(sub_tokens) / static_cast<double>(full_tokens);
}

}  // namespace egg
