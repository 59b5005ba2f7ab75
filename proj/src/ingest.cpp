#include "egg/ingest.hpp"

#include <algorithm>

#include "egg/error.hpp"
#include "json_util.hpp"

namespace egg {

using detail::json;
using detail::ObjectReader;
using detail::ordered_json;

namespace {

std::string index_path(const std::string& base, std::size_t i) { return base + "[" + std::to_string(i) + "]"; }

AttributeSnapshot read_snapshot(const json& j, const std::string& path) {
  ObjectReader r(j, path);
  AttributeSnapshot s;
  s.time = {r.integer("time")};
  s.position = r.position("position");
  s.state = r.optional_string("state");
  r.finish();
  return s;
}

ordered_json write_snapshot(const AttributeSnapshot& s) {
  ordered_json j;
  j["time"] = s.time.micros;
  j["position"] = detail::write_position(s.position);
  if (s.state) j["state"] = *s.state;
  return j;
}

ordered_json write_interval(const TimeInterval& t) {
  ordered_json j;
  j["start"] = t.start.micros;
  j["end"] = t.end.micros;
  return j;
}

EventRecord read_record(const json& j, const std::string& path) {
  ObjectReader r(j, path);
  EventRecord rec;
  rec.event_id = r.id("event_id");
  rec.interval = r.interval("interval");
  if (!rec.interval.valid()) detail::schema_error(r.path("interval"), "start must be >= 0 and <= end");
  rec.summary = r.string("summary");
  const auto& cams = detail::expect_array(r.required("camera_positions"), r.path("camera_positions"));
  if (cams.empty()) detail::schema_error(r.path("camera_positions"), "must not be empty");
  for (std::size_t i = 0; i < cams.size(); ++i)
    rec.camera_positions.push_back(detail::read_position(cams[i], index_path(r.path("camera_positions"), i)));
  const auto& grs = detail::expect_array(r.required("groundings"), r.path("groundings"));
  for (std::size_t i = 0; i < grs.size(); ++i) {
    const auto gpath = index_path(r.path("groundings"), i);
    ObjectReader gr(grs[i], gpath);
    GroundingRecord g;
    g.spatial_id = gr.id("spatial_id");
    g.description = gr.string("description");
    g.first = read_snapshot(gr.required("first"), gr.path("first"));
    g.last = read_snapshot(gr.required("last"), gr.path("last"));
    gr.finish();
    for (const auto* s : {&g.first, &g.last})
      if (!rec.interval.contains(s->time))
        detail::schema_error(gpath, "snapshot time " + std::to_string(s->time.micros) + " outside the event interval");
    rec.groundings.push_back(std::move(g));
  }
  if (const auto* hint = r.optional("room_hint")) rec.room_hint = detail::read_id(*hint, r.path("room_hint"));
  r.finish();
  return rec;
}

}  // namespace

SceneManifest parse_manifest(std::string_view text) {
  const json doc = detail::parse_json(text, "manifest");
  ObjectReader r(doc, "$");
  SceneManifest m;
  if (r.optional("horizon")) {
    m.horizon = r.interval("horizon");
    if (!m.horizon->valid()) detail::schema_error(r.path("horizon"), "start must be >= 0 and <= end");
  }
  const auto& rooms = detail::expect_array(r.required("rooms"), r.path("rooms"));
  for (std::size_t i = 0; i < rooms.size(); ++i) {
    ObjectReader rr(rooms[i], index_path(r.path("rooms"), i));
    m.rooms.push_back({rr.id("id"), rr.string("name"), rr.position("position")});
    rr.finish();
  }
  const auto& objects = detail::expect_array(r.required("objects"), r.path("objects"));
  for (std::size_t i = 0; i < objects.size(); ++i) {
    ObjectReader orr(objects[i], index_path(r.path("objects"), i));
    ObjectEntry o;
    o.id = orr.id("id");
    o.name = orr.string("name");
    o.semantic_class = orr.string("semantic_class");
    o.caption = orr.string("caption");
    o.initial_room = orr.id("initial_room");
    if (const auto* tr = orr.optional("room_transitions")) {
      detail::expect_array(*tr, orr.path("room_transitions"));
      for (std::size_t k = 0; k < tr->size(); ++k) {
        ObjectReader trr((*tr)[k], index_path(orr.path("room_transitions"), k));
        RoomTransition t{trr.id("room_id"), trr.interval("interval")};
        if (!t.interval.valid()) detail::schema_error(trr.path("interval"), "start must be >= 0 and <= end");
        trr.finish();
        o.room_transitions.push_back(std::move(t));
      }
    }
    orr.finish();
    m.objects.push_back(std::move(o));
  }
  r.finish();
  return m;
}

std::string write_manifest(const SceneManifest& m) {
  ordered_json doc;
  if (m.horizon) doc["horizon"] = write_interval(*m.horizon);
  doc["rooms"] = ordered_json::array();
  for (const auto& room : m.rooms) {
    ordered_json j;
    j["id"] = room.id.str();
    j["name"] = room.name;
    j["position"] = detail::write_position(room.position);
    doc["rooms"].push_back(std::move(j));
  }
  doc["objects"] = ordered_json::array();
  for (const auto& o : m.objects) {
    ordered_json j;
    j["id"] = o.id.str();
    j["name"] = o.name;
    j["semantic_class"] = o.semantic_class;
    j["caption"] = o.caption;
    j["initial_room"] = o.initial_room.str();
    j["room_transitions"] = ordered_json::array();
    for (const auto& t : o.room_transitions) {
      ordered_json tj;
      tj["room_id"] = t.room_id.str();
      tj["interval"] = write_interval(t.interval);
      j["room_transitions"].push_back(std::move(tj));
    }
    doc["objects"].push_back(std::move(j));
  }
  return doc.dump(2) + "\n";
}

std::vector<EventRecord> parse_records(std::string_view jsonl) {
  std::vector<EventRecord> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= jsonl.size()) {
    const auto nl = jsonl.find('\n', pos);
    const auto line = jsonl.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    ++line_no;
    pos = nl == std::string_view::npos ? jsonl.size() + 1 : nl + 1;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    const auto where = "records line " + std::to_string(line_no);
    out.push_back(read_record(detail::parse_json(line, where), where));
  }
  return out;
}

std::string write_records(const std::vector<EventRecord>& records) {
  std::string out;
  for (const auto& rec : records) {
    ordered_json j;
    j["event_id"] = rec.event_id.str();
    j["interval"] = write_interval(rec.interval);
    j["summary"] = rec.summary;
    j["camera_positions"] = ordered_json::array();
    for (const auto& p : rec.camera_positions) j["camera_positions"].push_back(detail::write_position(p));
    j["groundings"] = ordered_json::array();
    for (const auto& g : rec.groundings) {
      ordered_json gj;
      gj["spatial_id"] = g.spatial_id.str();
      gj["description"] = g.description;
      gj["first"] = write_snapshot(g.first);
      gj["last"] = write_snapshot(g.last);
      j["groundings"].push_back(std::move(gj));
    }
    if (rec.room_hint) j["room_hint"] = rec.room_hint->str();
    out += j.dump();
    out += '\n';
  }
  return out;
}

Position3 mean_position(const std::vector<Position3>& positions) {
  if (positions.empty()) throw Error(ErrorCode::kSchema, "camera_positions must not be empty");
  Position3 sum;
  for (const auto& p : positions) {
    sum.x += p.x;
    sum.y += p.y;
    sum.z += p.z;
  }
  const auto n = static_cast<double>(positions.size());
  return {sum.x / n, sum.y / n, sum.z / n};
}

EggGraph ingest(const SceneManifest& manifest, const std::vector<EventRecord>& records) {
  TimeInterval horizon{};
  if (manifest.horizon) {
    horizon = *manifest.horizon;
  } else {
    std::optional<TimeInterval> h;
    auto grow = [&h](const TimeInterval& t) { h = h ? hull(*h, t) : t; };
    for (const auto& o : manifest.objects)
      for (const auto& t : o.room_transitions) grow(t.interval);
    for (const auto& r : records) grow(r.interval);
    horizon = h.value_or(TimeInterval{});
  }

  GraphBuilder b;
  IdSet rooms;
  for (const auto& room : manifest.rooms) {
    SpatialNode n;
    n.id = room.id;
    n.layer = Layer::kRoom;
    n.name = room.name;
    n.semantic_class = "room";
    n.static_position = room.position;
    b.add_spatial_node(std::move(n));
    rooms.insert(room.id);
  }
  for (const auto& o : manifest.objects) {
    SpatialNode n;
    n.id = o.id;
    n.layer = Layer::kObject;
    n.name = o.name;
    n.semantic_class = o.semantic_class;
    n.caption = o.caption;
    b.add_spatial_node(std::move(n));
  }
  for (const auto& o : manifest.objects) {
    auto transitions = o.room_transitions;
    std::sort(transitions.begin(), transitions.end(),
              [](const RoomTransition& a, const RoomTransition& c) { return a.interval < c.interval; });
    if (!rooms.contains(o.initial_room))
      throw Error(ErrorCode::kUnknownLocationId,
                  "object '" + o.id.str() + "' placed in unknown room '" + o.initial_room.str() + "'");
    const Timestamp first_move = transitions.empty() ? horizon.end : transitions.front().interval.start;
    if (transitions.empty() || horizon.start < first_move)
      b.add_spatial_edge({o.initial_room, o.id, {horizon.start, std::max(horizon.start, first_move)}});
    for (const auto& t : transitions) {
      if (!rooms.contains(t.room_id))
        throw Error(ErrorCode::kUnknownLocationId, "object '" + o.id.str() + "' moves to unknown room '" + t.room_id.str() + "'");
      b.add_spatial_edge({t.room_id, o.id, t.interval});
    }
  }

  std::vector<const EventRecord*> ordered;
  for (const auto& r : records) ordered.push_back(&r);
  std::sort(ordered.begin(), ordered.end(), [](const EventRecord* a, const EventRecord* c) {
    if (a->interval != c->interval) return a->interval < c->interval;
    return a->event_id < c->event_id;
  });
  for (const auto* r : ordered) {
    if (r->room_hint && !rooms.contains(*r->room_hint))
      throw Error(ErrorCode::kUnknownLocationId, "event '" + r->event_id.str() + "' hints unknown room '" + r->room_hint->str() + "'");
    std::vector<Grounding> groundings;
    for (const auto& g : r->groundings) groundings.push_back({g.spatial_id, g.description, g.first, g.last});
    b.ground_event({r->event_id, r->interval, r->summary, mean_position(r->camera_positions)}, groundings);
  }
  return std::move(b).build();
}

}  // namespace egg
