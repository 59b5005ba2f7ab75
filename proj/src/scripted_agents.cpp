#include <algorithm>
#include <map>

#include "egg/agents.hpp"
#include "egg/error.hpp"
#include "egg/serialization.hpp"
#include "egg/text_match.hpp"

namespace egg {

namespace {

// The context graph plus the parts of the question it resolves.
struct Context {
  EggGraph g;
  QueryAnalysis q;
  IdSet events;  // events whose summary matches the question
  std::map<NodeId, IdSet> grounded;  // event -> spatial nodes it grounds

  bool grounds_any(const NodeId& event, const IdSet& targets) const {
    auto it = grounded.find(event);
    if (it == grounded.end()) return false;
    return std::any_of(it->second.begin(), it->second.end(), [&](const NodeId& id) { return targets.contains(id); });
  }

  // Matched events, narrowed to those grounding a target when the question names objects.
  std::vector<const EventNode*> relevant_events() const {
    std::vector<const EventNode*> out;
    for (const auto& id : events)
      if (q.objects.empty() || grounds_any(id, q.objects)) out.push_back(g.find_event(id));
    return out;
  }

  // Room of the object's most recent containment edge.
  std::optional<NodeId> current_room(const NodeId& object) const {
    const SpatialEdge* best = nullptr;
    for (const auto& e : g.spatial_edges())
      if (e.child == object && (!best || std::pair(e.interval.end, e.interval.start) >
                                             std::pair(best->interval.end, best->interval.start)))
        best = &e;
    return best ? std::optional(best->parent) : std::nullopt;
  }
};

Context load(const QueryRecord& query, std::string_view context) {
  Context c;
  try {
    c.g = parse_graph(context);
  } catch (const Error& e) {
    throw Error(ErrorCode::kGenerationFailed, std::string("context is not a graph: ") + e.what());
  }
  c.q = analyze_query(query.question, rooms_of(c.g), objects_of(c.g));
  c.events = match_events(c.q, c.g);
  for (const auto& e : c.g.event_edges()) c.grounded[e.event].insert(e.spatial);
  return c;
}

bool asks_latest(const QueryAnalysis& q) {
  return q.has_word("last") || q.has_word("latest") || q.has_word("recently") || q.has_word("recent");
}

std::string rationale(const Context& c) {
  std::string out = "events:";
  for (const auto& id : c.events) out += " " + id.str();
  out += "; objects:";
  for (const auto& id : c.q.objects) out += " " + id.str();
  return out;
}

Answer answer_binary(const Context& c) {
  Answer a{Modality::kBinary, false, false, rationale(c)};
  if (c.q.objects.empty()) return a;
  if (!c.events.empty()) {
    a.payload = std::any_of(c.events.begin(), c.events.end(), [&](const NodeId& e) { return c.grounds_any(e, c.q.objects); });
  } else if (!c.q.rooms.empty()) {
    a.payload = std::any_of(c.q.objects.begin(), c.q.objects.end(), [&](const NodeId& o) {
      auto room = c.current_room(o);
      return room && c.q.rooms.contains(*room);
    });
  }
  return a;
}

Answer answer_node(const Context& c) {
  Answer a{Modality::kNode, IdSet{}, false, rationale(c)};
  IdSet out;
  if (c.q.has_word("where")) {
    if (!c.events.empty()) {
      // Rooms that held the involved objects when each matched event began.
      for (const auto& id : c.events) {
        const auto* ev = c.g.find_event(id);
        auto it = c.grounded.find(id);
        if (it == c.grounded.end()) continue;
        for (const auto& s : it->second) {
          if (!c.q.objects.empty() && !c.q.objects.contains(s)) continue;
          if (c.g.find_spatial(s)->layer == Layer::kRoom) {
            out.insert(s);
          } else if (auto room = containing_room(c.g, s, ev->interval.start)) {
            out.insert(*room);
          }
        }
      }
    } else {
      for (const auto& o : c.q.objects)
        if (auto room = c.current_room(o)) out.insert(*room);
    }
  } else if (!c.events.empty()) {
    for (const auto& id : c.events) {
      auto it = c.grounded.find(id);
      if (it == c.grounded.end()) continue;
      for (const auto& s : it->second)
        if (c.g.find_spatial(s)->layer == Layer::kObject && (c.q.objects.empty() || c.q.objects.contains(s)))
          out.insert(s);
    }
  } else if (!c.q.rooms.empty()) {
    for (const auto& o : c.g.object_ids()) {
      auto room = c.current_room(o);
      if (room && c.q.rooms.contains(*room)) out.insert(o);
    }
  } else {
    out = c.q.objects;
  }
  a.payload = std::move(out);
  return a;
}

Answer answer_time(const Context& c) {
  auto events = c.relevant_events();
  if (events.empty()) return abstain(Modality::kTime);
  auto key = [](const EventNode* e) { return std::tuple(e->interval.start, e->interval.end, e->id); };
  const EventNode* pick = asks_latest(c.q)
                              ? *std::max_element(events.begin(), events.end(), [&](auto* x, auto* y) { return key(x) < key(y); })
                              : *std::min_element(events.begin(), events.end(), [&](auto* x, auto* y) { return key(x) < key(y); });
  return Answer{Modality::kTime, TimeValue{pick->interval}, false, "event: " + pick->id.str()};
}

Answer answer_text(const Context& c) {
  const auto& q = c.q;
  if (q.has_word("happened") || q.has_word("happen")) {
    // Latest description of what an event did to a named object.
    const EventEdge* best = nullptr;
    for (const auto& e : c.g.event_edges()) {
      if (!q.objects.empty() && !q.objects.contains(e.spatial)) continue;
      if (!c.events.empty() && !c.events.contains(e.event)) continue;
      if (!best || std::tuple(e.interval.start, e.event) > std::tuple(best->interval.start, best->event)) best = &e;
    }
    if (!best) return abstain(Modality::kText);
    return Answer{Modality::kText, best->description, false, "event: " + best->event.str()};
  }
  if (q.objects.empty()) return abstain(Modality::kText);
  NodeId pick = *q.objects.begin();
  if (q.has_word("frequently") || q.has_word("often")) {
    std::size_t best = 0;
    for (const auto& o : q.objects) {
      std::size_t n = 0;
      for (const auto& ev : c.events)
        if (c.grounds_any(ev, IdSet{o})) ++n;
      if (n > best) {
        best = n;
        pick = o;
      }
    }
  }
  const auto* node = c.g.find_spatial(pick);
  return Answer{Modality::kText, node->caption.value_or(node->name), false, "object: " + pick.str()};
}

}  // namespace

Extraction ScriptedExtractor::extract(const QueryRecord& query, const EggGraph& full, const PruneConfig& cfg) const {
  if (full.spatial_nodes().empty() && full.event_nodes().empty())
    throw Error(ErrorCode::kExtractionFailed, "graph is empty");
  Extraction out;
  out.info.time = full.horizon();

  const auto scope = analyze_query(query.question, rooms_of(full), {});
  out.info.locations = scope.rooms.empty() ? full.room_ids() : scope.rooms;

  const EggGraph g1 = prune_scope(full, *out.info.time, out.info.locations, cfg).materialize();
  const auto q = analyze_query(query.question, rooms_of(full), objects_of(g1));
  out.info.spatial = q.objects;
  out.info.events = match_events(q, g1);
  return out;
}

Answer ScriptedGenerator::generate(const QueryRecord& query, std::string_view context) const {
  const Context c = load(query, context);
  if (c.g.spatial_nodes().empty() && c.g.event_nodes().empty()) return abstain(query.modality);
  switch (query.modality) {
    case Modality::kBinary: return answer_binary(c);
    case Modality::kNode: return answer_node(c);
    case Modality::kTime: return answer_time(c);
    case Modality::kText: return answer_text(c);
  }
  return abstain(query.modality);
}

double ScriptedJudge::score(const QueryRecord& query, const AnswerPayload& gold, const Answer& predicted) const {
  if (!payload_matches(query.modality, gold) || !payload_matches(query.modality, predicted.payload)) return 0.0;
  if (query.modality == Modality::kText)
    return token_f1(std::get<std::string>(gold), std::get<std::string>(predicted.payload));
  return gold == predicted.payload ? 1.0 : 0.0;
}

Agents scripted_agents() {
  return Agents{std::make_shared<ScriptedExtractor>(), std::make_shared<ScriptedGenerator>(),
                std::make_shared<ScriptedJudge>()};
}

double jaccard(const IdSet& a, const IdSet& b) {
  if (a.empty() && b.empty()) return 1.0;
  std::size_t common = 0;
  for (const auto& id : a) common += b.contains(id) ? 1 : 0;
  return static_cast<double>(common) / static_cast<double>(a.size() + b.size() - common);
}

}  // namespace egg
