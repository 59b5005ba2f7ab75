#include "egg/synthgen.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include <fmt/format.h>

#include "egg/error.hpp"
#include "egg/text_match.hpp"

namespace egg {

namespace {

constexpr std::int64_t kSecond = 1'000'000;
constexpr std::int64_t kDefaultStart = 1756540800LL * kSecond;  // 2025-08-30T08:00:00Z
constexpr std::int64_t kDefaultSlot = 20 * 60 * kSecond;

// Portable draws from raw mt19937_64 output; the std distributions differ across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  std::size_t below(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(next() % n); }
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  template <class T>
  const T& pick(const std::vector<T>& v) { return v[below(v.size())]; }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

struct ClassSpec {
  std::string_view name;
  std::vector<std::string_view> materials;
};

const std::vector<ClassSpec>& classes() {
  static const std::vector<ClassSpec> kClasses = {
      {"mug", {"ceramic", "enamel", "stoneware", "porcelain"}},
      {"kettle", {"steel", "glass", "plastic"}},
      {"lamp", {"brass", "paper", "metal"}},
      {"laptop", {"aluminium", "plastic"}},
      {"book", {"hardcover", "paperback"}},
      {"notebook", {"spiral", "leather"}},
      {"phone", {"glass", "plastic"}},
      {"tablet", {"slim", "rugged"}},
      {"bottle", {"plastic", "glass", "steel"}},
      {"bowl", {"ceramic", "wooden", "glass"}},
      {"plate", {"ceramic", "porcelain"}},
      {"vase", {"glass", "ceramic"}},
      {"backpack", {"canvas", "nylon"}},
      {"clock", {"wooden", "metal"}},
  };
  return kClasses;
}

constexpr std::string_view kColors[] = {"red",    "blue",   "green", "yellow", "black", "white",
                                        "orange", "purple", "grey",  "pink",   "brown", "silver"};
constexpr std::string_view kFeatures[] = {"with a chipped rim",   "with a small sticker", "with a worn edge",
                                          "with a glossy finish", "with a faded logo",    "with a matte finish",
                                          "with a thin stripe",   "with a scratched surface"};
constexpr std::string_view kRoomNames[] = {"kitchen", "office",       "living room", "bedroom",
                                           "workshop", "hallway",     "garage",      "pantry",
                                           "library", "laundry room", "dining room", "studio"};
// Classes every scene starts with, so that coffee, toggling and disambiguation are possible.
constexpr std::string_view kLeadingClasses[] = {"mug", "mug", "kettle", "lamp", "laptop", "mug", "book"};

bool is_usable(std::string_view cls) {
  return cls == "laptop" || cls == "book" || cls == "notebook" || cls == "phone" || cls == "tablet";
}

struct WorldObject {
  NodeId id;
  std::string name;
  std::string cls;
  std::string caption;
  std::size_t room = 0;
  Position3 position;
  std::optional<std::string> state;
  std::size_t initial_room = 0;
  std::vector<std::pair<std::int64_t, std::size_t>> moves;  // (time, new room)
};

struct WorldEvent {
  EventTemplate kind;
  TimeInterval interval;
  std::size_t room = 0;  // room where the event happens (start room for moves)
  std::vector<std::size_t> objects;
  std::string summary;
  std::map<std::size_t, std::string> descriptions;
  bool switched_on = false;
};

struct World {
  std::vector<RoomEntry> rooms;
  std::vector<WorldObject> objects;
  std::vector<WorldEvent> events;
  TimeInterval horizon;
};

Position3 spot_in(const RoomEntry& room, Rng& rng) {
  return {room.position.x + 0.5 * static_cast<double>(rng.range(2, 16)),
          room.position.y + 0.5 * static_cast<double>(rng.range(2, 16)), 0.9};
}

World build_world(const GenParams& p, Rng& rng) {
  World w;
  for (std::size_t i = 0; i < p.n_rooms; ++i) {
    const std::string name =
        i < std::size(kRoomNames) ? std::string(kRoomNames[i]) : fmt::format("storage room {}", i + 1);
    w.rooms.push_back({NodeId(fmt::format("room_{}", i + 1)), name, {10.0 * static_cast<double>(i), 0.0, 0.0}});
  }

  std::map<std::string, std::set<std::string_view>> used_colors;
  for (std::size_t i = 0; i < p.n_objects; ++i) {
    const ClassSpec* spec = nullptr;
    if (i < std::size(kLeadingClasses)) {
      for (const auto& c : classes())
        if (c.name == kLeadingClasses[i]) spec = &c;
    } else {
      std::vector<const ClassSpec*> open;
      for (const auto& c : classes())
        if (used_colors[std::string(c.name)].size() < std::size(kColors)) open.push_back(&c);
      if (open.empty()) throw Error(ErrorCode::kInfeasibleParams, "too many objects for the name pool");
      spec = rng.pick(open);
    }
    auto& taken = used_colors[std::string(spec->name)];
    std::vector<std::string_view> free;
    for (auto c : kColors)
      if (!taken.contains(c)) free.push_back(c);
    const auto color = rng.pick(free);
    taken.insert(color);

    WorldObject o;
    o.id = NodeId(fmt::format("object_{}", i + 1));
    o.cls = std::string(spec->name);
    o.name = fmt::format("{} {}", color, spec->name);
    o.caption = fmt::format("{} {} {} {}", color, rng.pick(spec->materials), spec->name,
                            kFeatures[rng.below(std::size(kFeatures))]);
    // The first mug and kettle share the first room so coffee can be made from the start.
    o.room = (i == 0 || i == 2) ? 0 : rng.below(p.n_rooms);
    o.initial_room = o.room;
    o.position = spot_in(w.rooms[o.room], rng);
    if (o.cls == "lamp") o.state = "off";
    w.objects.push_back(std::move(o));
  }
  return w;
}

std::vector<std::size_t> objects_where(const World& w, auto pred) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < w.objects.size(); ++i)
    if (pred(w.objects[i])) out.push_back(i);
  return out;
}

// Rooms holding at least one mug and one kettle.
std::vector<std::size_t> coffee_rooms(const World& w) {
  std::vector<std::size_t> out;
  for (std::size_t r = 0; r < w.rooms.size(); ++r) {
    bool mug = false;
    bool kettle = false;
    for (const auto& o : w.objects) {
      mug |= o.room == r && o.cls == "mug";
      kettle |= o.room == r && o.cls == "kettle";
    }
    if (mug && kettle) out.push_back(r);
  }
  return out;
}

bool feasible(const World& w, EventTemplate t) {
  switch (t) {
    case EventTemplate::kMakeCoffee: return !coffee_rooms(w).empty();
    case EventTemplate::kMoveObject: return w.rooms.size() >= 2 && !w.objects.empty();
    case EventTemplate::kUseObject:
      return !objects_where(w, [](const WorldObject& o) { return is_usable(o.cls); }).empty();
    case EventTemplate::kToggleState:
      return !objects_where(w, [](const WorldObject& o) { return o.cls == "lamp"; }).empty();
  }
  return false;
}

void simulate_events(World& w, const GenParams& p, Rng& rng) {
  if (p.n_events == 0) return;
  std::set<EventTemplate> enabled(p.templates.begin(), p.templates.end());
  const std::int64_t slot = (w.horizon.end.micros - w.horizon.start.micros) / static_cast<std::int64_t>(p.n_events);
  if (slot < 40) throw Error(ErrorCode::kInfeasibleParams, "horizon too short for the number of events");

  for (std::size_t k = 0; k < p.n_events; ++k) {
    std::vector<EventTemplate> options;
    for (auto t : enabled)
      if (feasible(w, t)) options.push_back(t);
    if (options.empty())
      throw Error(ErrorCode::kInfeasibleParams, fmt::format("no enabled template can produce event {}", k + 1));

    const std::int64_t slot_start = w.horizon.start.micros + static_cast<std::int64_t>(k) * slot;
    const std::int64_t duration = rng.range(slot / 10, slot / 2);
    const std::int64_t start = slot_start + rng.range(slot / 20, slot - duration - slot / 20);
    WorldEvent ev;
    ev.kind = rng.pick(options);
    ev.interval = {{start}, {start + duration}};

    switch (ev.kind) {
      case EventTemplate::kMakeCoffee: {
        ev.room = rng.pick(coffee_rooms(w));
        const auto mug = rng.pick(objects_where(w, [&](const WorldObject& o) { return o.room == ev.room && o.cls == "mug"; }));
        const auto kettle =
            rng.pick(objects_where(w, [&](const WorldObject& o) { return o.room == ev.room && o.cls == "kettle"; }));
        ev.objects = {mug, kettle};
        ev.descriptions[mug] = fmt::format("person pours fresh coffee into the {}", w.objects[mug].name);
        ev.descriptions[kettle] = fmt::format("person heats water in the {}", w.objects[kettle].name);
        ev.summary = "person makes coffee";
        break;
      }
      case EventTemplate::kMoveObject: {
        const auto obj = rng.below(w.objects.size());
        auto& o = w.objects[obj];
        std::size_t to = rng.below(w.rooms.size() - 1);
        if (to >= o.room) ++to;
        ev.room = o.room;
        ev.objects = {obj};
        ev.descriptions[obj] =
            fmt::format("person carries the {} from the {} to the {}", o.name, w.rooms[o.room].name, w.rooms[to].name);
        ev.summary = fmt::format("person carries the {} to the {}", o.name, w.rooms[to].name);
        o.moves.emplace_back(ev.interval.end.micros, to);
        o.room = to;
        break;
      }
      case EventTemplate::kUseObject: {
        const auto obj = rng.pick(objects_where(w, [](const WorldObject& o) { return is_usable(o.cls); }));
        ev.room = w.objects[obj].room;
        ev.objects = {obj};
        ev.descriptions[obj] = fmt::format("person works with the {}", w.objects[obj].name);
        ev.summary = ev.descriptions[obj];
        break;
      }
      case EventTemplate::kToggleState: {
        const auto obj = rng.pick(objects_where(w, [](const WorldObject& o) { return o.cls == "lamp"; }));
        ev.room = w.objects[obj].room;
        ev.objects = {obj};
        ev.switched_on = w.objects[obj].state == "off";
        ev.descriptions[obj] = fmt::format("person switches {} the {}", ev.switched_on ? "on" : "off", w.objects[obj].name);
        ev.summary = ev.descriptions[obj];
        w.objects[obj].state = ev.switched_on ? "on" : "off";
        break;
      }
    }
    w.events.push_back(std::move(ev));
  }
}

std::string drop_words(const std::string& text, double p, Rng& rng) {
  if (p <= 0.0) return text;
  const auto ws = words(text);
  std::vector<std::string> kept;
  for (const auto& word : ws)
    if (rng.unit() >= p) kept.push_back(word);
  if (kept.empty() && !ws.empty()) kept.push_back(ws[rng.below(ws.size())]);
  std::string out;
  for (const auto& word : kept) out += (out.empty() ? "" : " ") + word;
  return out;
}

// Replays the event list to emit records, tracking positions, states and rooms over time.
std::vector<EventRecord> emit_records(World& w, const GenParams& p) {
  Rng dropout(p.seed ^ 0xd1b54a32d192ed03ULL);
  Rng place(p.seed ^ 0x8cb92ba72f3d8dd7ULL);
  for (auto& o : w.objects) {
    o.room = o.initial_room;
    if (o.cls == "lamp") o.state = "off";
  }
  std::map<std::size_t, std::size_t> next_move;  // object -> index into its move list

  std::vector<EventRecord> out;
  for (std::size_t k = 0; k < w.events.size(); ++k) {
    const auto& ev = w.events[k];
    EventRecord r;
    r.event_id = NodeId(fmt::format("event_{}", k + 1));
    r.interval = ev.interval;
    r.room_hint = w.rooms[ev.room].id;
    const auto& cam = w.rooms[ev.room].position;
    r.camera_positions = {{cam.x + 1.0, cam.y, 1.2}, {cam.x + 2.0, cam.y + 1.0, 1.2}};

    for (auto idx : ev.objects) {
      auto& o = w.objects[idx];
      GroundingRecord g;
      g.spatial_id = o.id;
      g.description = drop_words(ev.descriptions.at(idx), p.word_dropout, dropout);
      g.first = {ev.interval.start, o.position, o.state};
      if (ev.kind == EventTemplate::kMoveObject) {
        const auto to = o.moves[next_move[idx]++].second;
        const auto& dest = w.rooms[to].position;
        r.camera_positions.push_back({dest.x + 1.0, dest.y, 1.2});
        o.room = to;
        o.position = spot_in(w.rooms[to], place);
      } else if (ev.kind == EventTemplate::kToggleState) {
        o.state = ev.switched_on ? "on" : "off";
      }
      g.last = {ev.interval.end, o.position, o.state};
      r.groundings.push_back(std::move(g));
    }
    r.summary = drop_words(ev.summary, p.word_dropout, dropout);
    out.push_back(std::move(r));
  }
  return out;
}

SceneManifest emit_manifest(const World& w) {
  SceneManifest m;
  m.horizon = w.horizon;
  m.rooms = w.rooms;
  for (const auto& o : w.objects) {
    ObjectEntry e;
    e.id = o.id;
    e.name = o.name;
    e.semantic_class = o.cls;
    e.caption = o.caption;
    e.initial_room = w.rooms[o.initial_room].id;
    for (std::size_t i = 0; i < o.moves.size(); ++i) {
      const auto end = i + 1 < o.moves.size() ? o.moves[i + 1].first : w.horizon.end.micros;
      e.room_transitions.push_back({w.rooms[o.moves[i].second].id, {{o.moves[i].first}, {end}}});
    }
    m.objects.push_back(std::move(e));
  }
  return m;
}

// ---------------------------------------------------------------------------
// Questions

struct Candidate {
  QueryRecord query;
  QuestionFacts facts;
};

// Facts about the simulated world that questions are answered from.
struct Ledger {
  std::map<std::size_t, std::vector<std::size_t>> events_of;  // object -> event indices, ascending
  std::map<std::size_t, std::size_t> coffee_uses;             // mug or kettle -> count
  std::set<std::size_t> carried;
  std::set<std::size_t> used;
  std::set<std::size_t> switched_on;
  IdSet coffee_room_ids;
  std::size_t final_room(const WorldObject& o) const { return o.moves.empty() ? o.initial_room : o.moves.back().second; }
};

Ledger tally(const World& w) {
  Ledger l;
  for (std::size_t k = 0; k < w.events.size(); ++k) {
    const auto& ev = w.events[k];
    for (auto idx : ev.objects) l.events_of[idx].push_back(k);
    switch (ev.kind) {
      case EventTemplate::kMakeCoffee:
        for (auto idx : ev.objects) ++l.coffee_uses[idx];
        l.coffee_room_ids.insert(w.rooms[ev.room].id);
        break;
      case EventTemplate::kMoveObject: l.carried.insert(ev.objects.front()); break;
      case EventTemplate::kUseObject: l.used.insert(ev.objects.front()); break;
      case EventTemplate::kToggleState:
        if (ev.switched_on) l.switched_on.insert(ev.objects.front());
        break;
    }
  }
  return l;
}

Candidate make(std::string question, Modality m, AnswerPayload gold, std::vector<std::string> tags, std::string kind,
               std::optional<NodeId> subject = std::nullopt, std::optional<NodeId> room = std::nullopt,
               std::optional<std::string> cls = std::nullopt) {
  Candidate c;
  c.query.question = std::move(question);
  c.query.modality = m;
  c.query.gold = std::move(gold);
  c.query.tags = std::move(tags);
  c.facts = {std::move(kind), std::move(subject), std::move(room), std::move(cls)};
  return c;
}

const std::vector<std::string> kEventDependent = {"event-dependent"};
const std::vector<std::string> kInstance = {"instance-disambiguation"};

std::vector<Candidate> text_pool(const World& w, const Ledger& l, const std::vector<std::size_t>& subjects) {
  std::vector<Candidate> pool;
  for (std::string_view cls : {"mug", "kettle"}) {
    std::optional<std::size_t> best;
    for (const auto& [idx, n] : l.coffee_uses)
      if (w.objects[idx].cls == cls && (!best || n > l.coffee_uses.at(*best))) best = idx;
    if (!best) continue;
    pool.push_back(make(fmt::format("Describe the {} the person most frequently makes coffee with.", cls),
                        Modality::kText, w.objects[*best].caption, kInstance, "most-frequent-coffee", std::nullopt,
                        std::nullopt, std::string(cls)));
  }
  for (auto idx : subjects) {
    const auto& o = w.objects[idx];
    pool.push_back(make(fmt::format("Describe the {}.", o.name), Modality::kText, o.caption, {}, "caption", o.id));
  }
  for (const auto& [idx, evs] : l.events_of) {
    const auto& o = w.objects[idx];
    pool.push_back(make(fmt::format("What happened to the {}?", o.name), Modality::kText,
                        w.events[evs.back()].descriptions.at(idx), kEventDependent, "latest-description", o.id));
  }
  return pool;
}

std::vector<Candidate> binary_pool(const World& w, const Ledger& l, const std::vector<std::size_t>& subjects, Rng& rng) {
  std::vector<Candidate> pool;
  const bool any_events = !w.events.empty();
  for (std::size_t idx = 0; idx < w.objects.size() && any_events; ++idx) {
    const auto& o = w.objects[idx];
    if (o.cls != "mug") continue;
    const bool used = l.coffee_uses.contains(idx);
    pool.push_back(make(fmt::format("Was the {} ever used to make coffee?", o.name), Modality::kBinary, used,
                        used ? std::vector<std::string>{"event-dependent", "instance-disambiguation"}
                             : std::vector<std::string>{},
                        "coffee-mug", o.id));
  }
  for (std::size_t idx = 0; idx < w.objects.size() && any_events && w.rooms.size() >= 2; ++idx) {
    const auto& o = w.objects[idx];
    const bool carried = l.carried.contains(idx);
    pool.push_back(make(fmt::format("Did the person ever carry the {}?", o.name), Modality::kBinary, carried,
                        carried ? kEventDependent : std::vector<std::string>{}, "carried", o.id));
  }
  for (std::size_t idx = 0; idx < w.objects.size() && any_events; ++idx) {
    const auto& o = w.objects[idx];
    if (o.cls != "lamp") continue;
    const bool on = l.switched_on.contains(idx);
    pool.push_back(make(fmt::format("Did the person ever switch on the {}?", o.name), Modality::kBinary, on,
                        on ? kEventDependent : std::vector<std::string>{}, "switched-on", o.id));
  }
  for (auto idx : subjects) {
    const auto& o = w.objects[idx];
    const auto& room = w.rooms[rng.below(w.rooms.size())];
    pool.push_back(make(fmt::format("Is the {} in the {} now?", o.name, room.name), Modality::kBinary,
                        w.rooms[l.final_room(o)].id == room.id, {}, "object-room-now", o.id, room.id));
  }
  return pool;
}

std::vector<Candidate> node_pool(const World& w, const Ledger& l, const std::vector<std::size_t>& subjects) {
  std::vector<Candidate> pool;
  if (!l.coffee_room_ids.empty()) {
    pool.push_back(make("Where can I get some coffee?", Modality::kNode, l.coffee_room_ids, kEventDependent,
                        "coffee-rooms"));
    for (std::string_view cls : {"mug", "kettle"}) {
      IdSet used;
      for (const auto& [idx, n] : l.coffee_uses)
        if (w.objects[idx].cls == cls) used.insert(w.objects[idx].id);
      pool.push_back(make(fmt::format("Which {} was used to make coffee?", cls), Modality::kNode, used, kInstance,
                          "coffee-class", std::nullopt, std::nullopt, std::string(cls)));
    }
    for (const auto& [idx, n] : l.coffee_uses) {
      const auto& o = w.objects[idx];
      if (o.cls != "mug") continue;
      IdSet rooms;
      for (auto k : l.events_of.at(idx))
        if (w.events[k].kind == EventTemplate::kMakeCoffee) rooms.insert(w.rooms[w.events[k].room].id);
      pool.push_back(make(fmt::format("Where did the person make coffee with the {}?", o.name), Modality::kNode, rooms,
                          {}, "coffee-rooms-of", o.id));
    }
  }
  for (auto idx : subjects) {
    const auto& o = w.objects[idx];
    pool.push_back(make(fmt::format("Where can I find the {}?", o.name), Modality::kNode,
                        IdSet{w.rooms[l.final_room(o)].id}, {}, "object-room", o.id));
  }
  auto by_class = [&](const std::set<std::size_t>& members, const char* question, const char* kind) {
    std::map<std::string, IdSet> groups;
    for (auto idx : members) groups[w.objects[idx].cls].insert(w.objects[idx].id);
    for (const auto& [cls, ids] : groups)
      pool.push_back(make(fmt::format(fmt::runtime(question), cls), Modality::kNode, ids, {}, kind, std::nullopt,
                          std::nullopt, cls));
  };
  by_class(l.switched_on, "Which {} did the person switch on?", "switched-class");
  by_class(l.carried, "Which {} did the person carry?", "carried-class");
  by_class(l.used, "Which {} did the person work with?", "used-class");
  return pool;
}

std::vector<Candidate> time_pool(const World& w, const Ledger& l) {
  std::vector<Candidate> pool;
  auto interval = [&](std::size_t k) { return AnswerPayload{TimeValue{w.events[k].interval}}; };
  for (std::size_t k = 0; k < w.events.size(); ++k) {
    if (w.events[k].kind != EventTemplate::kMakeCoffee) continue;
    pool.push_back(make("What is the earliest time the person was seen making coffee?", Modality::kTime, interval(k),
                        kEventDependent, "first-coffee"));
    break;
  }
  for (const auto& [idx, evs] : l.events_of) {
    const auto& o = w.objects[idx];
    std::vector<std::size_t> uses, carries, toggles;
    for (auto k : evs) {
      if (w.events[k].kind == EventTemplate::kUseObject) uses.push_back(k);
      if (w.events[k].kind == EventTemplate::kMoveObject) carries.push_back(k);
      if (w.events[k].kind == EventTemplate::kToggleState) toggles.push_back(k);
    }
    if (!uses.empty())
      pool.push_back(make(fmt::format("When did the person first work with the {}?", o.name), Modality::kTime,
                          interval(uses.front()), kEventDependent, "first-use", o.id));
    if (!carries.empty())
      pool.push_back(make(fmt::format("When did the person last carry the {}?", o.name), Modality::kTime,
                          interval(carries.back()), kEventDependent, "last-carry", o.id));
    if (!toggles.empty())
      pool.push_back(make(fmt::format("When did the person last switch the {} on or off?", o.name), Modality::kTime,
                          interval(toggles.back()), kEventDependent, "last-toggle", o.id));
  }
  return pool;
}

}  // namespace

std::string_view to_string(EventTemplate t) {
  switch (t) {
    case EventTemplate::kMakeCoffee: return "make-coffee";
    case EventTemplate::kMoveObject: return "move-object";
    case EventTemplate::kUseObject: return "use-object";
    case EventTemplate::kToggleState: return "toggle-state";
  }
  return "make-coffee";
}

std::optional<EventTemplate> parse_event_template(std::string_view text) {
  for (auto t : {EventTemplate::kMakeCoffee, EventTemplate::kMoveObject, EventTemplate::kUseObject,
                 EventTemplate::kToggleState})
    if (to_string(t) == text) return t;
  return std::nullopt;
}

SynthData generate(const GenParams& p) {
  if (p.n_events > 0 && p.templates.empty())
    throw Error(ErrorCode::kInfeasibleParams, "events requested but no event templates enabled");
  if (p.n_objects > 0 && p.n_rooms == 0) throw Error(ErrorCode::kInfeasibleParams, "objects need at least one room");
  if (!(p.word_dropout >= 0.0 && p.word_dropout < 1.0))
    throw Error(ErrorCode::kInfeasibleParams, "word dropout must lie in [0, 1)");
  if (p.horizon && !p.horizon->valid()) throw Error(ErrorCode::kInfeasibleParams, "horizon must satisfy 0 <= start <= end");

  Rng rng(p.seed);
  World w = build_world(p, rng);
  w.horizon = p.horizon.value_or(TimeInterval{
      {kDefaultStart}, {kDefaultStart + kDefaultSlot * static_cast<std::int64_t>(std::max<std::size_t>(p.n_events, 1))}});
  simulate_events(w, p, rng);

  SynthData out;
  out.records = emit_records(w, p);
  out.manifest = emit_manifest(w);

  const Ledger ledger = tally(w);
  // Without events every object is fair game; otherwise static questions stick to objects
  // that took part in an event, since time pruning keeps only event-grounded elements.
  std::vector<std::size_t> subjects;
  for (std::size_t i = 0; i < w.objects.size(); ++i)
    if (w.events.empty() || ledger.events_of.contains(i)) subjects.push_back(i);

  Rng qrng(p.seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<std::pair<std::vector<Candidate>, std::size_t>> pools;
  pools.emplace_back(text_pool(w, ledger, subjects), p.questions.text);
  pools.emplace_back(binary_pool(w, ledger, subjects, qrng), p.questions.binary);
  pools.emplace_back(node_pool(w, ledger, subjects), p.questions.node);
  pools.emplace_back(time_pool(w, ledger), p.questions.time);

  std::size_t n = 0;
  for (auto& [pool, want] : pools) {
    qrng.shuffle(pool);
    pool.resize(std::min(pool.size(), want));
    for (auto& c : pool) {
      c.query.id = fmt::format("q{:03}", ++n);
      out.queries.push_back(std::move(c.query));
      out.facts.push_back(std::move(c.facts));
    }
  }
  return out;
}

}  // namespace egg
