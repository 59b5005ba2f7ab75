#include "egg/text_match.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace egg {

namespace {

constexpr std::string_view kStopwords[] = {
    "a",        "about",  "an",     "and",       "any",    "are",      "at",       "be",       "been",
    "by",       "can",    "could",  "currently", "day",    "describe", "did",      "do",       "does",
    "during",   "earliest", "event", "ever",     "find",   "first",  "for",      "frequently", "from",   "get",
    "had",      "happen", "happened", "has",     "have",   "hour",     "how",      "i",        "in",
    "into",     "involving", "is",  "it",        "its",    "last",     "latest",   "me",       "most",
    "my",       "now",    "of",     "off",       "often",  "on",       "or",       "out",      "people",
    "person",   "recent", "recently", "saw",     "see",    "seen",     "some",     "someone",  "something",
    "that",     "the",    "there",  "this",      "time",   "to",       "up",       "use",      "used",
    "using",    "was",    "were",   "what",      "when",   "where",    "which",    "who",      "with",
    "you",
};

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

// Positions where `phrase` occurs in `ws` using only unconsumed words.
std::vector<std::size_t> find_phrase(const std::vector<std::string>& ws, const std::vector<bool>& consumed,
                                     const std::vector<std::string>& phrase, bool by_stem) {
  std::vector<std::size_t> hits;
  if (phrase.empty() || phrase.size() > ws.size()) return hits;
  for (std::size_t i = 0; i + phrase.size() <= ws.size(); ++i) {
    bool ok = true;
    for (std::size_t k = 0; k < phrase.size() && ok; ++k) {
      if (consumed[i + k]) ok = false;
      else if (by_stem) ok = stem(ws[i + k]) == stem(phrase[k]);
      else ok = ws[i + k] == phrase[k];
    }
    if (ok) hits.push_back(i);
  }
  return hits;
}

// Matches entity phrases longest-first, marking matched words consumed.
IdSet match_entities(const std::vector<std::string>& ws, std::vector<bool>& consumed,
                     const std::vector<NamedEntity>& entities, bool use_class) {
  std::map<std::vector<std::string>, IdSet> phrases;
  for (const auto& e : entities) {
    auto p = words(use_class ? e.semantic_class : e.name);
    if (!p.empty()) phrases[p].insert(e.id);
  }
  std::vector<const std::pair<const std::vector<std::string>, IdSet>*> order;
  for (const auto& kv : phrases) order.push_back(&kv);
  std::stable_sort(order.begin(), order.end(), [](auto* a, auto* b) { return a->first.size() > b->first.size(); });

  IdSet matched;
  for (const auto* kv : order) {
    const auto hits = find_phrase(ws, consumed, kv->first, use_class);
    bool any = false;
    for (auto h : hits) {
      // "blue mug" names one instance; when it did not resolve by name it must not widen
      // to every mug.
      const bool modified = use_class && h > 0 && !consumed[h - 1] && !is_stopword(ws[h - 1]);
      if (modified) consumed[h - 1] = true;
      for (std::size_t k = 0; k < kv->first.size(); ++k) consumed[h + k] = true;
      any |= !modified;
    }
    if (any) matched.insert(kv->second.begin(), kv->second.end());
  }
  return matched;
}

}  // namespace

std::vector<std::string> words(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      cur += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    } else if (!cur.empty()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::string stem(std::string_view word) {
  std::string w(word);
  if (w.size() > 4 && (ends_with(w, "ies") || ends_with(w, "ied"))) return w.substr(0, w.size() - 3) + "y";
  for (std::string_view suffix : {"ing", "ed", "es", "s"}) {
    if (ends_with(w, suffix) && w.size() - suffix.size() >= 3) {
      w.resize(w.size() - suffix.size());
      break;
    }
  }
  if (w.size() > 3 && w.back() == 'e') w.pop_back();
  return w;
}

bool is_stopword(std::string_view word) {
  return std::find(std::begin(kStopwords), std::end(kStopwords), word) != std::end(kStopwords);
}

std::vector<NamedEntity> rooms_of(const EggGraph& g) {
  std::vector<NamedEntity> out;
  for (const auto& [id, n] : g.spatial_nodes())
    if (n.layer == Layer::kRoom) out.push_back({id, n.name, n.semantic_class, n.caption.value_or("")});
  return out;
}

std::vector<NamedEntity> objects_of(const EggGraph& g) {
  std::vector<NamedEntity> out;
  for (const auto& [id, n] : g.spatial_nodes())
    if (n.layer == Layer::kObject) out.push_back({id, n.name, n.semantic_class, n.caption.value_or("")});
  return out;
}

bool QueryAnalysis::has_word(std::string_view w) const {
  return std::find(words.begin(), words.end(), w) != words.end();
}

QueryAnalysis analyze_query(std::string_view question, const std::vector<NamedEntity>& rooms,
                            const std::vector<NamedEntity>& objects) {
  QueryAnalysis q;
  q.words = words(question);
  std::vector<bool> consumed(q.words.size(), false);
  q.rooms = match_entities(q.words, consumed, rooms, false);
  q.objects = match_entities(q.words, consumed, objects, false);
  q.objects_by_name = !q.objects.empty();
  if (!q.objects_by_name) q.objects = match_entities(q.words, consumed, objects, true);
  for (std::size_t i = 0; i < q.words.size(); ++i)
    if (!consumed[i] && !is_stopword(q.words[i])) q.content_stems.insert(stem(q.words[i]));
  return q;
}

IdSet match_events(const QueryAnalysis& q, const EggGraph& g) {
  IdSet out;
  if (q.content_stems.empty()) return out;
  for (const auto& [id, e] : g.event_nodes()) {
    for (const auto& w : words(e.summary)) {
      if (!is_stopword(w) && q.content_stems.contains(stem(w))) {
        out.insert(id);
        break;
      }
    }
  }
  return out;
}

IdSet resolve_name(std::string_view name, const std::vector<NamedEntity>& candidates) {
  const auto needle = lower(name);
  IdSet out;
  if (needle.empty()) return out;
  for (const auto& c : candidates)
    if (lower(c.name) == needle) out.insert(c.id);
  if (!out.empty()) return out;
  for (const auto& c : candidates)
    if (!c.caption.empty() && lower(c.caption).find(needle) != std::string::npos) out.insert(c.id);
  return out;
}

Modality infer_modality(std::string_view question) {
  const auto ws = words(question);
  if (ws.empty()) return Modality::kText;
  const auto& first = ws.front();
  if (first == "where" || first == "which") return Modality::kNode;
  if (first == "when") return Modality::kTime;
  for (std::size_t i = 0; i + 1 < ws.size(); ++i)
    if ((ws[i] == "what" || ws[i] == "earliest" || ws[i] == "latest") && (ws[i + 1] == "time" || ws[i + 1] == "hour"))
      return Modality::kTime;
  for (std::string_view aux : {"is", "was", "were", "are", "did", "does", "do", "has", "have", "can", "could", "will"})
    if (first == aux) return Modality::kBinary;
  return Modality::kText;
}

double token_f1(std::string_view gold, std::string_view predicted) {
  const auto g = words(gold);
  const auto p = words(predicted);
  if (g.empty() && p.empty()) return 1.0;
  if (g.empty() || p.empty()) return 0.0;
  std::map<std::string, int> counts;
  for (const auto& w : g) ++counts[w];
  int common = 0;
  for (const auto& w : p) {
    auto it = counts.find(w);
    if (it != counts.end() && it->second > 0) {
      --it->second;
      ++common;
    }
  }
  if (common == 0) return 0.0;
  const double precision = static_cast<double>(common) / static_cast<double>(p.size());
  const double recall = static_cast<double>(common) / static_cast<double>(g.size());
  return 2.0 * precision * recall / (precision + recall);
}

}  // namespace egg
