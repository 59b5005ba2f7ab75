#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "egg/graph.hpp"
#include "egg/query.hpp"

namespace egg {

/// Lower-cased alphanumeric words of `text`.
std::vector<std::string> words(std::string_view text);

/// Light suffix stripper: `making`/`makes`/`make` -> `mak`, `carries`/`carried` -> `carry`.
std::string stem(std::string_view word);

bool is_stopword(std::string_view word);

struct NamedEntity {
  NodeId id;
  std::string name;
  std::string semantic_class;
  std::string caption;
};

std::vector<NamedEntity> rooms_of(const EggGraph& g);
std::vector<NamedEntity> objects_of(const EggGraph& g);

/// What a question mentions, resolved against a set of rooms and objects.
struct QueryAnalysis {
  std::vector<std::string> words;
  IdSet rooms;           // rooms whose name appears in the question
  // Objects named in full, or else objects whose class appears without a modifier
  // ("which mug", not "blue mug").
  IdSet objects;
  bool objects_by_name = false;
  std::set<std::string> content_stems;  // leftover non-stopword words, stemmed

  bool has_word(std::string_view w) const;
};

QueryAnalysis analyze_query(std::string_view question, const std::vector<NamedEntity>& rooms,
                            const std::vector<NamedEntity>& objects);

/// Events of `g` whose summary shares a stem with the question's leftover words.
IdSet match_events(const QueryAnalysis& q, const EggGraph& g);

/// Name-to-id resolution for free-text agent output: case-insensitive exact name match,
/// then case-insensitive substring match on captions. Every match is kept.
IdSet resolve_name(std::string_view name, const std::vector<NamedEntity>& candidates);

/// Answer type suggested by the question's wording: `where`/`which` ask for nodes, `when`
/// or a time phrase for a time, an auxiliary verb up front for yes/no, anything else text.
Modality infer_modality(std::string_view question);

/// Multiset token F1 over lower-cased words.
double token_f1(std::string_view gold, std::string_view predicted);

}  // namespace egg
