#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "egg/graph.hpp"
#include "egg/pruning.hpp"

namespace egg {

struct SerializeOptions {
  // Emit an empty `event_edges` list (the graph keeps its edges).
  bool omit_edges = false;
};

/// Canonical JSON text of a graph.
///
/// Top-level keys, in order: `rooms`, `objects`, `events`, `spatial_edges`, `event_edges`.
/// Nodes are sorted by id; edges by their endpoints then interval. Every timestamp is written
/// as a raw microsecond integer followed by its ISO-8601 UTC rendering. Equal graphs produce
/// byte-identical text. Throws Error(kInvalidGraph) if validate() reports violations.
std::string serialize(const EggGraph& g, const SerializeOptions& opts = {});
std::string serialize(const Subgraph& g, const SerializeOptions& opts = {});

/// Inverse of serialize(). Unknown keys are rejected.
/// Throws Error(kSyntax), Error(kSchema) or Error(kIntegrity).
EggGraph parse_graph(std::string_view text);

/// Structural parse without validate(), for inspecting defective files.
/// Throws Error(kSyntax), Error(kSchema), or Error(kIntegrity) for repeated node ids.
EggGraph parse_graph_unchecked(std::string_view text);

class Tokenizer {
 public:
  virtual ~Tokenizer() = default;
  virtual std::size_t count(std::string_view text) const = 0;
};

/// Counts each structural character `{ } [ ] : , "` as one token and each maximal run of
/// other non-whitespace characters as one token.
class ApproxTokenizer final : public Tokenizer {
 public:
  std::size_t count(std::string_view text) const override;
};

std::size_t count_tokens(std::string_view text);

/// 1 - tokens(serialize(sub)) / tokens(serialize(full)).
double compression_ratio(const EggGraph& full, const Subgraph& sub, const Tokenizer& tokenizer = ApproxTokenizer{});

}  // namespace egg
