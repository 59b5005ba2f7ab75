#pragma once

#include <chrono>
#include <memory>
#include <string>

#include "egg/agents.hpp"
#include "egg/chat_client.hpp"
#include "egg/prompts.hpp"

namespace egg {

struct AgentConfig {
  std::string endpoint;  // EGG_ENDPOINT
  std::string api_key;   // EGG_API_KEY
  std::string model = "gpt-4o";
  double temperature = 0.0;
  int max_retries = 3;
  std::chrono::milliseconds timeout{60000};
  PromptLibrary prompts;

  /// Defaults with endpoint and key taken from the environment.
  static AgentConfig from_env();

  /// Throws Error(kSchema) on a negative temperature or retry count.
  void check() const;
};

/// HTTP client for `cfg`. Throws Error(kTransport) when no endpoint is configured.
std::shared_ptr<const ChatClient> make_http_client(const AgentConfig& cfg);

/// Two-phase prompting: scope (time window and rooms) over the full graph, then objects and
/// events over the graph pruned to that scope. Replies are constrained to a JSON shape; a
/// malformed reply is re-prompted once. Names that match nothing are dropped with a warning.
class RemoteExtractor final : public RelevanceExtractor {
 public:
  RemoteExtractor(std::shared_ptr<const ChatClient> client, AgentConfig cfg);
  Extraction extract(const QueryRecord& query, const EggGraph& full, const PruneConfig& cfg) const override;

 private:
  std::shared_ptr<const ChatClient> client_;
  AgentConfig cfg_;
};

class RemoteGenerator final : public AnswerGenerator {
 public:
  RemoteGenerator(std::shared_ptr<const ChatClient> client, AgentConfig cfg);
  Answer generate(const QueryRecord& query, std::string_view context) const override;

 private:
  std::shared_ptr<const ChatClient> client_;
  AgentConfig cfg_;
};

class RemoteJudge final : public Judge {
 public:
  RemoteJudge(std::shared_ptr<const ChatClient> client, AgentConfig cfg);
  double score(const QueryRecord& query, const AnswerPayload& gold, const Answer& predicted) const override;

 private:
  std::shared_ptr<const ChatClient> client_;
  AgentConfig cfg_;
};

Agents remote_agents(std::shared_ptr<const ChatClient> client, const AgentConfig& cfg);

}  // namespace egg
