#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace egg {

struct ChatMessage {
  std::string role;  // "system" | "user" | "assistant"
  std::string content;
};

struct ChatRequest {
  std::string model;
  std::vector<ChatMessage> messages;
  double temperature = 0.0;
  std::string schema_name;
  // JSON schema text constraining the reply; empty for free-form replies.
  std::string response_schema;
};

/// Request JSON sent to the service: {model, messages, temperature, response_format?}.
/// Byte-stable for equal requests.
std::string request_body(const ChatRequest& request);

/// FNV-1a 64-bit hash, as 16 lower-case hex digits.
std::string fnv1a_hex(std::string_view bytes);

/// Chat-completion transport returning the assistant message text.
/// Implementations are safe to call concurrently.
class ChatClient {
 public:
  virtual ~ChatClient() = default;
  /// Throws Error(kTransport).
  virtual std::string complete(const ChatRequest& request) const = 0;
};

struct HttpOptions {
  std::string endpoint;  // full URL of the chat-completions resource
  std::string api_key;   // sent as a bearer token when non-empty
  std::chrono::milliseconds timeout{60000};
  int max_retries = 3;
  std::chrono::milliseconds backoff{500};  // doubled after each failed attempt
};

/// OpenAI-style chat-completions over HTTP(S). Connection failures, 429 and 5xx responses
/// are retried; other 4xx responses fail immediately.
class HttpChatClient final : public ChatClient {
 public:
  explicit HttpChatClient(HttpOptions options);
  std::string complete(const ChatRequest& request) const override;

 private:
  HttpOptions options_;
  std::string origin_;  // scheme://host[:port]
  std::string path_;
};

/// Serves replies from `<dir>/<fnv1a_hex(request_body)>.json` files holding
/// {"request": <body>, "response": <text>}. A missing file is a transport error.
class ReplayChatClient final : public ChatClient {
 public:
  explicit ReplayChatClient(std::filesystem::path dir);
  std::string complete(const ChatRequest& request) const override;

 private:
  std::filesystem::path dir_;
};

/// Forwards to `inner` and writes every exchange in the replay layout.
class RecordingChatClient final : public ChatClient {
 public:
  RecordingChatClient(std::shared_ptr<const ChatClient> inner, std::filesystem::path dir);
  std::string complete(const ChatRequest& request) const override;

 private:
  std::shared_ptr<const ChatClient> inner_;
  std::filesystem::path dir_;
  mutable std::mutex mu_;
};

std::filesystem::path replay_file(const std::filesystem::path& dir, const ChatRequest& request);

}  // namespace egg
