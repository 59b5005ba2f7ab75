#pragma once

#include <string>

#include "egg/chat_client.hpp"

namespace egg::mock {

/// Deterministic stand-in for a chat model that understands the built-in prompt templates.
/// Scope requests get the rooms named in the question; entity requests get the objects named
/// in the question and the events sharing a word stem with it; answer requests are answered by
/// the scripted generator over the embedded graph; judge requests score by token F1.
std::string respond(const ChatRequest& request);

/// Wraps respond() in an OpenAI-style chat-completions response body. Takes a request body.
std::string respond_http(const std::string& body);

class MockChatClient final : public ChatClient {
 public:
  std::string complete(const ChatRequest& request) const override { return respond(request); }
};

}  // namespace egg::mock
