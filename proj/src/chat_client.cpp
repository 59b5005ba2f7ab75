#include "egg/chat_client.hpp"

#include <fstream>
#include <sstream>
#include <thread>

#include <httplib.h>
#include <spdlog/spdlog.h>

#include "egg/error.hpp"
#include "json_util.hpp"

namespace egg {

using detail::json;
using detail::ordered_json;

std::string request_body(const ChatRequest& request) {
  ordered_json j;
  j["model"] = request.model;
  j["messages"] = ordered_json::array();
  for (const auto& m : request.messages) j["messages"].push_back({{"role", m.role}, {"content", m.content}});
  j["temperature"] = request.temperature;
  if (!request.response_schema.empty()) {
    j["response_format"] = {
        {"type", "json_schema"},
        {"json_schema",
         {{"name", request.schema_name}, {"strict", true}, {"schema", ordered_json::parse(request.response_schema)}}}};
  }
  return j.dump();
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = kHex[h & 0xf];
  return out;
}

std::filesystem::path replay_file(const std::filesystem::path& dir, const ChatRequest& request) {
  return dir / (fnv1a_hex(request_body(request)) + ".json");
}

// ---------------------------------------------------------------------------

HttpChatClient::HttpChatClient(HttpOptions options) : options_(std::move(options)) {
  const auto& url = options_.endpoint;
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos)
    throw Error(ErrorCode::kTransport, "endpoint '" + url + "' is not an absolute URL");
  const auto path_start = url.find('/', scheme_end + 3);
  origin_ = url.substr(0, path_start);
  path_ = path_start == std::string::npos ? "/" : url.substr(path_start);
}

std::string HttpChatClient::complete(const ChatRequest& request) const {
  const std::string body = request_body(request);
  httplib::Client client(origin_);
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(options_.timeout);
  const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(options_.timeout - secs);
  client.set_connection_timeout(secs.count(), usecs.count());
  client.set_read_timeout(secs.count(), usecs.count());
  httplib::Headers headers;
  if (!options_.api_key.empty()) headers.emplace("Authorization", "Bearer " + options_.api_key);

  std::string last_error;
  auto delay = options_.backoff;
  for (int attempt = 0; attempt <= options_.max_retries; ++attempt) {
    if (attempt > 0) {
      spdlog::warn("chat request failed ({}), retry {}/{}", last_error, attempt, options_.max_retries);
      std::this_thread::sleep_for(delay);
      delay *= 2;
    }
    auto res = client.Post(path_, headers, body, "application/json");
    if (!res) {
      last_error = httplib::to_string(res.error());
      continue;
    }
    if (res->status == 429 || res->status >= 500) {
      last_error = "HTTP " + std::to_string(res->status);
      continue;
    }
    if (res->status != 200)
      throw Error(ErrorCode::kTransport, "HTTP " + std::to_string(res->status) + ": " + res->body);
    try {
      const auto j = json::parse(res->body);
      return j.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kTransport, std::string("malformed chat response: ") + e.what());
    }
  }
  throw Error(ErrorCode::kTransport,
              "chat request failed after " + std::to_string(options_.max_retries + 1) + " attempts: " + last_error);
}

// ---------------------------------------------------------------------------

ReplayChatClient::ReplayChatClient(std::filesystem::path dir) : dir_(std::move(dir)) {
  if (!std::filesystem::is_directory(dir_))
    throw Error(ErrorCode::kTransport, "replay directory '" + dir_.string() + "' does not exist");
}

std::string ReplayChatClient::complete(const ChatRequest& request) const {
  const auto file = replay_file(dir_, request);
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error(ErrorCode::kTransport, "no replay fixture " + file.filename().string());
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return json::parse(ss.str()).at("response").get<std::string>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kTransport, "bad replay fixture " + file.string() + ": " + e.what());
  }
}

RecordingChatClient::RecordingChatClient(std::shared_ptr<const ChatClient> inner, std::filesystem::path dir)
    : inner_(std::move(inner)), dir_(std::move(dir)) {
  std::filesystem::create_directories(dir_);
}

std::string RecordingChatClient::complete(const ChatRequest& request) const {
  std::string reply = inner_->complete(request);
  ordered_json j;
  j["request"] = ordered_json::parse(request_body(request));
  j["response"] = reply;
  const auto file = replay_file(dir_, request);
  std::lock_guard lock(mu_);
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + file.string());
  out << j.dump(2) << '\n';
  return reply;
}

}  // namespace egg
