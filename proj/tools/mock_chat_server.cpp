// Local chat-completions endpoint backed by the mock model, for recording replay fixtures.

#include <iostream>

#include <CLI11.hpp>
#include <httplib.h>

#include "mock_chat.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Mock chat-completions server"};
  std::string host = "127.0.0.1";
  int port = 8089;
  app.add_option("--host", host, "Bind address");
  app.add_option("--port", port, "Port");
  CLI11_PARSE(app, argc, argv);

  httplib::Server server;
  server.Post("/v1/chat/completions", [](const httplib::Request& req, httplib::Response& res) {
    try {
      res.set_content(egg::mock::respond_http(req.body), "application/json");
    } catch (const std::exception& e) {
      res.status = 400;
      res.set_content(e.what(), "text/plain");
    }
  });
  std::cerr << "listening on http://" << host << ":" << port << "/v1/chat/completions\n";
  return server.listen(host, port) ? 0 : 1;
}
