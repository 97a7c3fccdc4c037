#include "keyrank/stub_server.hpp"

#include <atomic>
#include <cstdio>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "keyrank/scoring.hpp"

namespace keyrank {

namespace {

void handle_score(const httplib::Request& req, httplib::Response& res) {
  nlohmann::json body;
  try {
    body = nlohmann::json::parse(req.body);
  } catch (const nlohmann::json::parse_error&) {
    res.status = 400;
    res.set_content(R"({"error":"request body is not JSON"})", "application/json");
    return;
  }
  if (!body.contains("encoder_text") || !body.contains("decoder_texts") ||
      !body["encoder_text"].is_string() || !body["decoder_texts"].is_array()) {
    res.status = 400;
    res.set_content(R"({"error":"expected {encoder_text, decoder_texts}"})",
                    "application/json");
    return;
  }
  const auto encoder_text = body["encoder_text"].get<std::string>();
  const auto decoder_texts = body["decoder_texts"].get<std::vector<std::string>>();
  if (decoder_texts.empty()) {
    res.status = 400;
    res.set_content(R"({"error":"decoder_texts must be non-empty"})", "application/json");
    return;
  }

  auto scorer = make_reference_scorer();
  const auto scored = scorer->score(encoder_text, decoder_texts);

  nlohmann::json results = nlohmann::json::array();
  for (const TokenLogProbs& tlp : scored) {
    results.push_back({{"tokens", tlp.tokens}, {"logprobs", tlp.logprobs}});
  }
  res.set_content(nlohmann::json{{"results", results}}.dump(), "application/json");
}

}  // namespace

struct StubScorerServer::Impl {
  httplib::Server server;
  std::thread worker;
  int port = 0;
};

StubScorerServer::StubScorerServer() : impl_(std::make_unique<Impl>()) {
  impl_->server.Post("/v1/score", handle_score);
}

StubScorerServer::~StubScorerServer() { stop(); }

int StubScorerServer::start(int port) {
  if (port == 0) {
    impl_->port = impl_->server.bind_to_any_port("127.0.0.1");
  } else {
    impl_->server.bind_to_port("127.0.0.1", port);
    impl_->port = port;
  }
  impl_->worker = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
  return impl_->port;
}

void StubScorerServer::stop() {
  if (impl_->worker.joinable()) {
    impl_->server.stop();
    impl_->worker.join();
  }
}

int StubScorerServer::port() const { return impl_->port; }

std::string StubScorerServer::url() const {
  return "http://127.0.0.1:" + std::to_string(impl_->port);
}

int run_stub_server(const std::string& host, int port) {
  httplib::Server server;
  server.Post("/v1/score", handle_score);
  std::printf("serving reference scorer on http://%s:%d/v1/score\n", host.c_str(), port);
  std::fflush(stdout);
  if (!server.listen(host, port)) {
    std::fprintf(stderr, "failed to bind %s:%d\n", host.c_str(), port);
    return 1;
  }
  return 0;
}

}  // namespace keyrank
