#pragma once

#include <memory>
#include <string>

namespace keyrank {

// Minimal /v1/score server backed by the deterministic reference scorer.
// Lets the remote path be exercised end to end without a hosted model.
class StubScorerServer {
 public:
  StubScorerServer();
  ~StubScorerServer();
  StubScorerServer(const StubScorerServer&) = delete;
  StubScorerServer& operator=(const StubScorerServer&) = delete;

  // Binds 127.0.0.1 (port 0 picks a free port) and serves on a background
  // thread. Returns the bound port.
  int start(int port = 0);
  void stop();
  int port() const;
  std::string url() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Blocking serve loop for the standalone tool. Returns a process exit code.
int run_stub_server(const std::string& host, int port);

}  // namespace keyrank
