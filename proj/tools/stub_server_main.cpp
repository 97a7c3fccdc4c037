// Standalone /v1/score stub backed by the deterministic reference scorer.
// Useful for exercising the remote path without a hosted model.

#include <CLI11.hpp>

#include "keyrank/stub_server.hpp"

int main(int argc, char** argv) {
  CLI::App app{"keyrank stub scorer server"};
  std::string host = "127.0.0.1";
  int port = 8071;
  app.add_option("--host", host, "Bind address");
  app.add_option("--port", port, "Bind port");
  CLI11_PARSE(app, argc, argv);
  return keyrank::run_stub_server(host, port);
}
