#include "keyrank/scorer_client.hpp"

#include <cstdlib>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "keyrank/errors.hpp"

namespace keyrank {

namespace {

constexpr const char* kScorePath = "/v1/score";

struct ParsedEndpoint {
  std::string host_port;  // scheme://host:port for httplib
  std::string path_prefix;
};

ParsedEndpoint parse_endpoint(const std::string& url) {
  if (url.empty())
    throw_error(ErrorKind::Config,
                "no scorer endpoint configured (set --endpoint or KEYRANK_SCORER_URL)");
  std::size_t scheme_end = url.find("://");
  if (scheme_end == std::string::npos)
    throw_error(ErrorKind::Config, "endpoint URL must include a scheme: " + url);
  const std::size_t path_at = url.find('/', scheme_end + 3);
  if (path_at == std::string::npos) return {url, ""};
  std::string prefix = url.substr(path_at);
  while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
  return {url.substr(0, path_at), prefix};
}

void validate_request(const ScoreRequest& req) {
  if (req.decoder_texts.empty())
    throw_error(ErrorKind::Config, "score request has no decoder texts");
  for (std::size_t i = 0; i < req.decoder_texts.size(); ++i) {
    if (req.decoder_texts[i].empty())
      throw_error(ErrorKind::Config,
                  "score request decoder text " + std::to_string(i) + " is empty");
  }
}

TokenLogProbs parse_result(const nlohmann::json& entry, std::size_t index,
                           const std::string& decoder_text) {
  if (!entry.is_object() || !entry.contains("tokens") || !entry.contains("logprobs"))
    throw_error(ErrorKind::Protocol,
                "result " + std::to_string(index) + ": missing tokens/logprobs");
  TokenLogProbs tlp;
  try {
    tlp.tokens = entry["tokens"].get<std::vector<std::string>>();
    tlp.logprobs = entry["logprobs"].get<std::vector<double>>();
  } catch (const nlohmann::json::exception&) {
    throw_error(ErrorKind::Protocol,
                "result " + std::to_string(index) + ": malformed tokens/logprobs");
  }
  if (tlp.tokens.size() != tlp.logprobs.size())
    throw_error(ErrorKind::Protocol, "result " + std::to_string(index) +
                                         ": tokens/logprobs length mismatch");
  for (double lp : tlp.logprobs) {
    if (lp > 0.0)
      throw_error(ErrorKind::Protocol,
                  "result " + std::to_string(index) + ": positive log-probability");
  }
  std::size_t joined = 0;
  for (const std::string& tok : tlp.tokens) joined += tok.size();
  std::string reconstructed;
  reconstructed.reserve(joined);
  for (const std::string& tok : tlp.tokens) reconstructed += tok;
  if (reconstructed != decoder_text)
    throw_error(ErrorKind::Protocol, "result " + std::to_string(index) +
                                         ": tokens do not reconstruct decoder text");
  return tlp;
}

std::vector<TokenLogProbs> post_chunk(const ClientConfig& cfg, const ParsedEndpoint& ep,
                                      const std::string& encoder_text,
                                      const std::vector<std::string>& decoder_texts) {
  nlohmann::json body = {{"encoder_text", encoder_text},
                         {"decoder_texts", decoder_texts}};
  const std::string payload = body.dump();

  std::string last_failure;
  for (std::size_t attempt = 0; attempt <= cfg.max_retries; ++attempt) {
    if (attempt > 0) {
      const auto delay = cfg.retry_backoff * (1u << (attempt - 1));
      std::this_thread::sleep_for(delay);
    }
    httplib::Client client(ep.host_port);
    const auto secs =
        std::chrono::duration_cast<std::chrono::seconds>(cfg.timeout).count();
    client.set_connection_timeout(secs, 0);
    client.set_read_timeout(secs, 0);
    client.set_write_timeout(secs, 0);
    httplib::Headers headers;
    if (cfg.bearer_token)
      headers.emplace("Authorization", "Bearer " + *cfg.bearer_token);

    auto res = client.Post(ep.path_prefix + kScorePath, headers, payload,
                           "application/json");
    if (!res) {
      last_failure = httplib::to_string(res.error());
      continue;  // transport failure: retry
    }
    if (res->status >= 500) {
      last_failure = "server status " + std::to_string(res->status);
      continue;  // server-side failure: retry
    }
    if (res->status != 200) {
      std::string message = res->body;
      try {
        auto err = nlohmann::json::parse(res->body);
        if (err.contains("error")) message = err["error"].get<std::string>();
      } catch (const nlohmann::json::exception&) {
      }
      throw_error(ErrorKind::Remote,
                  "scorer returned status " + std::to_string(res->status) + ": " + message);
    }

    nlohmann::json reply;
    try {
      reply = nlohmann::json::parse(res->body);
    } catch (const nlohmann::json::parse_error& e) {
      throw_error(ErrorKind::Protocol, std::string("response is not JSON: ") + e.what());
    }
    if (!reply.is_object() || !reply.contains("results") || !reply["results"].is_array())
      throw_error(ErrorKind::Protocol, "response lacks a results array");
    const auto& results = reply["results"];
    if (results.size() != decoder_texts.size())
      throw_error(ErrorKind::Protocol,
                  "expected " + std::to_string(decoder_texts.size()) + " results, got " +
                      std::to_string(results.size()));
    std::vector<TokenLogProbs> out;
    out.reserve(results.size());
    for (std::size_t i = 0; i < results.size(); ++i)
      out.push_back(parse_result(results[i], i, decoder_texts[i]));
    return out;
  }
  throw_error(ErrorKind::Connectivity,
              "scorer unreachable after " + std::to_string(cfg.max_retries + 1) +
                  " attempts (" + last_failure + "): " + ep.host_port);
}

}  // namespace

ClientConfig client_config_from_env() {
  ClientConfig cfg;
  if (const char* url = std::getenv("KEYRANK_SCORER_URL")) cfg.endpoint_url = url;
  return cfg;
}

ScoreResponse score_batch(const ClientConfig& cfg, const ScoreRequest& req) {
  validate_request(req);
  if (cfg.max_batch == 0)
    throw_error(ErrorKind::Config, "max_batch must be at least 1");
  const ParsedEndpoint ep = parse_endpoint(cfg.endpoint_url);

  ScoreResponse response;
  response.results.reserve(req.decoder_texts.size());
  for (std::size_t begin = 0; begin < req.decoder_texts.size(); begin += cfg.max_batch) {
    const std::size_t end = std::min(begin + cfg.max_batch, req.decoder_texts.size());
    std::vector<std::string> chunk(req.decoder_texts.begin() + begin,
                                   req.decoder_texts.begin() + end);
    auto results = post_chunk(cfg, ep, req.encoder_text, chunk);
    for (auto& r : results) response.results.push_back(std::move(r));
  }
  return response;
}

namespace {

class RemoteScorer final : public Scorer {
 public:
  explicit RemoteScorer(ClientConfig cfg) : cfg_(std::move(cfg)) {}

  std::string name() const override { return "remote"; }

  std::vector<TokenLogProbs> score(const std::string& encoder_text,
                                   const std::vector<std::string>& decoder_texts) override {
    ScoreResponse resp = score_batch(cfg_, {encoder_text, decoder_texts});
    return std::move(resp.results);
  }

 private:
  ClientConfig cfg_;
};

}  // namespace

std::unique_ptr<Scorer> make_remote_scorer(ClientConfig cfg) {
  return std::make_unique<RemoteScorer>(std::move(cfg));
}

}  // namespace keyrank
