#pragma once

#include <chrono>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "keyrank/scoring.hpp"

namespace keyrank {

struct ScoreRequest {
  std::string encoder_text;
  std::vector<std::string> decoder_texts;  // non-empty, each entry non-empty
};

struct ScoreResponse {
  // aligned index-for-index with the request's decoder_texts
  std::vector<TokenLogProbs> results;
};

struct ClientConfig {
  std::string endpoint_url;
  std::chrono::milliseconds timeout{60'000};
  std::size_t max_batch = 16;
  std::size_t max_retries = 2;  // exponential backoff between attempts
  std::chrono::milliseconds retry_backoff{250};
  std::optional<std::string> bearer_token;
};

// endpoint_url from KEYRANK_SCORER_URL when set.
ClientConfig client_config_from_env();

// POST {endpoint_url}/v1/score. Batches larger than max_batch are split
// transparently and results re-stitched in request order. Validates every
// result: token/logprob lengths match, log-probs <= 0, tokens reconstruct
// the decoder text.
ScoreResponse score_batch(const ClientConfig& cfg, const ScoreRequest& req);

std::unique_ptr<Scorer> make_remote_scorer(ClientConfig cfg);

}  // namespace keyrank
