#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "keyrank/candidates.hpp"
#include "keyrank/prompts.hpp"

namespace keyrank {

// Per-token natural-log probabilities of a decoder text under forced
// decoding. Concatenating tokens reproduces the decoder text exactly.
struct TokenLogProbs {
  std::vector<std::string> tokens;
  std::vector<double> logprobs;  // each <= 0
};

// The decoder-token window covering the candidate: first_token is m,
// token_count is l_c.
struct CandidateTokenWindow {
  std::size_t first_token = 0;
  std::size_t token_count = 0;
};

struct ScoredCandidate {
  Candidate candidate;
  double pi_c = 0.0;
};

enum class ScorerBackend { Reference, Remote };

struct ScorerConfig {
  std::size_t max_encoder_tokens = 512;
  ScorerBackend backend = ScorerBackend::Reference;
};

// Smallest contiguous token window covering the candidate span of rp.
// Windows widen to whole tokens when a token straddles a span edge.
// Throws Error(Contract) at the first offset where the tokens fail to
// reconstruct decoder_text.
CandidateTokenWindow locate_candidate_window(const TokenLogProbs& scored_tokens,
                                             const RenderedPrompt& rp);

// pi_c = -(1/l_c) * sum of the window's log-probabilities.
double score_candidate(const CandidateTokenWindow& window, const TokenLogProbs& tlp);

// Ascending pi_c (smaller = more probable = more important); ties by
// first_char_offset, then stemmed_key. Throws Error(Data) on a
// non-finite score, naming the candidate.
std::vector<ScoredCandidate> rank_candidates(std::vector<ScoredCandidate> scored);

// Keeps the first min(size, max_encoder_tokens) tokens.
std::vector<std::string> truncate_encoder_input(std::vector<std::string> document_tokens,
                                                const ScorerConfig& cfg);

// Concatenation-preserving segmentation: whitespace rides on the front of
// the following token, punctuation marks split off, so joining the pieces
// reproduces the input byte for byte.
std::vector<std::string> segment_concat_tokens(std::string_view text);

// Add-one-smoothed unigram model over document_tokens (case-folded):
// log p(w) = log((c(w)+1) / (N+V+1)). Deterministic stand-in for a
// hosted model.
TokenLogProbs reference_score(const std::vector<std::string>& document_tokens,
                              const std::vector<std::string>& decoder_tokens);

// Pluggable forced-decoding backend.
class Scorer {
 public:
  virtual ~Scorer() = default;
  virtual std::string name() const = 0;
  // Backend tokens for the truncation contract; concatenation of the
  // result reproduces text.
  virtual std::vector<std::string> tokenize_document(std::string_view text) const;
  virtual std::vector<TokenLogProbs> score(const std::string& encoder_text,
                                           const std::vector<std::string>& decoder_texts) = 0;
};

std::unique_ptr<Scorer> make_reference_scorer();

}  // namespace keyrank
