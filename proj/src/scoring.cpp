#include "keyrank/scoring.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <unordered_map>

#include "keyrank/errors.hpp"
#include "keyrank/textproc.hpp"

namespace keyrank {

namespace {

bool is_space_byte(unsigned char c) { return std::isspace(c) != 0; }
bool is_word_byte(unsigned char c) { return std::isalnum(c) != 0 || c >= 0x80; }

std::string fold_case(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

CandidateTokenWindow locate_candidate_window(const TokenLogProbs& scored_tokens,
                                             const RenderedPrompt& rp) {
  // precondition: tokens reconstruct decoder_text
  std::size_t offset = 0;
  for (const std::string& tok : scored_tokens.tokens) {
    if (offset + tok.size() > rp.decoder_text.size() ||
        rp.decoder_text.compare(offset, tok.size(), tok) != 0) {
      std::size_t bad = offset;
      const std::size_t limit = std::min(offset + tok.size(), rp.decoder_text.size());
      for (std::size_t i = 0; i < tok.size() && offset + i < limit; ++i) {
        if (tok[i] != rp.decoder_text[offset + i]) {
          bad = offset + i;
          break;
        }
      }
      throw_error(ErrorKind::Contract,
                  "decoder tokens do not reconstruct decoder text (first mismatch at offset " +
                      std::to_string(bad) + ")");
    }
    offset += tok.size();
  }
  if (offset != rp.decoder_text.size()) {
    throw_error(ErrorKind::Contract,
                "decoder tokens do not reconstruct decoder text (first mismatch at offset " +
                    std::to_string(offset) + ")");
  }

  CandidateTokenWindow window;
  bool found = false;
  std::size_t tok_begin = 0;
  for (std::size_t i = 0; i < scored_tokens.tokens.size(); ++i) {
    const std::size_t tok_end = tok_begin + scored_tokens.tokens[i].size();
    const bool overlaps = tok_begin < rp.candidate_end && tok_end > rp.candidate_begin;
    if (overlaps) {
      if (!found) {
        window.first_token = i;
        found = true;
      }
      window.token_count = i - window.first_token + 1;
    }
    tok_begin = tok_end;
  }
  if (!found) {
    throw_error(ErrorKind::Contract, "candidate span covered by no decoder token");
  }
  return window;
}

double score_candidate(const CandidateTokenWindow& window, const TokenLogProbs& tlp) {
  double sum = 0.0;
  for (std::size_t i = window.first_token; i < window.first_token + window.token_count; ++i)
    sum += tlp.logprobs[i];
  return -sum / static_cast<double>(window.token_count);
}

std::vector<ScoredCandidate> rank_candidates(std::vector<ScoredCandidate> scored) {
  for (const ScoredCandidate& sc : scored) {
    if (!std::isfinite(sc.pi_c)) {
      throw_error(ErrorKind::Data,
                  "non-finite score for candidate '" + sc.candidate.surface + "'");
    }
  }
  std::stable_sort(scored.begin(), scored.end(),
                   [](const ScoredCandidate& a, const ScoredCandidate& b) {
                     if (a.pi_c != b.pi_c) return a.pi_c < b.pi_c;
                     if (a.candidate.first_char_offset != b.candidate.first_char_offset)
                       return a.candidate.first_char_offset < b.candidate.first_char_offset;
                     return a.candidate.stemmed_key < b.candidate.stemmed_key;
                   });
  return scored;
}

std::vector<std::string> truncate_encoder_input(std::vector<std::string> document_tokens,
                                                const ScorerConfig& cfg) {
  if (document_tokens.size() > cfg.max_encoder_tokens)
    document_tokens.resize(cfg.max_encoder_tokens);
  return document_tokens;
}

std::vector<std::string> segment_concat_tokens(std::string_view text) {
  std::vector<std::string> tokens;
  const std::size_t n = text.size();
  std::size_t i = 0;
  while (i < n) {
    std::size_t start = i;
    while (i < n && is_space_byte(static_cast<unsigned char>(text[i]))) ++i;
    if (i >= n) {
      // trailing whitespace rides on the last token
      if (!tokens.empty())
        tokens.back().append(text.substr(start, n - start));
      else
        tokens.emplace_back(text.substr(start, n - start));
      break;
    }
    std::size_t body = i;
    if (is_word_byte(static_cast<unsigned char>(text[i]))) {
      while (body < n && is_word_byte(static_cast<unsigned char>(text[body]))) ++body;
    } else {
      ++body;  // one punctuation mark per token
    }
    tokens.emplace_back(text.substr(start, body - start));
    i = body;
  }
  return tokens;
}

TokenLogProbs reference_score(const std::vector<std::string>& document_tokens,
                              const std::vector<std::string>& decoder_tokens) {
  std::unordered_map<std::string, std::size_t> counts;
  for (const std::string& tok : document_tokens) ++counts[fold_case(tok)];
  const double total = static_cast<double>(document_tokens.size());
  const double vocab = static_cast<double>(counts.size());

  TokenLogProbs tlp;
  tlp.tokens = decoder_tokens;
  tlp.logprobs.reserve(decoder_tokens.size());
  for (const std::string& tok : decoder_tokens) {
    const auto it = counts.find(fold_case(tok));
    const double count = it == counts.end() ? 0.0 : static_cast<double>(it->second);
    tlp.logprobs.push_back(std::log((count + 1.0) / (total + vocab + 1.0)));
  }
  return tlp;
}

std::vector<std::string> Scorer::tokenize_document(std::string_view text) const {
  return segment_concat_tokens(text);
}

namespace {

class ReferenceScorer final : public Scorer {
 public:
  std::string name() const override { return "reference"; }

  std::vector<TokenLogProbs> score(const std::string& encoder_text,
                                   const std::vector<std::string>& decoder_texts) override {
    std::vector<std::string> doc_words;
    for (const Token& tok : tokenize(encoder_text)) doc_words.push_back(tok.text);

    std::vector<TokenLogProbs> out;
    out.reserve(decoder_texts.size());
    for (const std::string& decoder_text : decoder_texts) {
      const std::vector<std::string> pieces = segment_concat_tokens(decoder_text);
      std::vector<std::string> keys;
      keys.reserve(pieces.size());
      for (const std::string& piece : pieces) {
        std::size_t lead = 0;
        while (lead < piece.size() && is_space_byte(static_cast<unsigned char>(piece[lead])))
          ++lead;
        keys.push_back(piece.substr(lead));
      }
      TokenLogProbs tlp = reference_score(doc_words, keys);
      tlp.tokens = pieces;  // keep reconstruction exact
      out.push_back(std::move(tlp));
    }
    return out;
  }
};

}  // namespace

std::unique_ptr<Scorer> make_reference_scorer() {
  return std::make_unique<ReferenceScorer>();
}

}  // namespace keyrank
