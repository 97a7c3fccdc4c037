#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace keyrank {

// A surface token with its byte span [char_start, char_end) in the source
// text. Offsets are UTF-8 byte positions; multi-byte sequences are never
// split.
struct Token {
  std::string text;
  std::size_t char_start = 0;
  std::size_t char_end = 0;
};

struct TaggedToken {
  Token token;
  std::string pos;  // Penn-style tag, uppercase alphanumeric
};

struct SuffixRule {
  std::string suffix;
  std::string pos;
};

// Lexicon lookup is case-insensitive; keys are stored lowercased.
// Suffix rules resolve longest-suffix-first, ties broken by list order.
struct TaggerConfig {
  std::unordered_map<std::string, std::string> lexicon;
  std::vector<SuffixRule> suffix_rules;
  std::string default_pos = "NN";

  void add_word(std::string_view word, std::string_view pos);
  void add_suffix(std::string_view suffix, std::string_view pos);
};

// Splits text into word and punctuation tokens. Internal hyphens and
// apostrophes do not split a word; every punctuation mark is its own
// token; whitespace is discarded.
std::vector<Token> tokenize(std::string_view text);

// Tags each token: lexicon hit, else longest matching suffix rule, else
// config.default_pos. Length- and order-preserving.
std::vector<TaggedToken> pos_tag(const std::vector<Token>& tokens,
                                 const TaggerConfig& config);

// Lowercase Porter (1980) stem of a single word.
std::string stem(std::string_view word);

// Lowercases, collapses whitespace runs, stems each word, joins with
// single spaces. The canonical phrase key used for matching.
std::string stem_phrase(std::string_view phrase);

bool is_valid_pos_tag(std::string_view tag);

// Built-in English tagger: closed-class lexicon + suffix heuristics,
// default tag NN.
TaggerConfig default_tagger_config();

// One `word<TAB>POS` or `suffix<TAB>POS` entry per line, '#' comments.
void load_lexicon(std::string_view text, TaggerConfig& config);
void load_suffix_rules(std::string_view text, TaggerConfig& config);
void load_lexicon_file(const std::string& path, TaggerConfig& config);
void load_suffix_rules_file(const std::string& path, TaggerConfig& config);

// Pre-tagged input: one `surface<TAB>POS` per line, blank line between
// documents. Token offsets are synthesized by joining surfaces with
// single spaces.
std::vector<std::vector<TaggedToken>> parse_pretagged(std::string_view text);

// Reconstructs the document text a pre-tagged token list stands for.
std::string pretagged_text(const std::vector<TaggedToken>& tagged);

}  // namespace keyrank
