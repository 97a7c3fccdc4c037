#include "keyrank/textproc.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "keyrank/errors.hpp"

namespace keyrank {

namespace {

bool is_space_byte(unsigned char c) { return std::isspace(c) != 0; }

// Word bytes: ASCII alphanumerics plus everything >= 0x80, so UTF-8
// sequences stay inside words.
bool is_word_byte(unsigned char c) { return std::isalnum(c) != 0 || c >= 0x80; }

std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  const std::size_t n = text.size();
  std::size_t i = 0;
  while (i < n) {
    const unsigned char c = static_cast<unsigned char>(text[i]);
    if (is_space_byte(c)) {
      ++i;
      continue;
    }
    if (is_word_byte(c)) {
      std::size_t j = i + 1;
      while (j < n) {
        const unsigned char cj = static_cast<unsigned char>(text[j]);
        if (is_word_byte(cj)) {
          ++j;
        } else if ((cj == '-' || cj == '\'') && j + 1 < n &&
                   is_word_byte(static_cast<unsigned char>(text[j + 1]))) {
          // internal hyphen or apostrophe stays in the word
          j += 2;
        } else {
          break;
        }
      }
      tokens.push_back({std::string(text.substr(i, j - i)), i, j});
      i = j;
    } else {
      // every other mark is a standalone single-byte token
      tokens.push_back({std::string(text.substr(i, 1)), i, i + 1});
      ++i;
    }
  }
  return tokens;
}

bool is_valid_pos_tag(std::string_view tag) {
  if (tag.empty()) return false;
  return std::all_of(tag.begin(), tag.end(), [](unsigned char c) {
    return (std::isupper(c) != 0) || (std::isdigit(c) != 0);
  });
}

void TaggerConfig::add_word(std::string_view word, std::string_view pos) {
  lexicon[to_lower(word)] = std::string(pos);
}

void TaggerConfig::add_suffix(std::string_view suffix, std::string_view pos) {
  suffix_rules.push_back({to_lower(suffix), std::string(pos)});
}

std::vector<TaggedToken> pos_tag(const std::vector<Token>& tokens,
                                 const TaggerConfig& config) {
  std::vector<TaggedToken> tagged;
  tagged.reserve(tokens.size());
  for (const Token& tok : tokens) {
    const std::string lowered = to_lower(tok.text);
    std::string pos;
    if (auto it = config.lexicon.find(lowered); it != config.lexicon.end()) {
      pos = it->second;
    } else {
      const SuffixRule* best = nullptr;
      for (const SuffixRule& rule : config.suffix_rules) {
        if (rule.suffix.size() > lowered.size()) continue;
        if (best != nullptr && rule.suffix.size() <= best->suffix.size()) continue;
        if (lowered.compare(lowered.size() - rule.suffix.size(),
                            rule.suffix.size(), rule.suffix) == 0) {
          best = &rule;
        }
      }
      pos = best != nullptr ? best->pos : config.default_pos;
    }
    tagged.push_back({tok, std::move(pos)});
  }
  return tagged;
}

std::string stem_phrase(std::string_view phrase) {
  std::string out;
  std::size_t i = 0;
  const std::size_t n = phrase.size();
  while (i < n) {
    while (i < n && is_space_byte(static_cast<unsigned char>(phrase[i]))) ++i;
    if (i >= n) break;
    std::size_t j = i;
    while (j < n && !is_space_byte(static_cast<unsigned char>(phrase[j]))) ++j;
    if (!out.empty()) out.push_back(' ');
    out += stem(phrase.substr(i, j - i));
    i = j;
  }
  return out;
}

TaggerConfig default_tagger_config() {
  TaggerConfig cfg;
  cfg.default_pos = "NN";

  struct Entry {
    const char* word;
    const char* pos;
  };
  static constexpr Entry kLexicon[] = {
      {"the", "DT"},    {"a", "DT"},       {"an", "DT"},     {"this", "DT"},
      {"that", "DT"},   {"these", "DT"},   {"those", "DT"},  {"each", "DT"},
      {"every", "DT"},  {"some", "DT"},    {"any", "DT"},    {"no", "DT"},
      {"all", "DT"},    {"both", "DT"},    {"another", "DT"},
      {"my", "DT"},     {"your", "DT"},    {"his", "DT"},    {"its", "DT"},
      {"our", "DT"},    {"their", "DT"},   {"her", "DT"},
      {"and", "CC"},    {"or", "CC"},      {"but", "CC"},    {"nor", "CC"},
      {"yet", "CC"},
      {"of", "IN"},     {"in", "IN"},      {"on", "IN"},     {"at", "IN"},
      {"by", "IN"},     {"for", "IN"},     {"with", "IN"},   {"from", "IN"},
      {"as", "IN"},     {"into", "IN"},    {"onto", "IN"},   {"over", "IN"},
      {"under", "IN"},  {"between", "IN"}, {"among", "IN"},  {"through", "IN"},
      {"during", "IN"}, {"within", "IN"},  {"without", "IN"},{"against", "IN"},
      {"about", "IN"},  {"after", "IN"},   {"before", "IN"}, {"if", "IN"},
      {"because", "IN"},{"while", "IN"},   {"than", "IN"},   {"via", "IN"},
      {"per", "IN"},    {"since", "IN"},
      {"to", "TO"},
      {"i", "PRP"},     {"you", "PRP"},    {"he", "PRP"},    {"she", "PRP"},
      {"it", "PRP"},    {"we", "PRP"},     {"they", "PRP"},  {"them", "PRP"},
      {"him", "PRP"},   {"us", "PRP"},
      {"is", "VBZ"},    {"are", "VBP"},    {"was", "VBD"},   {"were", "VBD"},
      {"be", "VB"},     {"been", "VBN"},   {"being", "VBG"}, {"am", "VBP"},
      {"has", "VBZ"},   {"have", "VBP"},   {"had", "VBD"},   {"having", "VBG"},
      {"do", "VBP"},    {"does", "VBZ"},   {"did", "VBD"},   {"done", "VBN"},
      {"can", "MD"},    {"could", "MD"},   {"will", "MD"},   {"would", "MD"},
      {"shall", "MD"},  {"should", "MD"},  {"may", "MD"},    {"might", "MD"},
      {"must", "MD"},
      {"not", "RB"},    {"very", "RB"},    {"also", "RB"},   {"only", "RB"},
      {"then", "RB"},   {"there", "RB"},   {"here", "RB"},   {"now", "RB"},
      {"more", "RBR"},  {"most", "RBS"},   {"well", "RB"},   {"still", "RB"},
      {"so", "RB"},     {"too", "RB"},     {"thus", "RB"},   {"however", "RB"},
      {"often", "RB"},
      {"who", "WP"},    {"what", "WP"},    {"whom", "WP"},
      {"which", "WDT"}, {"whose", "WDT"},
      {"when", "WRB"},  {"where", "WRB"},  {"why", "WRB"},   {"how", "WRB"},
      {"new", "JJ"},    {"good", "JJ"},    {"large", "JJ"},  {"small", "JJ"},
      {"high", "JJ"},   {"low", "JJ"},     {"deep", "JJ"},   {"long", "JJ"},
      {"short", "JJ"},  {"other", "JJ"},   {"such", "JJ"},   {"same", "JJ"},
      {"first", "JJ"},  {"last", "JJ"},    {"many", "JJ"},   {"several", "JJ"},
      {"few", "JJ"},    {"own", "JJ"},     {"main", "JJ"},   {"novel", "JJ"},
      {"use", "VB"},    {"uses", "VBZ"},   {"used", "VBN"},  {"using", "VBG"},
      {"show", "VB"},   {"shows", "VBZ"},  {"shown", "VBN"},
      {"propose", "VB"},{"proposes", "VBZ"},{"proposed", "VBN"},
      {"one", "CD"},    {"two", "CD"},     {"three", "CD"},  {"four", "CD"},
      {"five", "CD"},   {"ten", "CD"},
      // punctuation and symbols
      {".", "SYM"},     {",", "SYM"},      {";", "SYM"},     {":", "SYM"},
      {"!", "SYM"},     {"?", "SYM"},      {"(", "SYM"},     {")", "SYM"},
      {"[", "SYM"},     {"]", "SYM"},      {"{", "SYM"},     {"}", "SYM"},
      {"\"", "SYM"},    {"'", "SYM"},      {"-", "SYM"},     {"/", "SYM"},
      {"%", "SYM"},     {"&", "SYM"},      {"$", "SYM"},     {"#", "SYM"},
      {"*", "SYM"},     {"+", "SYM"},      {"=", "SYM"},     {"<", "SYM"},
      {">", "SYM"},     {"@", "SYM"},      {"_", "SYM"},     {"`", "SYM"},
      {"~", "SYM"},     {"|", "SYM"},      {"\\", "SYM"},    {"^", "SYM"},
  };
  for (const Entry& e : kLexicon) cfg.add_word(e.word, e.pos);

  static constexpr Entry kSuffixes[] = {
      {"ing", "VBG"},  {"ed", "VBD"},    {"ly", "RB"},
      {"ness", "NN"},  {"ment", "NN"},   {"tion", "NN"},  {"sion", "NN"},
      {"ity", "NN"},   {"ism", "NN"},    {"ship", "NN"},
      {"ance", "NN"},  {"ence", "NN"},   {"ogy", "NN"},
      {"ous", "JJ"},   {"ful", "JJ"},    {"ive", "JJ"},   {"able", "JJ"},
      {"ible", "JJ"},  {"al", "JJ"},     {"ish", "JJ"},   {"less", "JJ"},
      {"est", "JJS"},  {"ies", "NNS"},   {"ss", "NN"},    {"s", "NNS"},
      {"0", "CD"},     {"1", "CD"},      {"2", "CD"},     {"3", "CD"},
      {"4", "CD"},     {"5", "CD"},      {"6", "CD"},     {"7", "CD"},
      {"8", "CD"},     {"9", "CD"},
  };
  for (const Entry& e : kSuffixes) cfg.add_suffix(e.word, e.pos);
  return cfg;
}

namespace {

enum class RuleFileKind { Lexicon, Suffix };

void load_rule_lines(std::string_view text, RuleFileKind kind, TaggerConfig& config,
                     const std::string& origin) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    ++line_no;
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    const std::size_t tab = line.find('\t');
    if (tab == std::string_view::npos || tab == 0 || tab + 1 >= line.size()) {
      throw_error(ErrorKind::Data,
                  origin + ":" + std::to_string(line_no) +
                      ": expected `entry<TAB>POS`");
    }
    const std::string_view entry = line.substr(0, tab);
    const std::string_view tag = line.substr(tab + 1);
    if (!is_valid_pos_tag(tag)) {
      throw_error(ErrorKind::Data, origin + ":" + std::to_string(line_no) +
                                       ": invalid POS tag '" + std::string(tag) + "'");
    }
    if (kind == RuleFileKind::Lexicon)
      config.add_word(entry, tag);
    else
      config.add_suffix(entry, tag);
  }
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw_error(ErrorKind::Data, "cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

void load_lexicon(std::string_view text, TaggerConfig& config) {
  load_rule_lines(text, RuleFileKind::Lexicon, config, "<lexicon>");
}

void load_suffix_rules(std::string_view text, TaggerConfig& config) {
  load_rule_lines(text, RuleFileKind::Suffix, config, "<suffix-rules>");
}

void load_lexicon_file(const std::string& path, TaggerConfig& config) {
  load_rule_lines(slurp(path), RuleFileKind::Lexicon, config, path);
}

void load_suffix_rules_file(const std::string& path, TaggerConfig& config) {
  load_rule_lines(slurp(path), RuleFileKind::Suffix, config, path);
}

std::vector<std::vector<TaggedToken>> parse_pretagged(std::string_view text) {
  std::vector<std::vector<TaggedToken>> documents;
  std::vector<TaggedToken> current;
  std::size_t offset = 0;
  std::size_t line_no = 0;
  std::size_t pos = 0;

  auto flush = [&] {
    if (!current.empty()) {
      documents.push_back(std::move(current));
      current.clear();
      offset = 0;
    }
  };

  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    ++line_no;
    const bool last = eol == std::string_view::npos;
    pos = last ? text.size() + 1 : eol + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) {
      flush();
      continue;
    }
    const std::size_t tab = line.find('\t');
    if (tab == std::string_view::npos || tab == 0 || tab + 1 >= line.size()) {
      throw_error(ErrorKind::Data, "pre-tagged input line " + std::to_string(line_no) +
                                       ": expected `surface<TAB>POS`");
    }
    std::string surface(line.substr(0, tab));
    std::string tag(line.substr(tab + 1));
    if (!is_valid_pos_tag(tag)) {
      throw_error(ErrorKind::Data, "pre-tagged input line " + std::to_string(line_no) +
                                       ": invalid POS tag '" + tag + "'");
    }
    if (!current.empty()) ++offset;  // single joining space
    Token tok{std::move(surface), offset, 0};
    tok.char_end = tok.char_start + tok.text.size();
    offset = tok.char_end;
    current.push_back({std::move(tok), std::move(tag)});
  }
  flush();
  return documents;
}

std::string pretagged_text(const std::vector<TaggedToken>& tagged) {
  std::string out;
  for (std::size_t i = 0; i < tagged.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out += tagged[i].token.text;
  }
  return out;
}

}  // namespace keyrank
