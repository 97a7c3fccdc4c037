// Porter stemmer, the 1980 algorithm. Operates on lowercase words; words
// of length <= 2 are returned unchanged.

#include <algorithm>
#include <array>
#include <cctype>
#include <string>
#include <string_view>

#include "keyrank/textproc.hpp"

namespace keyrank {

namespace {

bool is_consonant(const std::string& w, std::size_t i) {
  switch (w[i]) {
    case 'a':
    case 'e':
    case 'i':
    case 'o':
    case 'u':
      return false;
    case 'y':
      return i == 0 ? true : !is_consonant(w, i - 1);
    default:
      return true;
  }
}

// m in the [C](VC)^m[V] decomposition of the stem.
int measure(const std::string& w, std::size_t len) {
  std::size_t i = 0;
  int m = 0;
  while (i < len && is_consonant(w, i)) ++i;
  for (;;) {
    while (i < len && !is_consonant(w, i)) ++i;
    if (i >= len) break;
    while (i < len && is_consonant(w, i)) ++i;
    ++m;
  }
  return m;
}

bool contains_vowel(const std::string& w, std::size_t len) {
  for (std::size_t i = 0; i < len; ++i)
    if (!is_consonant(w, i)) return true;
  return false;
}

bool ends_double_consonant(const std::string& w) {
  const std::size_t n = w.size();
  return n >= 2 && w[n - 1] == w[n - 2] && is_consonant(w, n - 1);
}

// *o: stem ends cvc where the final consonant is not w, x or y.
bool ends_cvc(const std::string& w, std::size_t len) {
  if (len < 3) return false;
  if (!is_consonant(w, len - 3) || is_consonant(w, len - 2) ||
      !is_consonant(w, len - 1))
    return false;
  const char c = w[len - 1];
  return c != 'w' && c != 'x' && c != 'y';
}

bool ends_with(const std::string& w, std::string_view suffix) {
  return w.size() >= suffix.size() &&
         w.compare(w.size() - suffix.size(), suffix.size(), suffix) == 0;
}

struct Rule {
  std::string_view match;
  std::string_view replace;
};

// Longest matching suffix wins; its m-condition then decides, with no
// fallback to shorter rules.
template <std::size_t N>
void apply_rules(std::string& w, const std::array<Rule, N>& rules, int min_m) {
  const Rule* best = nullptr;
  for (const Rule& r : rules) {
    if (ends_with(w, r.match) && (best == nullptr || r.match.size() > best->match.size()))
      best = &r;
  }
  if (best == nullptr) return;
  const std::size_t stem_len = w.size() - best->match.size();
  if (measure(w, stem_len) > min_m) {
    w.resize(stem_len);
    w.append(best->replace);
  }
}

void step1a(std::string& w) {
  if (ends_with(w, "sses"))
    w.resize(w.size() - 2);
  else if (ends_with(w, "ies"))
    w.resize(w.size() - 2);
  else if (ends_with(w, "ss"))
    ;
  else if (ends_with(w, "s"))
    w.pop_back();
}

void step1b(std::string& w) {
  if (ends_with(w, "eed")) {
    if (measure(w, w.size() - 3) > 0) w.pop_back();
    return;
  }
  bool stripped = false;
  if (ends_with(w, "ed") && contains_vowel(w, w.size() - 2)) {
    w.resize(w.size() - 2);
    stripped = true;
  } else if (ends_with(w, "ing") && contains_vowel(w, w.size() - 3)) {
    w.resize(w.size() - 3);
    stripped = true;
  }
  if (!stripped) return;
  if (ends_with(w, "at") || ends_with(w, "bl") || ends_with(w, "iz")) {
    w.push_back('e');
  } else if (ends_double_consonant(w)) {
    const char c = w.back();
    if (c != 'l' && c != 's' && c != 'z') w.pop_back();
  } else if (measure(w, w.size()) == 1 && ends_cvc(w, w.size())) {
    w.push_back('e');
  }
}

void step1c(std::string& w) {
  if (ends_with(w, "y") && contains_vowel(w, w.size() - 1)) w.back() = 'i';
}

void step2(std::string& w) {
  static constexpr std::array<Rule, 20> rules{{
      {"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"},
      {"anci", "ance"},   {"izer", "ize"},    {"abli", "able"},
      {"alli", "al"},     {"entli", "ent"},   {"eli", "e"},
      {"ousli", "ous"},   {"ization", "ize"}, {"ation", "ate"},
      {"ator", "ate"},    {"alism", "al"},    {"iveness", "ive"},
      {"fulness", "ful"}, {"ousness", "ous"}, {"aliti", "al"},
      {"iviti", "ive"},   {"biliti", "ble"},
  }};
  apply_rules(w, rules, 0);
}

void step3(std::string& w) {
  static constexpr std::array<Rule, 7> rules{{
      {"icate", "ic"}, {"ative", ""}, {"alize", "al"}, {"iciti", "ic"},
      {"ical", "ic"},  {"ful", ""},   {"ness", ""},
  }};
  apply_rules(w, rules, 0);
}

void step4(std::string& w) {
  static constexpr std::array<Rule, 19> rules{{
      {"al", ""},  {"ance", ""}, {"ence", ""},  {"er", ""},   {"ic", ""},
      {"able", ""}, {"ible", ""}, {"ant", ""},  {"ement", ""}, {"ment", ""},
      {"ent", ""}, {"ion", ""},  {"ou", ""},    {"ism", ""},  {"ate", ""},
      {"iti", ""}, {"ous", ""},  {"ive", ""},   {"ize", ""},
  }};
  const Rule* best = nullptr;
  for (const Rule& r : rules) {
    if (ends_with(w, r.match) && (best == nullptr || r.match.size() > best->match.size()))
      best = &r;
  }
  if (best == nullptr) return;
  const std::size_t stem_len = w.size() - best->match.size();
  if (measure(w, stem_len) <= 1) return;
  // ION only strips after s or t
  if (best->match == "ion" && stem_len > 0 && w[stem_len - 1] != 's' &&
      w[stem_len - 1] != 't')
    return;
  w.resize(stem_len);
}

void step5a(std::string& w) {
  if (!ends_with(w, "e")) return;
  const std::size_t stem_len = w.size() - 1;
  const int m = measure(w, stem_len);
  if (m > 1 || (m == 1 && !ends_cvc(w, stem_len))) w.pop_back();
}

void step5b(std::string& w) {
  if (measure(w, w.size()) > 1 && ends_double_consonant(w) && w.back() == 'l')
    w.pop_back();
}

}  // namespace

std::string stem(std::string_view word) {
  std::string w(word);
  std::transform(w.begin(), w.end(), w.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (w.size() <= 2) return w;
  step1a(w);
  step1b(w);
  step1c(w);
  step2(w);
  step3(w);
  step4(w);
  step5a(w);
  step5b(w);
  return w;
}

}  // namespace keyrank
