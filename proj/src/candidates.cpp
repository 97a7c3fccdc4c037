#include "keyrank/candidates.hpp"

#include <unordered_set>

namespace keyrank {

bool tag_is_noun(std::string_view pos) {
  return pos.size() >= 2 && pos[0] == 'N' && pos[1] == 'N';
}

bool tag_in_chunk(std::string_view pos) { return tag_is_noun(pos) || pos == "JJ"; }

namespace {

Candidate make_candidate(const std::vector<TaggedToken>& tagged, std::size_t begin,
                         std::size_t end) {
  Candidate c;
  c.span_begin = begin;
  c.span_end = end;
  c.first_char_offset = tagged[begin].token.char_start;
  for (std::size_t i = begin; i < end; ++i) {
    if (i > begin) {
      c.surface.push_back(' ');
      c.stemmed_key.push_back(' ');
    }
    c.surface += tagged[i].token.text;
    c.stemmed_key += stem(tagged[i].token.text);
  }
  return c;
}

}  // namespace

std::vector<Candidate> extract_candidates(const std::vector<TaggedToken>& tagged) {
  std::vector<Candidate> out;
  const std::size_t n = tagged.size();
  std::size_t i = 0;
  while (i < n) {
    if (!tag_in_chunk(tagged[i].pos)) {
      ++i;
      continue;
    }
    std::size_t run_end = i;
    while (run_end < n && tag_in_chunk(tagged[run_end].pos)) ++run_end;
    // trim trailing adjectives; the chunk must end in a noun
    std::size_t last_noun = run_end;
    while (last_noun > i && !tag_is_noun(tagged[last_noun - 1].pos)) --last_noun;
    if (last_noun > i) out.push_back(make_candidate(tagged, i, last_noun));
    i = run_end;
  }
  return out;
}

std::vector<Candidate> dedup_candidates(const std::vector<Candidate>& cands) {
  std::vector<Candidate> out;
  std::unordered_set<std::string> seen;
  out.reserve(cands.size());
  for (const Candidate& c : cands) {
    if (seen.insert(c.stemmed_key).second) out.push_back(c);
  }
  return out;
}

}  // namespace keyrank
