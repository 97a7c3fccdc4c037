#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "keyrank/textproc.hpp"

namespace keyrank {

// A noun-phrase chunk. surface keeps original case, words joined by
// single spaces; stemmed_key is the lowercased per-word Porter stems
// joined the same way.
struct Candidate {
  std::string surface;
  std::string stemmed_key;
  std::size_t span_begin = 0;  // token index, inclusive
  std::size_t span_end = 0;    // token index, exclusive
  std::size_t first_char_offset = 0;
};

// NN.*
bool tag_is_noun(std::string_view pos);
// NN.* | JJ
bool tag_in_chunk(std::string_view pos);

// All maximal chunks matching (NN.*|JJ)*NN.*: take each maximal run of
// chunkable tags, trim trailing JJs, keep the span if a noun remains.
// Output ordered by first_char_offset, spans pairwise non-overlapping.
std::vector<Candidate> extract_candidates(const std::vector<TaggedToken>& tagged);

// Keeps the first occurrence of each distinct stemmed_key.
std::vector<Candidate> dedup_candidates(const std::vector<Candidate>& cands);

}  // namespace keyrank
