#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "keyrank/candidates.hpp"

namespace keyrank {

struct LabeledDocument {
  std::string id;
  std::string document;
  std::vector<std::string> gold_keyphrases;  // whitespace-normalized, non-empty
};

struct Prf {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Raw counts at one K, kept so micro aggregation can pool them.
struct MatchCounts {
  std::size_t matches = 0;
  std::size_t predicted = 0;  // min(k, #predictions)
  std::size_t gold = 0;       // distinct stemmed gold phrases
};

struct DocScores {
  std::map<int, Prf> per_k;
  std::map<int, MatchCounts> counts;
};

struct EvalReport {
  std::map<int, Prf> per_k;
  std::size_t num_documents = 0;
};

enum class Aggregation { Macro, Micro };

// JSONL: one {"id", "document", "keyphrases"} object per line. Errors
// carry the offending line number (parse) or document id (validation).
std::vector<LabeledDocument> load_dataset(std::istream& in);
std::vector<LabeledDocument> load_dataset_text(const std::string& text);
std::vector<LabeledDocument> load_dataset_file(const std::string& path);

// Collapses whitespace runs to single spaces, trims the ends.
std::string normalize_phrase(std::string_view phrase);

// Stemmed exact match of the top-min(k, #predictions) predictions against
// the distinct stemmed gold phrases; each gold phrase matches at most once.
// predicted_ranked must already be deduplicated by stemmed_key.
Prf f1_at_k(const std::vector<Candidate>& predicted_ranked,
            const std::vector<std::string>& gold, int k);
MatchCounts match_counts_at_k(const std::vector<Candidate>& predicted_ranked,
                              const std::vector<std::string>& gold, int k);
Prf prf_from_counts(const MatchCounts& counts);

DocScores score_document(const std::vector<Candidate>& predicted_ranked,
                         const std::vector<std::string>& gold,
                         const std::vector<int>& ks);

// Macro: mean of per-document metrics. Micro: pool counts, then divide.
EvalReport aggregate_documents(const std::vector<DocScores>& per_doc,
                               Aggregation mode = Aggregation::Macro);

// Unweighted mean of each metric at each K. All reports must carry the
// same K set.
EvalReport average_over_datasets(const std::vector<EvalReport>& reports);

// True when the gold phrase's stem sequence occurs contiguously in the
// document's stemmed word sequence (the --present-only filter).
bool gold_present_in(const std::string& stemmed_gold,
                     const std::vector<std::string>& stemmed_doc_words);

}  // namespace keyrank
