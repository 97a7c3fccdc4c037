#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "keyrank/evaluation.hpp"
#include "keyrank/prompts.hpp"
#include "keyrank/scorer_client.hpp"
#include "keyrank/scoring.hpp"
#include "keyrank/textproc.hpp"

namespace keyrank {

struct RunConfig {
  std::vector<std::string> prompt_ids;
  ScorerBackend scorer = ScorerBackend::Reference;
  std::string endpoint_url;  // remote backend; empty = KEYRANK_SCORER_URL
  int top_k = 15;
  std::vector<int> eval_ks = {5, 10, 15};
  std::size_t max_encoder_tokens = 512;
  Aggregation aggregation = Aggregation::Macro;
  bool present_only = false;
  std::size_t workers = 1;
  TaggerConfig tagger = default_tagger_config();
};

// eval_ks ascending and positive, top_k >= max(eval_ks). Throws
// Error(Config).
void validate_eval_config(const RunConfig& cfg);

std::unique_ptr<Scorer> make_scorer(const RunConfig& cfg);

// Resolves each id against the built-in catalog (or a loaded user
// catalog when given). Unknown id -> Error(Config).
std::vector<PromptTemplate> resolve_prompts(const std::vector<std::string>& ids,
                                            const std::vector<PromptTemplate>* catalog = nullptr);

// End-to-end ranking for one document: truncate, chunk, render, score,
// rank. Returns every deduplicated candidate in rank order.
std::vector<ScoredCandidate> extract_ranked(const std::string& document,
                                            const PromptTemplate& prompt, Scorer& scorer,
                                            const RunConfig& cfg);

// Same pipeline over externally supplied tags. The document text is the
// surfaces joined by single spaces; truncation keeps the first
// max_encoder_tokens tagged tokens.
std::vector<ScoredCandidate> extract_ranked_pretagged(
    const std::vector<TaggedToken>& tagged, const PromptTemplate& prompt, Scorer& scorer,
    const RunConfig& cfg);

struct DocumentResult {
  std::string doc_id;
  std::vector<ScoredCandidate> ranked;  // top_k entries
  DocScores scores;
  bool skipped = false;  // no gold left after --present-only
};

struct BenchmarkResult {
  EvalReport report;
  std::vector<DocumentResult> per_document;
};

BenchmarkResult run_benchmark(const std::vector<LabeledDocument>& docs,
                              const PromptTemplate& prompt, Scorer& scorer,
                              const RunConfig& cfg);

struct SweepRow {
  std::string prompt_id;
  std::string scorer_label;
  std::string dataset_id;  // "Avg." for the per-prompt average row
  EvalReport report;
};

struct SweepReport {
  std::vector<int> ks;
  std::vector<SweepRow> rows;
};

// One row per (prompt, dataset) ordered by (prompt_id, dataset_id), plus
// an Avg. row per prompt. Deterministic for any worker count.
SweepReport run_sweep(
    const std::vector<std::pair<std::string, std::vector<LabeledDocument>>>& datasets,
    const std::vector<PromptTemplate>& prompts, Scorer& scorer, const RunConfig& cfg);

// Fixed-point rendering used by every table: value as a percentage with
// 4 decimals, ties to even.
std::string format_fixed(double value, int digits);
std::string format_percent(double fraction);

std::string to_csv(const SweepReport& report);
std::string to_markdown(const SweepReport& report);
std::string to_json(const SweepReport& report);
SweepReport sweep_from_json(const std::string& json_text);

// {"keyphrases":[{"phrase","score","offset"}...]}
std::string keyphrases_to_json(const std::vector<ScoredCandidate>& ranked,
                               std::size_t top_k);

// One JSONL line per document: id, ranked keyphrases, per-K metrics.
std::string document_audit_json(const DocumentResult& result);

}  // namespace keyrank
