#include "keyrank/harness.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <mutex>
#include <thread>

#include "keyrank/errors.hpp"

namespace keyrank {

void validate_eval_config(const RunConfig& cfg) {
  if (cfg.eval_ks.empty()) throw_error(ErrorKind::Config, "--ks must name at least one K");
  for (int k : cfg.eval_ks)
    if (k <= 0) throw_error(ErrorKind::Config, "every K must be positive");
  if (!std::is_sorted(cfg.eval_ks.begin(), cfg.eval_ks.end()))
    throw_error(ErrorKind::Config, "--ks must be ascending");
  const int max_k = cfg.eval_ks.back();
  if (cfg.top_k < max_k)
    throw_error(ErrorKind::Config, "--top-k (" + std::to_string(cfg.top_k) +
                                       ") must be >= max of --ks (" +
                                       std::to_string(max_k) + ")");
  if (cfg.max_encoder_tokens == 0)
    throw_error(ErrorKind::Config, "--max-encoder-tokens must be positive");
}

std::unique_ptr<Scorer> make_scorer(const RunConfig& cfg) {
  if (cfg.scorer == ScorerBackend::Reference) return make_reference_scorer();
  ClientConfig client = client_config_from_env();
  if (!cfg.endpoint_url.empty()) client.endpoint_url = cfg.endpoint_url;
  return make_remote_scorer(std::move(client));
}

std::vector<PromptTemplate> resolve_prompts(const std::vector<std::string>& ids,
                                            const std::vector<PromptTemplate>* catalog) {
  const std::vector<PromptTemplate>& source =
      catalog != nullptr ? *catalog : builtin_catalog();
  std::vector<PromptTemplate> out;
  for (const std::string& id : ids) {
    const auto it = std::find_if(source.begin(), source.end(),
                                 [&](const PromptTemplate& t) { return t.id == id; });
    if (it == source.end())
      throw_error(ErrorKind::Config, "unknown prompt id '" + id + "'");
    out.push_back(*it);
  }
  return out;
}

namespace {

struct DocumentRun {
  std::vector<ScoredCandidate> ranked;
  std::vector<std::string> stemmed_words;  // of the truncated, tagged document
};

DocumentRun score_tagged_document(const std::vector<TaggedToken>& tagged,
                                  const std::string& document_text,
                                  const PromptTemplate& prompt, Scorer& scorer) {
  DocumentRun run;
  run.stemmed_words.reserve(tagged.size());
  for (const TaggedToken& tt : tagged) run.stemmed_words.push_back(stem(tt.token.text));

  const std::vector<Candidate> cands = dedup_candidates(extract_candidates(tagged));
  if (cands.empty()) return run;

  std::vector<RenderedPrompt> rendered;
  std::vector<std::string> decoder_texts;
  rendered.reserve(cands.size());
  decoder_texts.reserve(cands.size());
  for (const Candidate& c : cands) {
    rendered.push_back(render(prompt, document_text, c.surface));
    decoder_texts.push_back(rendered.back().decoder_text);
  }

  const std::vector<TokenLogProbs> scored =
      scorer.score(rendered.front().encoder_text, decoder_texts);
  if (scored.size() != cands.size())
    throw_error(ErrorKind::Contract, "scorer returned a misaligned batch");

  std::vector<ScoredCandidate> with_scores;
  with_scores.reserve(cands.size());
  for (std::size_t i = 0; i < cands.size(); ++i) {
    const CandidateTokenWindow window = locate_candidate_window(scored[i], rendered[i]);
    with_scores.push_back({cands[i], score_candidate(window, scored[i])});
  }
  run.ranked = rank_candidates(std::move(with_scores));
  return run;
}

DocumentRun run_document(const std::string& document, const PromptTemplate& prompt,
                         Scorer& scorer, const RunConfig& cfg) {
  ScorerConfig scorer_cfg{cfg.max_encoder_tokens,
                          cfg.scorer};
  const std::vector<std::string> backend_tokens =
      truncate_encoder_input(scorer.tokenize_document(document), scorer_cfg);
  std::string truncated_text;
  for (const std::string& tok : backend_tokens) truncated_text += tok;

  const std::vector<TaggedToken> tagged =
      pos_tag(tokenize(truncated_text), cfg.tagger);
  return score_tagged_document(tagged, truncated_text, prompt, scorer);
}

// bounded worker pool; results land in caller-owned slots keyed by index
void parallel_for(std::size_t count, std::size_t workers,
                  const std::function<void(std::size_t)>& fn) {
  if (count == 0) return;
  const std::size_t pool = std::max<std::size_t>(1, std::min(workers, count));
  if (pool == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> threads;
  threads.reserve(pool);
  for (std::size_t t = 0; t < pool; ++t) {
    threads.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          return;
        }
      }
    });
  }
  for (std::thread& th : threads) th.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

std::vector<ScoredCandidate> extract_ranked(const std::string& document,
                                            const PromptTemplate& prompt, Scorer& scorer,
                                            const RunConfig& cfg) {
  return run_document(document, prompt, scorer, cfg).ranked;
}

std::vector<ScoredCandidate> extract_ranked_pretagged(
    const std::vector<TaggedToken>& tagged, const PromptTemplate& prompt, Scorer& scorer,
    const RunConfig& cfg) {
  std::vector<TaggedToken> kept = tagged;
  if (kept.size() > cfg.max_encoder_tokens) kept.resize(cfg.max_encoder_tokens);
  return score_tagged_document(kept, pretagged_text(kept), prompt, scorer).ranked;
}

BenchmarkResult run_benchmark(const std::vector<LabeledDocument>& docs,
                              const PromptTemplate& prompt, Scorer& scorer,
                              const RunConfig& cfg) {
  validate_eval_config(cfg);
  if (docs.empty()) throw_error(ErrorKind::Config, "dataset has no documents");

  BenchmarkResult result;
  result.per_document.resize(docs.size());

  parallel_for(docs.size(), cfg.workers, [&](std::size_t i) {
    const LabeledDocument& doc = docs[i];
    DocumentRun run = run_document(doc.document, prompt, scorer, cfg);

    DocumentResult& out = result.per_document[i];
    out.doc_id = doc.id;
    out.ranked = run.ranked;
    if (out.ranked.size() > static_cast<std::size_t>(cfg.top_k))
      out.ranked.resize(static_cast<std::size_t>(cfg.top_k));

    std::vector<std::string> gold = doc.gold_keyphrases;
    if (cfg.present_only) {
      std::erase_if(gold, [&](const std::string& phrase) {
        return !gold_present_in(stem_phrase(phrase), run.stemmed_words);
      });
      if (gold.empty()) {
        out.skipped = true;
        return;
      }
    }

    std::vector<Candidate> predictions;
    predictions.reserve(out.ranked.size());
    for (const ScoredCandidate& sc : out.ranked) predictions.push_back(sc.candidate);
    out.scores = score_document(predictions, gold, cfg.eval_ks);
  });

  std::vector<DocScores> evaluated;
  evaluated.reserve(result.per_document.size());
  for (const DocumentResult& doc : result.per_document)
    if (!doc.skipped) evaluated.push_back(doc.scores);
  if (evaluated.empty())
    throw_error(ErrorKind::Data, "no document kept any gold keyphrase after filtering");
  result.report = aggregate_documents(evaluated, cfg.aggregation);
  return result;
}

SweepReport run_sweep(
    const std::vector<std::pair<std::string, std::vector<LabeledDocument>>>& datasets,
    const std::vector<PromptTemplate>& prompts, Scorer& scorer, const RunConfig& cfg) {
  validate_eval_config(cfg);
  if (datasets.empty()) throw_error(ErrorKind::Config, "sweep needs at least one dataset");
  if (prompts.empty()) throw_error(ErrorKind::Config, "sweep needs at least one prompt");

  std::vector<const PromptTemplate*> ordered_prompts;
  for (const PromptTemplate& t : prompts) ordered_prompts.push_back(&t);
  std::sort(ordered_prompts.begin(), ordered_prompts.end(),
            [](const PromptTemplate* a, const PromptTemplate* b) { return a->id < b->id; });

  std::vector<std::size_t> dataset_order(datasets.size());
  for (std::size_t i = 0; i < dataset_order.size(); ++i) dataset_order[i] = i;
  std::sort(dataset_order.begin(), dataset_order.end(), [&](std::size_t a, std::size_t b) {
    return datasets[a].first < datasets[b].first;
  });

  SweepReport report;
  report.ks = cfg.eval_ks;
  for (const PromptTemplate* prompt : ordered_prompts) {
    std::vector<EvalReport> dataset_reports;
    for (std::size_t idx : dataset_order) {
      BenchmarkResult bench = run_benchmark(datasets[idx].second, *prompt, scorer, cfg);
      dataset_reports.push_back(bench.report);
      report.rows.push_back(
          {prompt->id, scorer.name(), datasets[idx].first, std::move(bench.report)});
    }
    report.rows.push_back(
        {prompt->id, scorer.name(), "Avg.", average_over_datasets(dataset_reports)});
  }
  return report;
}

}  // namespace keyrank
