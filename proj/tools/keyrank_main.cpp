// keyrank: prompt-based unsupervised keyphrase extraction and the
// benchmark harness around it.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "keyrank/errors.hpp"
#include "keyrank/harness.hpp"

namespace {

using namespace keyrank;

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw_error(ErrorKind::Data, "cannot open input: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw_error(ErrorKind::Data, "cannot write: " + path);
  out << content;
}

struct CommonOpts {
  RunConfig cfg;
  std::string scorer_name = "reference";
  std::string catalog_path;
  std::string lexicon_path;
  std::string suffix_rules_path;
  bool no_builtin_tagger = false;
};

void add_scorer_flags(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--scorer", opts.scorer_name, "Scoring backend: reference|remote")
      ->check(CLI::IsMember({"reference", "remote"}));
  cmd->add_option("--endpoint", opts.cfg.endpoint_url,
                  "Remote scorer URL (default $KEYRANK_SCORER_URL)");
  cmd->add_option("--max-encoder-tokens", opts.cfg.max_encoder_tokens,
                  "Document tokens kept for the encoder input")
      ->check(CLI::PositiveNumber);
}

void add_tagger_flags(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--lexicon", opts.lexicon_path, "Extra word<TAB>POS lexicon file");
  cmd->add_option("--suffix-rules", opts.suffix_rules_path,
                  "Extra suffix<TAB>POS rule file (takes precedence)");
  cmd->add_flag("--no-builtin-tagger", opts.no_builtin_tagger,
                "Start from an empty tagger instead of the built-in one");
}

void add_eval_flags(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--top-k", opts.cfg.top_k, "Keyphrases kept per document")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--ks", opts.cfg.eval_ks, "Evaluation cutoffs (default 5,10,15)")
      ->delimiter(',');
  std::map<std::string, Aggregation> agg{{"macro", Aggregation::Macro},
                                         {"micro", Aggregation::Micro}};
  cmd->add_option("--aggregation", opts.cfg.aggregation, "macro|micro")
      ->transform(CLI::CheckedTransformer(agg, CLI::ignore_case));
  cmd->add_flag("--present-only", opts.cfg.present_only,
                "Drop gold phrases absent from the document before scoring");
  cmd->add_option("--workers", opts.cfg.workers, "Worker threads over documents")
      ->check(CLI::PositiveNumber);
}

void finalize_config(CommonOpts& opts) {
  opts.cfg.scorer =
      opts.scorer_name == "remote" ? ScorerBackend::Remote : ScorerBackend::Reference;
  if (opts.no_builtin_tagger) opts.cfg.tagger = TaggerConfig{};
  if (!opts.lexicon_path.empty()) load_lexicon_file(opts.lexicon_path, opts.cfg.tagger);
  if (!opts.suffix_rules_path.empty()) {
    TaggerConfig extra;
    load_suffix_rules_file(opts.suffix_rules_path, extra);
    // user rules win length ties over built-ins
    extra.suffix_rules.insert(extra.suffix_rules.end(),
                              opts.cfg.tagger.suffix_rules.begin(),
                              opts.cfg.tagger.suffix_rules.end());
    opts.cfg.tagger.suffix_rules = std::move(extra.suffix_rules);
  }
}

std::vector<PromptTemplate> catalog_for(const CommonOpts& opts) {
  if (opts.catalog_path.empty()) return builtin_catalog();
  return load_catalog_file(opts.catalog_path);
}

std::string dataset_label(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

std::string render_single(const SweepReport& report, const std::string& format) {
  if (format == "csv") return to_csv(report);
  if (format == "md") return to_markdown(report);
  return to_json(report);
}

int run(int argc, char** argv) {
  CLI::App app{"Prompt-based unsupervised keyphrase extraction toolkit"};
  app.require_subcommand(1);

  // ---- extract ----
  CommonOpts ex;
  std::string ex_input = "-";
  std::string ex_text;
  std::string ex_prompt = "p2_6";
  std::string ex_out;
  bool ex_pretagged = false;
  auto* extract_cmd =
      app.add_subcommand("extract", "Rank keyphrases for one document (JSON to stdout)");
  extract_cmd->add_option("input", ex_input, "Document file, or - for stdin");
  extract_cmd->add_option("--text", ex_text, "Document text given inline");
  extract_cmd->add_option("--prompt", ex_prompt, "Prompt template id");
  extract_cmd->add_option("--catalog", ex.catalog_path, "Prompt catalog JSON file");
  extract_cmd->add_option("--top-k", ex.cfg.top_k, "Keyphrases to emit")
      ->check(CLI::PositiveNumber);
  extract_cmd->add_flag("--pretagged", ex_pretagged,
                        "Input is pre-tagged surface<TAB>POS lines (one document)");
  extract_cmd->add_option("--out", ex_out, "Write JSON here instead of stdout");
  add_scorer_flags(extract_cmd, ex);
  add_tagger_flags(extract_cmd, ex);

  // ---- benchmark ----
  CommonOpts bm;
  std::string bm_dataset;
  std::string bm_prompt = "p2_6";
  std::string bm_format = "json";
  std::string bm_out;
  std::string bm_log;
  auto* bench_cmd =
      app.add_subcommand("benchmark", "Evaluate one prompt on a JSONL dataset");
  bench_cmd->add_option("dataset", bm_dataset, "JSONL dataset path")->required();
  bench_cmd->add_option("--prompt", bm_prompt, "Prompt template id");
  bench_cmd->add_option("--catalog", bm.catalog_path, "Prompt catalog JSON file");
  bench_cmd->add_option("--format", bm_format, "Stdout format")
      ->check(CLI::IsMember({"csv", "md", "json"}));
  bench_cmd->add_option("--out", bm_out, "Write the report here instead of stdout");
  bench_cmd->add_option("--log", bm_log, "Per-document audit JSONL path");
  add_scorer_flags(bench_cmd, bm);
  add_tagger_flags(bench_cmd, bm);
  add_eval_flags(bench_cmd, bm);

  // ---- sweep ----
  CommonOpts sw;
  std::vector<std::string> sw_datasets;
  std::vector<std::string> sw_prompts;
  std::string sw_format = "csv";
  std::string sw_out;
  auto* sweep_cmd = app.add_subcommand(
      "sweep", "Evaluate a prompt grid across datasets, with Avg. rows");
  sweep_cmd->add_option("datasets", sw_datasets, "JSONL dataset paths")->required();
  sweep_cmd->add_option("--prompts", sw_prompts,
                        "Prompt ids (default: every catalog template)")
      ->delimiter(',');
  sweep_cmd->add_option("--catalog", sw.catalog_path, "Prompt catalog JSON file");
  sweep_cmd->add_option("--format", sw_format, "Stdout format")
      ->check(CLI::IsMember({"csv", "md", "json"}));
  sweep_cmd->add_option("--out", sw_out,
                        "Base path; writes BASE.csv, BASE.md and BASE.json");
  add_scorer_flags(sweep_cmd, sw);
  add_tagger_flags(sweep_cmd, sw);
  add_eval_flags(sweep_cmd, sw);

  // ---- report ----
  std::string rp_input;
  std::string rp_format = "md";
  std::string rp_out;
  auto* report_cmd =
      app.add_subcommand("report", "Re-render a saved sweep JSON as CSV or Markdown");
  report_cmd->add_option("sweep_json", rp_input, "Sweep report JSON path")->required();
  report_cmd->add_option("--format", rp_format, "Output format")
      ->check(CLI::IsMember({"csv", "md", "json"}));
  report_cmd->add_option("--out", rp_out, "Write here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (extract_cmd->parsed()) {
    finalize_config(ex);
    ex.cfg.prompt_ids = {ex_prompt};
    const auto catalog = catalog_for(ex);
    const PromptTemplate prompt = resolve_prompts({ex_prompt}, &catalog).front();
    auto scorer = make_scorer(ex.cfg);

    std::vector<ScoredCandidate> ranked;
    if (ex_pretagged) {
      const auto documents = parse_pretagged(read_input(ex_input));
      if (documents.size() != 1)
        throw_error(ErrorKind::Data, "expected exactly one pre-tagged document, got " +
                                         std::to_string(documents.size()));
      ranked = extract_ranked_pretagged(documents.front(), prompt, *scorer, ex.cfg);
    } else {
      const std::string text = !ex_text.empty() ? ex_text : read_input(ex_input);
      ranked = extract_ranked(text, prompt, *scorer, ex.cfg);
    }
    write_output(ex_out, keyphrases_to_json(ranked, static_cast<std::size_t>(ex.cfg.top_k)));
    return 0;
  }

  if (bench_cmd->parsed()) {
    finalize_config(bm);
    const auto catalog = catalog_for(bm);
    const PromptTemplate prompt = resolve_prompts({bm_prompt}, &catalog).front();
    auto scorer = make_scorer(bm.cfg);
    const auto docs = load_dataset_file(bm_dataset);
    BenchmarkResult result = run_benchmark(docs, prompt, *scorer, bm.cfg);

    if (!bm_log.empty()) {
      std::ofstream log(bm_log, std::ios::binary);
      if (!log) throw_error(ErrorKind::Data, "cannot write: " + bm_log);
      for (const DocumentResult& doc : result.per_document)
        log << document_audit_json(doc) << "\n";
    }

    SweepReport single;
    single.ks = bm.cfg.eval_ks;
    single.rows.push_back(
        {prompt.id, scorer->name(), dataset_label(bm_dataset), result.report});
    write_output(bm_out, render_single(single, bm_format));
    return 0;
  }

  if (sweep_cmd->parsed()) {
    finalize_config(sw);
    const auto catalog = catalog_for(sw);
    std::vector<PromptTemplate> prompts;
    if (sw_prompts.empty()) {
      prompts = catalog;
    } else {
      prompts = resolve_prompts(sw_prompts, &catalog);
    }
    auto scorer = make_scorer(sw.cfg);

    std::vector<std::pair<std::string, std::vector<LabeledDocument>>> datasets;
    for (const std::string& path : sw_datasets)
      datasets.emplace_back(dataset_label(path), load_dataset_file(path));

    const SweepReport report = run_sweep(datasets, prompts, *scorer, sw.cfg);
    if (!sw_out.empty()) {
      write_output(sw_out + ".csv", to_csv(report));
      write_output(sw_out + ".md", to_markdown(report));
      write_output(sw_out + ".json", to_json(report));
    }
    std::cout << render_single(report, sw_format);
    return 0;
  }

  if (report_cmd->parsed()) {
    const SweepReport report = sweep_from_json(read_input(rp_input));
    write_output(rp_out, render_single(report, rp_format));
    return 0;
  }

  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const keyrank::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
