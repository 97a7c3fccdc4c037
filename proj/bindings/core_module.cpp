#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "keyrank/errors.hpp"
#include "keyrank/harness.hpp"

namespace py = pybind11;
using namespace keyrank;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Prompt-based unsupervised keyphrase extraction core";

  py::register_exception<Error>(m, "KeyrankError");

  py::class_<Token>(m, "Token")
      .def(py::init<>())
      .def_readwrite("text", &Token::text)
      .def_readwrite("char_start", &Token::char_start)
      .def_readwrite("char_end", &Token::char_end)
      .def("__repr__", [](const Token& t) {
        return "Token('" + t.text + "', " + std::to_string(t.char_start) + ", " +
               std::to_string(t.char_end) + ")";
      });

  py::class_<TaggedToken>(m, "TaggedToken")
      .def(py::init<>())
      .def_readwrite("token", &TaggedToken::token)
      .def_readwrite("pos", &TaggedToken::pos)
      .def("__repr__", [](const TaggedToken& t) {
        return "TaggedToken('" + t.token.text + "', " + t.pos + ")";
      });

  py::class_<TaggerConfig>(m, "TaggerConfig")
      .def(py::init<>())
      .def_readwrite("default_pos", &TaggerConfig::default_pos)
      .def("add_word", &TaggerConfig::add_word)
      .def("add_suffix", &TaggerConfig::add_suffix);

  py::class_<Candidate>(m, "Candidate")
      .def(py::init<>())
      .def_readwrite("surface", &Candidate::surface)
      .def_readwrite("stemmed_key", &Candidate::stemmed_key)
      .def_readwrite("span_begin", &Candidate::span_begin)
      .def_readwrite("span_end", &Candidate::span_end)
      .def_readwrite("first_char_offset", &Candidate::first_char_offset)
      .def("__repr__",
           [](const Candidate& c) { return "Candidate('" + c.surface + "')"; });

  py::class_<PromptTemplate>(m, "PromptTemplate")
      .def(py::init<>())
      .def(py::init([](std::string id, std::string encoder, std::string decoder) {
             PromptTemplate t{std::move(id), std::move(encoder), std::move(decoder)};
             validate_template(t);
             return t;
           }),
           py::arg("id"), py::arg("encoder"), py::arg("decoder"))
      .def_readwrite("id", &PromptTemplate::id)
      .def_readwrite("encoder_template", &PromptTemplate::encoder_template)
      .def_readwrite("decoder_template", &PromptTemplate::decoder_template);

  py::class_<RenderedPrompt>(m, "RenderedPrompt")
      .def_readwrite("encoder_text", &RenderedPrompt::encoder_text)
      .def_readwrite("decoder_text", &RenderedPrompt::decoder_text)
      .def_readwrite("candidate_begin", &RenderedPrompt::candidate_begin)
      .def_readwrite("candidate_end", &RenderedPrompt::candidate_end);

  py::class_<TokenLogProbs>(m, "TokenLogProbs")
      .def(py::init<>())
      .def_readwrite("tokens", &TokenLogProbs::tokens)
      .def_readwrite("logprobs", &TokenLogProbs::logprobs);

  py::class_<CandidateTokenWindow>(m, "CandidateTokenWindow")
      .def(py::init<>())
      .def_readwrite("first_token", &CandidateTokenWindow::first_token)
      .def_readwrite("token_count", &CandidateTokenWindow::token_count);

  py::class_<ScoredCandidate>(m, "ScoredCandidate")
      .def(py::init<>())
      .def_readwrite("candidate", &ScoredCandidate::candidate)
      .def_readwrite("pi_c", &ScoredCandidate::pi_c)
      .def("__repr__", [](const ScoredCandidate& sc) {
        return "ScoredCandidate('" + sc.candidate.surface + "', " +
               std::to_string(sc.pi_c) + ")";
      });

  py::class_<Prf>(m, "Prf")
      .def(py::init<>())
      .def_readwrite("precision", &Prf::precision)
      .def_readwrite("recall", &Prf::recall)
      .def_readwrite("f1", &Prf::f1);

  py::class_<LabeledDocument>(m, "LabeledDocument")
      .def(py::init<>())
      .def_readwrite("id", &LabeledDocument::id)
      .def_readwrite("document", &LabeledDocument::document)
      .def_readwrite("gold_keyphrases", &LabeledDocument::gold_keyphrases);

  py::class_<EvalReport>(m, "EvalReport")
      .def(py::init<>())
      .def_readwrite("per_k", &EvalReport::per_k)
      .def_readwrite("num_documents", &EvalReport::num_documents);

  // textproc
  m.def("tokenize", &tokenize, py::arg("text"));
  m.def("pos_tag", &pos_tag, py::arg("tokens"), py::arg("config"));
  m.def("stem", &stem, py::arg("word"));
  m.def("stem_phrase", &stem_phrase, py::arg("phrase"));
  m.def("default_tagger_config", &default_tagger_config);
  m.def("parse_pretagged", &parse_pretagged, py::arg("text"));

  // candidates
  m.def("extract_candidates", &extract_candidates, py::arg("tagged"));
  m.def("dedup_candidates", &dedup_candidates, py::arg("candidates"));

  // prompts
  m.def("builtin_catalog", [] { return builtin_catalog(); });
  m.def("load_catalog", &load_catalog, py::arg("json_text"));
  m.def("render", &render, py::arg("template"), py::arg("document_text"),
        py::arg("candidate_surface"));

  // scoring
  m.def("locate_candidate_window", &locate_candidate_window, py::arg("scored_tokens"),
        py::arg("rendered"));
  m.def("score_candidate", &score_candidate, py::arg("window"), py::arg("logprobs"));
  m.def("rank_candidates", &rank_candidates, py::arg("scored"));
  m.def("segment_concat_tokens", &segment_concat_tokens, py::arg("text"));
  m.def("reference_score", &reference_score, py::arg("document_tokens"),
        py::arg("decoder_tokens"));

  // evaluation
  m.def("load_dataset", &load_dataset_text, py::arg("jsonl_text"));
  m.def("f1_at_k", &f1_at_k, py::arg("predicted_ranked"), py::arg("gold"), py::arg("k"));
  m.def("average_over_datasets", &average_over_datasets, py::arg("reports"));

  // end-to-end pipeline with the reference scorer
  m.def(
      "extract_keyphrases",
      [](const std::string& document, const std::string& prompt_id, int top_k,
         std::size_t max_encoder_tokens) {
        RunConfig cfg;
        cfg.top_k = top_k;
        cfg.max_encoder_tokens = max_encoder_tokens;
        const PromptTemplate prompt = resolve_prompts({prompt_id}).front();
        auto scorer = make_reference_scorer();
        auto ranked = extract_ranked(document, prompt, *scorer, cfg);
        if (ranked.size() > static_cast<std::size_t>(top_k))
          ranked.resize(static_cast<std::size_t>(top_k));
        return ranked;
      },
      py::arg("document"), py::arg("prompt_id") = "p2_6", py::arg("top_k") = 15,
      py::arg("max_encoder_tokens") = 512);
}
