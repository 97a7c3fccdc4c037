#include "keyrank/prompts.hpp"

#include <fstream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "keyrank/errors.hpp"

namespace keyrank {

namespace {

constexpr std::string_view kDocumentSlot = "{document}";
constexpr std::string_view kCandidateSlot = "{candidate}";

std::size_t count_occurrences(std::string_view haystack, std::string_view needle) {
  std::size_t count = 0;
  std::size_t pos = haystack.find(needle);
  while (pos != std::string_view::npos) {
    ++count;
    pos = haystack.find(needle, pos + needle.size());
  }
  return count;
}

std::vector<PromptTemplate> make_builtin_catalog() {
  return {
      {"p1", "\"{document}\"", "\"{candidate}\""},
      {"p1_1", "Article: \"{document}\"", "\"{candidate}\""},
      {"p1_2", "\"{document}\"", "Keyphrases: \"{candidate}\""},
      {"p1_3", "Article: \"{document}\"", "Keyphrases: \"{candidate}\""},
      {"p2", "Article: \"{document}\"",
       "This article mainly talks about \"{candidate}\""},
      {"p2_1", "Passage: \"{document}\"",
       "This passage mainly talks about \"{candidate}\""},
      {"p2_2", "Book: \"{document}\"",
       "This book mainly talks about \"{candidate}\""},
      {"p2_3", "Document: \"{document}\"",
       "This document mainly talks about \"{candidate}\""},
      {"p2_4", "Paper: \"{document}\"",
       "This paper mainly talks about \"{candidate}\""},
      {"p2_5", "Content: \"{document}\"",
       "This content mainly talks about \"{candidate}\""},
      {"p2_6", "Text: \"{document}\"",
       "This text mainly talks about \"{candidate}\""},
      {"p3", "Article: \"{document}\"",
       "Keyphrases of this article are \"{candidate}\""},
      {"p3_1", "Article: \"{document}\"",
       "Keywords of this article are \"{candidate}\""},
      {"p3_2", "Article: \"{document}\"",
       "The keyphrases of this article are \"{candidate}\""},
      {"p3_3", "Article: \"{document}\"",
       "Extract keyphrases from this article: \"{candidate}\""},
  };
}

}  // namespace

const std::vector<PromptTemplate>& builtin_catalog() {
  static const std::vector<PromptTemplate> catalog = make_builtin_catalog();
  return catalog;
}

const PromptTemplate* find_builtin(std::string_view id) {
  for (const PromptTemplate& t : builtin_catalog()) {
    if (t.id == id) return &t;
  }
  return nullptr;
}

void validate_template(const PromptTemplate& t) {
  auto fail = [&](const std::string& what) {
    throw_error(ErrorKind::Data, "template '" + t.id + "': " + what);
  };
  if (t.id.empty()) throw_error(ErrorKind::Data, "template with empty id");
  if (count_occurrences(t.encoder_template, kDocumentSlot) != 1)
    fail("encoder must contain {document} exactly once");
  if (count_occurrences(t.encoder_template, kCandidateSlot) != 0)
    fail("encoder must not contain {candidate}");
  if (count_occurrences(t.decoder_template, kCandidateSlot) != 1)
    fail("decoder must contain {candidate} exactly once");
  if (count_occurrences(t.decoder_template, kDocumentSlot) != 0)
    fail("decoder must not contain {document}");
}

std::vector<PromptTemplate> load_catalog(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw_error(ErrorKind::Data, std::string("catalog: invalid JSON: ") + e.what());
  }
  if (!doc.is_array()) throw_error(ErrorKind::Data, "catalog: expected a JSON array");

  std::vector<PromptTemplate> out;
  std::unordered_set<std::string> ids;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto& entry = doc[i];
    if (!entry.is_object() || !entry.contains("id") || !entry.contains("encoder") ||
        !entry.contains("decoder") || !entry["id"].is_string() ||
        !entry["encoder"].is_string() || !entry["decoder"].is_string()) {
      throw_error(ErrorKind::Data, "catalog entry " + std::to_string(i) +
                                       ": expected {\"id\",\"encoder\",\"decoder\"} strings");
    }
    PromptTemplate t{entry["id"].get<std::string>(), entry["encoder"].get<std::string>(),
                     entry["decoder"].get<std::string>()};
    if (!ids.insert(t.id).second)
      throw_error(ErrorKind::Data, "catalog: duplicate template id '" + t.id + "'");
    validate_template(t);
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<PromptTemplate> load_catalog_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw_error(ErrorKind::Data, "cannot open catalog: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_catalog(ss.str());
}

RenderedPrompt render(const PromptTemplate& t, std::string_view document_text,
                      std::string_view candidate_surface) {
  RenderedPrompt rp;

  const std::size_t doc_at = t.encoder_template.find(kDocumentSlot);
  rp.encoder_text = t.encoder_template;
  rp.encoder_text.replace(doc_at, kDocumentSlot.size(), document_text);

  const std::size_t cand_at = t.decoder_template.find(kCandidateSlot);
  rp.decoder_text = t.decoder_template;
  rp.decoder_text.replace(cand_at, kCandidateSlot.size(), candidate_surface);
  rp.candidate_begin = cand_at;
  rp.candidate_end = cand_at + candidate_surface.size();
  return rp;
}

}  // namespace keyrank
