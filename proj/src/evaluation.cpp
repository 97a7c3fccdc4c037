#include "keyrank/evaluation.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "keyrank/errors.hpp"
#include "keyrank/textproc.hpp"

namespace keyrank {

std::string normalize_phrase(std::string_view phrase) {
  std::string out;
  bool in_word = false;
  for (char ch : phrase) {
    if (std::isspace(static_cast<unsigned char>(ch)) != 0) {
      in_word = false;
    } else {
      if (!in_word && !out.empty()) out.push_back(' ');
      out.push_back(ch);
      in_word = true;
    }
  }
  return out;
}

std::vector<LabeledDocument> load_dataset(std::istream& in) {
  std::vector<LabeledDocument> docs;
  std::unordered_set<std::string> ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw_error(ErrorKind::Data,
                  "dataset line " + std::to_string(line_no) + ": invalid JSON: " + e.what());
    }
    for (const char* field : {"id", "document", "keyphrases"}) {
      if (!obj.contains(field))
        throw_error(ErrorKind::Data, "dataset line " + std::to_string(line_no) +
                                         ": missing field '" + field + "'");
    }
    if (!obj["id"].is_string() || !obj["document"].is_string() ||
        !obj["keyphrases"].is_array())
      throw_error(ErrorKind::Data,
                  "dataset line " + std::to_string(line_no) + ": wrong field types");

    LabeledDocument doc;
    doc.id = obj["id"].get<std::string>();
    doc.document = obj["document"].get<std::string>();
    for (const auto& kp : obj["keyphrases"]) {
      if (!kp.is_string())
        throw_error(ErrorKind::Data, "dataset line " + std::to_string(line_no) +
                                         ": keyphrases must be strings");
      std::string normalized = normalize_phrase(kp.get<std::string>());
      if (!normalized.empty()) doc.gold_keyphrases.push_back(std::move(normalized));
    }
    if (doc.gold_keyphrases.empty())
      throw_error(ErrorKind::Data, "document '" + doc.id + "': empty keyphrase list");
    if (!ids.insert(doc.id).second)
      throw_error(ErrorKind::Data, "duplicate document id '" + doc.id + "'");
    docs.push_back(std::move(doc));
  }
  return docs;
}

std::vector<LabeledDocument> load_dataset_text(const std::string& text) {
  std::istringstream in(text);
  return load_dataset(in);
}

std::vector<LabeledDocument> load_dataset_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw_error(ErrorKind::Data, "cannot open dataset: " + path);
  return load_dataset(in);
}

MatchCounts match_counts_at_k(const std::vector<Candidate>& predicted_ranked,
                              const std::vector<std::string>& gold, int k) {
  if (k <= 0) throw_error(ErrorKind::Config, "k must be positive");

  // distinct stemmed gold phrases, each matchable at most once
  std::vector<std::string> gold_stems;
  std::unordered_set<std::string> seen;
  for (const std::string& phrase : gold) {
    std::string key = stem_phrase(phrase);
    if (key.empty()) continue;
    if (seen.insert(key).second) gold_stems.push_back(std::move(key));
  }

  MatchCounts counts;
  counts.gold = gold_stems.size();
  counts.predicted = std::min<std::size_t>(static_cast<std::size_t>(k),
                                           predicted_ranked.size());
  std::unordered_set<std::string> unmatched(gold_stems.begin(), gold_stems.end());
  for (std::size_t i = 0; i < counts.predicted; ++i) {
    if (unmatched.erase(predicted_ranked[i].stemmed_key) > 0) ++counts.matches;
  }
  return counts;
}

Prf prf_from_counts(const MatchCounts& counts) {
  Prf prf;
  if (counts.predicted > 0)
    prf.precision = static_cast<double>(counts.matches) /
                    static_cast<double>(counts.predicted);
  if (counts.gold > 0)
    prf.recall = static_cast<double>(counts.matches) / static_cast<double>(counts.gold);
  if (prf.precision + prf.recall > 0.0)
    prf.f1 = 2.0 * prf.precision * prf.recall / (prf.precision + prf.recall);
  return prf;
}

Prf f1_at_k(const std::vector<Candidate>& predicted_ranked,
            const std::vector<std::string>& gold, int k) {
  return prf_from_counts(match_counts_at_k(predicted_ranked, gold, k));
}

DocScores score_document(const std::vector<Candidate>& predicted_ranked,
                         const std::vector<std::string>& gold,
                         const std::vector<int>& ks) {
  DocScores scores;
  for (int k : ks) {
    MatchCounts counts = match_counts_at_k(predicted_ranked, gold, k);
    scores.per_k[k] = prf_from_counts(counts);
    scores.counts[k] = counts;
  }
  return scores;
}

EvalReport aggregate_documents(const std::vector<DocScores>& per_doc, Aggregation mode) {
  if (per_doc.empty())
    throw_error(ErrorKind::Config, "cannot aggregate zero documents");

  EvalReport report;
  report.num_documents = per_doc.size();
  const double n = static_cast<double>(per_doc.size());

  if (mode == Aggregation::Macro) {
    for (const DocScores& doc : per_doc) {
      for (const auto& [k, prf] : doc.per_k) {
        Prf& acc = report.per_k[k];
        acc.precision += prf.precision / n;
        acc.recall += prf.recall / n;
        acc.f1 += prf.f1 / n;
      }
    }
  } else {
    std::map<int, MatchCounts> pooled;
    for (const DocScores& doc : per_doc) {
      for (const auto& [k, counts] : doc.counts) {
        MatchCounts& acc = pooled[k];
        acc.matches += counts.matches;
        acc.predicted += counts.predicted;
        acc.gold += counts.gold;
      }
    }
    for (const auto& [k, counts] : pooled) report.per_k[k] = prf_from_counts(counts);
  }
  return report;
}

EvalReport average_over_datasets(const std::vector<EvalReport>& reports) {
  if (reports.empty())
    throw_error(ErrorKind::Config, "cannot average zero reports");

  const auto& first = reports.front();
  EvalReport avg;
  const double n = static_cast<double>(reports.size());
  for (const EvalReport& report : reports) {
    if (report.per_k.size() != first.per_k.size())
      throw_error(ErrorKind::Config, "reports carry different K sets");
    for (const auto& [k, prf] : report.per_k) {
      if (first.per_k.find(k) == first.per_k.end())
        throw_error(ErrorKind::Config, "reports carry different K sets");
      Prf& acc = avg.per_k[k];
      acc.precision += prf.precision / n;
      acc.recall += prf.recall / n;
      acc.f1 += prf.f1 / n;
    }
    avg.num_documents += report.num_documents;
  }
  return avg;
}

bool gold_present_in(const std::string& stemmed_gold,
                     const std::vector<std::string>& stemmed_doc_words) {
  std::vector<std::string> parts;
  std::istringstream ss(stemmed_gold);
  std::string word;
  while (ss >> word) parts.push_back(word);
  if (parts.empty() || parts.size() > stemmed_doc_words.size()) return false;
  for (std::size_t i = 0; i + parts.size() <= stemmed_doc_words.size(); ++i) {
    bool all = true;
    for (std::size_t j = 0; j < parts.size(); ++j) {
      if (stemmed_doc_words[i + j] != parts[j]) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

}  // namespace keyrank
