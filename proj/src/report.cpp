// Rendering of sweep reports: CSV, Markdown with best-per-column bolding,
// JSON round-trip, and the per-document audit lines.

#include <cmath>
#include <cstdio>
#include <map>
#include <set>

#include <json.hpp>

#include "keyrank/errors.hpp"
#include "keyrank/harness.hpp"

namespace keyrank {

std::string format_fixed(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, value);
  std::string out(buf);
  if (out == "-0" || out.rfind("-0.", 0) == 0) {
    // never print negative zero
    bool nonzero = false;
    for (char c : out)
      if (c >= '1' && c <= '9') nonzero = true;
    if (!nonzero) out.erase(out.begin());
  }
  return out;
}

std::string format_percent(double fraction) { return format_fixed(fraction * 100.0, 4); }

namespace {

std::vector<std::string> metric_headers(const std::vector<int>& ks) {
  std::vector<std::string> headers;
  for (int k : ks) {
    headers.push_back("P@" + std::to_string(k));
    headers.push_back("R@" + std::to_string(k));
    headers.push_back("F1@" + std::to_string(k));
  }
  return headers;
}

const Prf& metrics_at(const SweepRow& row, int k) {
  const auto it = row.report.per_k.find(k);
  if (it == row.report.per_k.end())
    throw_error(ErrorKind::Contract,
                "row " + row.prompt_id + "/" + row.dataset_id + " lacks K=" +
                    std::to_string(k));
  return it->second;
}

std::vector<std::string> row_values(const SweepRow& row, const std::vector<int>& ks) {
  std::vector<std::string> values;
  for (int k : ks) {
    const Prf& prf = metrics_at(row, k);
    values.push_back(format_percent(prf.precision));
    values.push_back(format_percent(prf.recall));
    values.push_back(format_percent(prf.f1));
  }
  return values;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out += "\"";
  return out;
}

}  // namespace

std::string to_csv(const SweepReport& report) {
  std::string out = "prompt,scorer,dataset,documents";
  for (const std::string& h : metric_headers(report.ks)) out += "," + h;
  out += "\n";
  for (const SweepRow& row : report.rows) {
    out += csv_escape(row.prompt_id) + "," + csv_escape(row.scorer_label) + "," +
           csv_escape(row.dataset_id) + "," + std::to_string(row.report.num_documents);
    for (const std::string& v : row_values(row, report.ks)) out += "," + v;
    out += "\n";
  }
  return out;
}

std::string to_markdown(const SweepReport& report) {
  // best value per metric column, compared per (scorer, dataset) group at
  // the rendered precision; every row tied at the max is bolded
  const std::size_t ncols = report.ks.size() * 3;
  std::map<std::pair<std::string, std::string>, std::vector<double>> best;
  std::vector<std::vector<std::string>> cell_values;
  cell_values.reserve(report.rows.size());
  for (const SweepRow& row : report.rows) {
    cell_values.push_back(row_values(row, report.ks));
    auto& group_best = best[{row.scorer_label, row.dataset_id}];
    group_best.resize(ncols, -1.0);
    for (std::size_t c = 0; c < ncols; ++c) {
      const double v = std::stod(cell_values.back()[c]);
      if (v > group_best[c]) group_best[c] = v;
    }
  }

  std::string out = "| Prompt | Scorer | Dataset | Docs |";
  for (const std::string& h : metric_headers(report.ks)) out += " " + h + " |";
  out += "\n|---|---|---|---|";
  for (std::size_t c = 0; c < ncols; ++c) out += "---|";
  out += "\n";

  for (std::size_t r = 0; r < report.rows.size(); ++r) {
    const SweepRow& row = report.rows[r];
    const auto& group_best = best[{row.scorer_label, row.dataset_id}];
    out += "| " + row.prompt_id + " | " + row.scorer_label + " | " + row.dataset_id +
           " | " + std::to_string(row.report.num_documents) + " |";
    for (std::size_t c = 0; c < ncols; ++c) {
      const std::string& v = cell_values[r][c];
      if (std::stod(v) == group_best[c])
        out += " **" + v + "** |";
      else
        out += " " + v + " |";
    }
    out += "\n";
  }
  return out;
}

std::string to_json(const SweepReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const SweepRow& row : report.rows) {
    nlohmann::json metrics = nlohmann::json::object();
    for (const auto& [k, prf] : row.report.per_k) {
      metrics[std::to_string(k)] = {{"precision", prf.precision},
                                    {"recall", prf.recall},
                                    {"f1", prf.f1}};
    }
    rows.push_back({{"prompt", row.prompt_id},
                    {"scorer", row.scorer_label},
                    {"dataset", row.dataset_id},
                    {"documents", row.report.num_documents},
                    {"metrics", metrics}});
  }
  nlohmann::json doc = {{"ks", report.ks}, {"rows", rows}};
  return doc.dump(2) + "\n";
}

SweepReport sweep_from_json(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw_error(ErrorKind::Data, std::string("report: invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("ks") || !doc.contains("rows"))
    throw_error(ErrorKind::Data, "report: expected {ks, rows}");

  SweepReport report;
  try {
    report.ks = doc["ks"].get<std::vector<int>>();
    for (const auto& entry : doc["rows"]) {
      SweepRow row;
      row.prompt_id = entry.at("prompt").get<std::string>();
      row.scorer_label = entry.at("scorer").get<std::string>();
      row.dataset_id = entry.at("dataset").get<std::string>();
      row.report.num_documents = entry.at("documents").get<std::size_t>();
      for (const auto& [key, prf] : entry.at("metrics").items()) {
        Prf& m = row.report.per_k[std::stoi(key)];
        m.precision = prf.at("precision").get<double>();
        m.recall = prf.at("recall").get<double>();
        m.f1 = prf.at("f1").get<double>();
      }
      report.rows.push_back(std::move(row));
    }
  } catch (const nlohmann::json::exception& e) {
    throw_error(ErrorKind::Data, std::string("report: malformed row: ") + e.what());
  }
  return report;
}

std::string keyphrases_to_json(const std::vector<ScoredCandidate>& ranked,
                               std::size_t top_k) {
  nlohmann::json arr = nlohmann::json::array();
  const std::size_t n = std::min(top_k, ranked.size());
  for (std::size_t i = 0; i < n; ++i) {
    arr.push_back({{"phrase", ranked[i].candidate.surface},
                   {"score", ranked[i].pi_c},
                   {"offset", ranked[i].candidate.first_char_offset}});
  }
  return nlohmann::json{{"keyphrases", arr}}.dump(2) + "\n";
}

std::string document_audit_json(const DocumentResult& result) {
  nlohmann::json phrases = nlohmann::json::array();
  for (const ScoredCandidate& sc : result.ranked) {
    phrases.push_back({{"phrase", sc.candidate.surface},
                       {"score", sc.pi_c},
                       {"offset", sc.candidate.first_char_offset}});
  }
  nlohmann::json metrics = nlohmann::json::object();
  for (const auto& [k, prf] : result.scores.per_k) {
    metrics[std::to_string(k)] = {{"precision", prf.precision},
                                  {"recall", prf.recall},
                                  {"f1", prf.f1}};
  }
  nlohmann::json line = {{"id", result.doc_id},
                         {"keyphrases", phrases},
                         {"metrics", metrics},
                         {"skipped", result.skipped}};
  return line.dump();
}

}  // namespace keyrank
