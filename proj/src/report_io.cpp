// Copyright 2026 The Needminer Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cstdio>
#include <json.hpp>

#include "needminer/error.hpp"
#include "needminer/evaluate.hpp"
#include "needminer/io.hpp"
#include "needminer/text.hpp"

namespace needminer::evaluate {

namespace {

using Json = nlohmann::ordered_json;

std::string fixed(double v, int decimals) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

Json repetition_json(const RepetitionResult& r) {
  Json j;
  j["tp"] = r.confusion.tp;
  j["fp"] = r.confusion.fp;
  j["fn"] = r.confusion.fn;
  j["tn"] = r.confusion.tn;
  j["accuracy"] = r.accuracy;
  j["auc"] = r.auc;
  j["precision_need"] = r.precision_need;
  j["recall_need"] = r.recall_need;
  j["precision_no_need"] = r.precision_no_need;
  j["recall_no_need"] = r.recall_no_need;
  j["f_05"] = r.f_05;
  j["f_1"] = r.f_1;
  j["f_2"] = r.f_2;
  j["zero_denominator"] = r.zero_denominator;
  return j;
}

RepetitionResult repetition_from(const nlohmann::json& j) {
  RepetitionResult r;
  r.confusion = {j.at("tp").get<std::size_t>(), j.at("fp").get<std::size_t>(),
                 j.at("fn").get<std::size_t>(), j.at("tn").get<std::size_t>()};
  r.accuracy = j.at("accuracy").get<double>();
  r.auc = j.at("auc").get<double>();
  r.precision_need = j.at("precision_need").get<double>();
  r.recall_need = j.at("recall_need").get<double>();
  r.precision_no_need = j.at("precision_no_need").get<double>();
  r.recall_no_need = j.at("recall_no_need").get<double>();
  r.f_05 = j.at("f_05").get<double>();
  r.f_1 = j.at("f_1").get<double>();
  r.f_2 = j.at("f_2").get<double>();
  r.zero_denominator = j.value("zero_denominator", false);
  return r;
}

double parse_double(std::string_view field, std::size_t line) {
  try {
    std::size_t used = 0;
    const std::string s(field);
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::kMalformedLine,
                "line " + std::to_string(line) + ": bad number '" + std::string(field) + "'");
  }
}

}  // namespace

std::string format_table(std::span<const LeaderboardRow> rows) {
  const std::vector<std::string> header = {"Accuracy", "AUC",      "Precision(Need)",
                                           "Recall(Need)", "Precision(NoNeed)", "Recall(NoNeed)",
                                           "Sampling", "Algorithm", "F0.5",
                                           "F1",       "F2"};
  std::vector<std::vector<std::string>> cells;
  for (const auto& row : rows) {
    const auto& r = row.report;
    cells.push_back({fixed(100.0 * r.accuracy, 3), fixed(r.auc, 3), fixed(r.precision_need, 3),
                     fixed(r.recall_need, 3), fixed(r.precision_no_need, 3),
                     fixed(r.recall_no_need, 3), row.sampling, row.algorithm, fixed(r.f_05, 3),
                     fixed(r.f_1, 3), fixed(r.f_2, 3)});
    if (r.degenerate) cells.back()[7] += " *";
  }
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) {
    width[c] = header[c].size();
    for (const auto& line : cells) width[c] = std::max(width[c], line[c].size());
  }
  auto emit = [&](const std::vector<std::string>& line) {
    std::string out;
    for (std::size_t c = 0; c < line.size(); ++c) {
      const bool text_column = c == 6 || c == 7;
      const auto pad = std::string(width[c] - line[c].size(), ' ');
      if (c > 0) out += "  ";
      out += text_column ? line[c] + pad : pad + line[c];
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    return out + "\n";
  };
  std::string out = emit(header);
  for (const auto& line : cells) out += emit(line);
  if (std::any_of(rows.begin(), rows.end(), [](const auto& r) { return r.report.degenerate; })) {
    out += "* single-class predictor (excluded from recommendations)\n";
  }
  return out;
}

std::string format_records(std::span<const LeaderboardRow> rows) {
  std::string out;
  for (const auto& row : rows) {
    const auto& r = row.report;
    Json j;
    j["sampling"] = row.sampling;
    j["algorithm"] = row.algorithm;
    j["accuracy"] = r.accuracy;
    j["auc"] = r.auc;
    j["precision_need"] = r.precision_need;
    j["recall_need"] = r.recall_need;
    j["precision_no_need"] = r.precision_no_need;
    j["recall_no_need"] = r.recall_no_need;
    j["f_05"] = r.f_05;
    j["f_1"] = r.f_1;
    j["f_2"] = r.f_2;
    j["degenerate"] = r.degenerate;
    j["zero_denominator"] = r.zero_denominator;
    j["repetitions"] = r.repetitions;
    Json reps = Json::array();
    for (const auto& rep : r.per_repetition) reps.push_back(repetition_json(rep));
    j["per_repetition"] = std::move(reps);
    out += j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
    out += '\n';
  }
  return out;
}

std::vector<LeaderboardRow> parse_records(std::string_view content) {
  std::vector<LeaderboardRow> rows;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < content.size()) {
    auto end = content.find('\n', pos);
    if (end == std::string_view::npos) end = content.size();
    const auto line = content.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (text::trim(line).empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      LeaderboardRow row;
      row.sampling = j.at("sampling").get<std::string>();
      row.algorithm = j.at("algorithm").get<std::string>();
      auto& r = row.report;
      r.accuracy = j.at("accuracy").get<double>();
      r.auc = j.at("auc").get<double>();
      r.precision_need = j.at("precision_need").get<double>();
      r.recall_need = j.at("recall_need").get<double>();
      r.precision_no_need = j.at("precision_no_need").get<double>();
      r.recall_no_need = j.at("recall_no_need").get<double>();
      r.f_05 = j.at("f_05").get<double>();
      r.f_1 = j.at("f_1").get<double>();
      r.f_2 = j.at("f_2").get<double>();
      r.degenerate = j.value("degenerate", false);
      r.zero_denominator = j.value("zero_denominator", false);
      r.repetitions = j.value("repetitions", 0);
      if (const auto reps = j.find("per_repetition"); reps != j.end()) {
        for (const auto& rep : *reps) r.per_repetition.push_back(repetition_from(rep));
      }
      rows.push_back(std::move(row));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kMalformedLine, "record " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return rows;
}

std::vector<LeaderboardRow> load_results_table(const std::filesystem::path& path) {
  std::vector<LeaderboardRow> rows;
  const auto lines = io::read_lines(path);
  bool header_seen = false;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto trimmed = text::trim(lines[i]);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    std::vector<std::string_view> f;
    std::string_view rest = lines[i];
    for (auto tab = rest.find('\t'); ; tab = rest.find('\t')) {
      f.push_back(rest.substr(0, tab));
      if (tab == std::string_view::npos) break;
      rest.remove_prefix(tab + 1);
    }
    if (f.size() != 12) {
      throw Error(ErrorCode::kMalformedLine,
                  path.string() + ":" + std::to_string(i + 1) + ": expected 12 columns");
    }
    LeaderboardRow row;
    auto& r = row.report;
    r.accuracy = parse_double(f[0], i + 1) / 100.0;
    r.auc = parse_double(f[1], i + 1);
    r.precision_need = parse_double(f[2], i + 1);
    r.recall_need = parse_double(f[3], i + 1);
    r.precision_no_need = parse_double(f[4], i + 1);
    r.recall_no_need = parse_double(f[5], i + 1);
    row.sampling = std::string(f[6]);
    row.algorithm = std::string(f[7]);
    r.f_05 = parse_double(f[8], i + 1);
    r.f_1 = parse_double(f[9], i + 1);
    r.f_2 = parse_double(f[10], i + 1);
    r.degenerate = f[11] == "1";
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace needminer::evaluate
