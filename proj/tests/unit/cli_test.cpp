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

#include <json.hpp>

#include <sstream>

#include "../common/cli_runner.hpp"
#include "support.hpp"

namespace {

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

std::string reference_table() { return "'" + (test::data_dir() / "reference_results.tsv").string() + "'"; }

}  // namespace

TEST_CASE("usage errors exit with 2") {
  test::TempDir dir;
  CHECK(cli::run(dir.path(), "bogus").code == 2);
  CHECK(cli::run(dir.path(), "").code == 2);
  CHECK(cli::run(dir.path(), "train --seed 1").code == 2);
  CHECK(cli::run(dir.path(), "recommend --objective f1 --input missing.tsv").code == 2);
}

TEST_CASE("version and help exit with 0") {
  test::TempDir dir;
  const auto v = cli::run(dir.path(), "--version");
  CHECK(v.code == 0);
  CHECK(v.out.find("needminer") != std::string::npos);
  CHECK(cli::run(dir.path(), "evaluate --version").code == 0);
  CHECK(cli::run(dir.path(), "--help").code == 0);
}

TEST_CASE("domain errors exit with 1 and name the error") {
  test::TempDir dir;
  const auto no_config = cli::run(dir.path(), "filter");
  CHECK(no_config.code == 1);
  CHECK(no_config.err.find("error: InvalidConfig") == 0);
  CHECK(no_config.err.find("InvalidConfig: InvalidConfig") == std::string::npos);

  const auto objective = cli::run(dir.path(), "recommend --objective speed --input " + reference_table());
  CHECK(objective.code == 1);
  CHECK(objective.err.find("InvalidConfig") != std::string::npos);
}

TEST_CASE("recommend on the reference table") {
  test::TempDir dir;
  const auto o = cli::run(dir.path(), "recommend --objective recall --input " + reference_table());
  REQUIRE(o.code == 0);
  const auto out = lines(o.out);
  REQUIRE(!out.empty());
  CHECK(out[0] == "undersampling+naive_bayes\trecall\t0.729");
  CHECK(o.out.find("undersampling/dmnb") != std::string::npos);
}

TEST_CASE("leaderboard reads the reference table") {
  test::TempDir dir;
  const auto o = cli::run(dir.path(), "leaderboard --input " + reference_table());
  REQUIRE(o.code == 0);
  CHECK(lines(o.out).size() == 31);  // header, 29 rows, footnote for the degenerate cell
  CHECK(lines(o.out).back().rfind("* single-class", 0) == 0);
  const auto records = cli::run(dir.path(), "leaderboard --format records --input " + reference_table());
  REQUIRE(records.code == 0);
  const auto rows = lines(records.out);
  CHECK(rows.size() == 29);
  CHECK(nlohmann::json::parse(rows[0]).at("algorithm") == "svm");
}

TEST_CASE("train then predict") {
  test::TempDir dir;
  cli::write_workspace(dir.path(), test::data_dir(), 2);
  const auto prep = cli::prepare_dataset(dir.path());
  REQUIRE_MESSAGE(prep.code == 0, prep.err);

  const auto train = cli::run(dir.path(), "train --algo naive_bayes --sampling undersampling --seed 3");
  REQUIRE_MESSAGE(train.code == 0, train.err);
  REQUIRE(std::filesystem::exists(dir / "work/models/undersampling_naive_bayes.model"));

  std::ofstream(dir / "new.jsonl")
      << R"({"id":"n1","text":"brauche dringend eine Ladesäule","lang":"de","created_at":"2015-05-01T10:00:00Z"})" "\n"
      << R"({"id":"n2","text":"Tesla Model S gesehen","lang":"de","created_at":"2015-05-01T10:01:00Z"})" "\n"
      << R"({"id":"n3","text":"Ladesäule am Bahnhof","lang":"de","created_at":"2015-05-01T10:02:00Z"})" "\n";
  const auto predict = cli::run(dir.path(), "predict --model work/models/undersampling_naive_bayes.model new.jsonl");
  REQUIRE_MESSAGE(predict.code == 0, predict.err);
  const auto out = lines(predict.out);
  REQUIRE(out.size() == 3);
  CHECK(out[0].rfind("n1\t", 0) == 0);
  CHECK(out[0].substr(out[0].rfind('\t') + 1) == "need");
  CHECK(out[1].substr(out[1].rfind('\t') + 1) == "no_need");
  for (const auto& line : out) CHECK(std::count(line.begin(), line.end(), '\t') == 2);

  const auto records = cli::run(dir.path(), "predict --format records --model work/models/undersampling_naive_bayes.model new.jsonl");
  REQUIRE(records.code == 0);
  for (const auto& line : lines(records.out)) {
    const auto j = nlohmann::json::parse(line);
    CHECK(j.contains("id"));
    CHECK(j.contains("score"));
    CHECK(j.contains("verdict"));
  }
}
