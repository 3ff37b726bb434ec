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

#include "needminer/config.hpp"

#include <cstdlib>
#include <fstream>

#include "support.hpp"

using namespace needminer;
namespace fs = std::filesystem;

namespace {

const char* kBase = R"([paths]
corpus = work/corpus.jsonl
keywords = keywords.txt
filtered = work/filtered.jsonl
votes = work/votes.jsonl
labels = work/labels.jsonl
dataset = work/dataset.jsonl
models = work/models
results = work/results.jsonl

[protocol]
base_seed = 2015
)";

struct Workspace {
  test::TempDir dir;

  Workspace() {
    fs::create_directories(dir / "work");
    std::ofstream(dir / "keywords.txt") << "ladestation\n";
  }

  fs::path write(const std::string& content, const std::string& name = "needminer.ini") {
    std::ofstream(dir / name) << content;
    return dir / name;
  }
};

}  // namespace

TEST_CASE("minimal configuration takes defaults") {
  Workspace ws;
  const auto cfg = config::load(ws.write(kBase));
  CHECK(cfg.protocol.base_seed == 2015);
  CHECK(cfg.protocol.repetitions == 10);
  CHECK(cfg.protocol.ratio == doctest::Approx(2.0 / 3.0));
  CHECK(cfg.protocol.mode == evaluate::Protocol::Mode::kRepeatedHoldout);
  CHECK(cfg.strategies == sampling::all_strategies());
  REQUIRE(cfg.classifiers.size() == 4);
  CHECK(cfg.classifiers[1].hyperparameters == classify::default_hyperparameters(classify::Algorithm::kSpegasos));
  CHECK(cfg.port == 8080);
  CHECK(cfg.votes_per_item == 3);
}

TEST_CASE("relative paths resolve against the file's directory") {
  Workspace ws;
  const auto cfg = config::load(ws.write(kBase));
  CHECK(cfg.paths.keywords == (ws.dir / "keywords.txt").lexically_normal());
  CHECK(cfg.paths.models == (ws.dir / "work/models").lexically_normal());
  CHECK(cfg.paths.stopwords.empty());
}

TEST_CASE("full configuration") {
  Workspace ws;
  const auto cfg = config::load(ws.write(std::string(kBase) + R"(mode = kfold
repetitions = 5
ratio = 3/4
smote_neighbors = 3

[sampling]
strategies = none, smote
default = smote

[classifier]
algorithms = naive_bayes, random_forests
seed = 9
random_forest.trees = 25
naive_bayes.alpha = 0.5

[preprocess]
min_token_len = 3

[service]
port = 9000
)"));
  CHECK(cfg.protocol.mode == evaluate::Protocol::Mode::kKFold);
  CHECK(cfg.protocol.repetitions == 5);
  CHECK(cfg.protocol.ratio == doctest::Approx(0.75));
  CHECK(cfg.protocol.smote_neighbors == 3);
  CHECK(cfg.strategies == std::vector{sampling::Strategy::kNone, sampling::Strategy::kSmote});
  CHECK(cfg.default_strategy == sampling::Strategy::kSmote);
  REQUIRE(cfg.classifiers.size() == 2);
  const auto forest = cfg.classifier(classify::Algorithm::kRandomForest);
  CHECK(forest.hyperparameters.at("trees") == 25);
  CHECK(forest.seed == 9);
  CHECK(cfg.classifier(classify::Algorithm::kNaiveBayes).hyperparameters.at("alpha") == 0.5);
  CHECK(cfg.min_token_len == 3);
  CHECK(cfg.port == 9000);
  CHECK(cfg.preprocess().min_token_len == 3);
}

TEST_CASE("comments after values") {
  Workspace ws;
  std::string text = kBase;
  text.replace(text.find("base_seed = 2015"), 16, "base_seed = 2015   ; fixed");
  text += "repetitions = 4 # quick\n";
  const auto cfg = config::load(ws.write(text));
  CHECK(cfg.protocol.base_seed == 2015);
  CHECK(cfg.protocol.repetitions == 4);

  std::ofstream(ws.dir / "key#words.txt") << "ladestation\n";
  std::string hashed = kBase;
  hashed.replace(hashed.find("keywords.txt"), 12, "key#words.txt");
  CHECK(config::load(ws.write(hashed)).paths.keywords.filename() == "key#words.txt");
}

TEST_CASE("invalid configurations") {
  Workspace ws;
  const std::string base = kBase;
  auto bad = [&](const std::string& content) { return config::load(ws.write(content, "bad.ini")); };

  CHECK_ERROR(config::load(ws.dir / "absent.ini"), ErrorCode::kInvalidConfig);
  CHECK_ERROR(bad(base.substr(0, base.find("[protocol]"))), ErrorCode::kInvalidConfig);
  CHECK_ERROR(bad(base + "colour = blue\n"), ErrorCode::kInvalidConfig);
  CHECK_ERROR(bad(base + "[extras]\nx = 1\n"), ErrorCode::kInvalidConfig);
  CHECK_ERROR(bad(base + "repetitions = ten\n"), ErrorCode::kInvalidConfig);
  CHECK_ERROR(bad(base + "repetitions = 0\n"), ErrorCode::kInvalidConfig);
  CHECK_ERROR(bad(base + "ratio = 1.5\n"), ErrorCode::kInvalidConfig);
  CHECK_ERROR(bad(base + "mode = bootstrap\n"), ErrorCode::kInvalidConfig);
  CHECK_ERROR(bad(base + "[sampling]\nstrategies = none, magic\n"), ErrorCode::kInvalidConfig);
  CHECK_ERROR(bad(base + "[classifier]\nrandom_forest.leaves = 3\n"), ErrorCode::kInvalidConfig);
  CHECK_ERROR(bad(base + "[classifier]\nspegasos.lambda = -1\n"), ErrorCode::kInvalidConfig);
  CHECK_ERROR(bad(base + "[service]\nvotes_per_item = 2\n"), ErrorCode::kInvalidConfig);
  CHECK_ERROR(bad(base + "[service]\nport = 70000\n"), ErrorCode::kInvalidConfig);

  std::string missing_input = base;
  missing_input.replace(missing_input.find("keywords.txt"), 12, "nothing.txt");
  CHECK_ERROR(bad(missing_input), ErrorCode::kInvalidConfig);
  std::string missing_dir = base;
  missing_dir.replace(missing_dir.find("work/results"), 4, "gone");
  CHECK_ERROR(bad(missing_dir), ErrorCode::kInvalidConfig);
}

TEST_CASE("flag, then environment, then working directory") {
  CHECK(config::locate(fs::path("a.ini")) == fs::path("a.ini"));
  ::setenv(config::kEnvVar, "/etc/from-env.ini", 1);
  CHECK(config::locate(std::nullopt) == fs::path("/etc/from-env.ini"));
  CHECK(config::locate(fs::path("a.ini")) == fs::path("a.ini"));
  ::unsetenv(config::kEnvVar);
  CHECK(config::locate(std::nullopt) == fs::path("needminer.ini"));
}
