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

#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "needminer/classify.hpp"
#include "needminer/evaluate.hpp"
#include "needminer/sampling.hpp"
#include "needminer/textproc.hpp"

// Run configuration shared by all pipeline stages. INI syntax: "key = value"
// lines under [section] headers, ";" or "#" comments (also after a value,
// following whitespace). Relative paths are resolved against the directory
// holding the file.
namespace needminer::config {

inline constexpr const char* kEnvVar = "NEEDMINER_CONFIG";
inline constexpr const char* kDefaultFile = "needminer.ini";

struct Paths {
  std::filesystem::path corpus;     // keyword-matched records (ingest output)
  std::filesystem::path keywords;
  std::filesystem::path stopwords;  // optional
  std::filesystem::path suffixes;   // optional; built-in German rules otherwise
  std::filesystem::path filtered;
  std::filesystem::path votes;      // labeling vote log
  std::filesystem::path labels;     // labeled export
  std::filesystem::path dataset;
  std::filesystem::path models;     // directory
  std::filesystem::path results;    // leaderboard records
  std::filesystem::path ui;         // optional static bundle served under /ui
};

struct RunConfig {
  std::filesystem::path source;
  Paths paths;
  evaluate::Protocol protocol;
  std::vector<sampling::Strategy> strategies;
  sampling::Strategy default_strategy = sampling::Strategy::kNone;
  // One spec per configured algorithm, carrying the overrides and the
  // classifier seed.
  std::vector<classify::ClassifierSpec> classifiers;
  std::size_t min_token_len = 2;
  std::size_t min_stem_len = textproc::SuffixStemmer::kDefaultMinStemLen;
  std::string host = "127.0.0.1";
  int port = 8080;
  int votes_per_item = 3;

  // The spec for one algorithm with the configured overrides applied.
  classify::ClassifierSpec classifier(classify::Algorithm algorithm) const;

  // Loads the stopword and suffix files.
  textproc::PreprocessConfig preprocess() const;
};

// --config flag, else $NEEDMINER_CONFIG, else ./needminer.ini.
std::filesystem::path locate(const std::optional<std::filesystem::path>& flag);

// Throws InvalidConfig on unknown sections or keys, malformed values, a
// missing protocol.base_seed, missing input files or output directories.
RunConfig load(const std::filesystem::path& path);

}  // namespace needminer::config
