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

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <map>
#include <set>

#include "needminer/error.hpp"
#include "needminer/io.hpp"
#include "needminer/text.hpp"

namespace needminer::config {

namespace fs = std::filesystem;
namespace pt = boost::property_tree;

namespace {

[[noreturn]] void fail(const std::string& message) {
  throw Error(ErrorCode::kInvalidConfig, message);
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  T out{};
  const auto* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) fail(key + ": not a number: '" + value + "'");
  return out;
}

// Drops a trailing "; comment" or "# comment". The marker must follow
// whitespace, so paths such as "a#b" survive.
std::string strip_comment(std::string_view value) {
  for (std::size_t i = 1; i < value.size(); ++i) {
    if ((value[i] == ';' || value[i] == '#') && (value[i - 1] == ' ' || value[i - 1] == '\t')) {
      value = value.substr(0, i);
      break;
    }
  }
  return std::string(text::trim(value));
}

// "0.75" or a fraction such as "2/3".
double parse_ratio(const std::string& key, const std::string& value) {
  const auto slash = value.find('/');
  if (slash == std::string::npos) return parse_number<double>(key, value);
  const auto num = parse_number<double>(key, std::string(text::trim(value.substr(0, slash))));
  const auto den = parse_number<double>(key, std::string(text::trim(value.substr(slash + 1))));
  if (den == 0.0) fail(key + ": zero denominator");
  return num / den;
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= value.size()) {
    auto comma = value.find(',', start);
    if (comma == std::string::npos) comma = value.size();
    auto item = text::trim(std::string_view(value).substr(start, comma - start));
    if (!item.empty()) out.emplace_back(item);
    start = comma + 1;
  }
  return out;
}

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"paths",
       {"corpus", "keywords", "stopwords", "suffixes", "filtered", "votes", "labels", "dataset",
        "models", "results", "ui"}},
      {"protocol", {"mode", "repetitions", "ratio", "base_seed", "smote_neighbors"}},
      {"sampling", {"strategies", "default"}},
      {"classifier", {"algorithms", "seed"}},
      {"preprocess", {"min_token_len", "min_stem_len"}},
      {"service", {"host", "port", "votes_per_item"}},
  };
  return keys;
}

void require_file(const std::string& key, const fs::path& path) {
  if (!fs::is_regular_file(path)) fail(key + ": no such file: " + path.string());
}

void require_parent(const std::string& key, const fs::path& path) {
  if (path.empty()) fail(key + ": missing");
  const auto parent = path.parent_path();
  if (!parent.empty() && !fs::is_directory(parent)) {
    fail(key + ": directory does not exist: " + parent.string());
  }
}

}  // namespace

classify::ClassifierSpec RunConfig::classifier(classify::Algorithm algorithm) const {
  for (const auto& spec : classifiers) {
    if (spec.algorithm == algorithm) return spec;
  }
  classify::ClassifierSpec spec;
  spec.algorithm = algorithm;
  spec.seed = classifiers.empty() ? 0 : classifiers.front().seed;
  return spec;
}

textproc::PreprocessConfig RunConfig::preprocess() const {
  auto suffixes = paths.suffixes.empty() ? textproc::default_german_suffixes()
                                         : io::load_entry_list(paths.suffixes);
  std::vector<std::string> stopwords;
  if (!paths.stopwords.empty()) stopwords = io::load_entry_list(paths.stopwords);
  auto stemmer = std::make_shared<textproc::SuffixStemmer>(std::move(suffixes), min_stem_len);
  return textproc::PreprocessConfig::make(std::move(stemmer), stopwords, min_token_len);
}

fs::path locate(const std::optional<fs::path>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv(kEnvVar); env != nullptr && *env != '\0') return env;
  return kDefaultFile;
}

RunConfig load(const fs::path& path) {
  if (!fs::is_regular_file(path)) fail("config file not found: " + path.string());
  pt::ptree tree;
  try {
    pt::read_ini(path.string(), tree);
  } catch (const pt::ini_parser_error& e) {
    fail(e.what());
  }

  RunConfig cfg;
  cfg.source = path;
  const auto base = path.parent_path();
  auto resolve_path = [&](const std::string& value) -> fs::path {
    if (value.empty()) return {};
    fs::path p(value);
    return p.is_absolute() ? p : (base / p).lexically_normal();
  };

  bool have_seed = false;
  std::uint64_t classifier_seed = 0;
  std::vector<classify::Algorithm> algorithms = classify::all_algorithms();
  std::map<classify::Algorithm, classify::Hyperparameters> overrides;
  cfg.strategies = sampling::all_strategies();

  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty()) fail("key outside a section: " + section);
    const auto known = known_keys().find(section);
    if (known == known_keys().end()) fail("unknown section [" + section + "]");
    for (const auto& [key, node] : body) {
      const std::string name = section + "." + key;
      const std::string value = strip_comment(node.data());
      try {
        if (section == "classifier" && key.find('.') != std::string::npos) {
          // algorithm.hyperparameter = value
          const auto dot = key.find('.');
          const auto algorithm = classify::parse_algorithm(key.substr(0, dot));
          overrides[algorithm][key.substr(dot + 1)] = parse_number<double>(name, value);
          continue;
        }
      } catch (const Error& e) {
        fail(name + ": " + e.what());
      }
      if (!known->second.contains(key)) fail("unknown key " + name);

      if (section == "paths") {
        auto p = resolve_path(value);
        if (key == "corpus") cfg.paths.corpus = p;
        else if (key == "keywords") cfg.paths.keywords = p;
        else if (key == "stopwords") cfg.paths.stopwords = p;
        else if (key == "suffixes") cfg.paths.suffixes = p;
        else if (key == "filtered") cfg.paths.filtered = p;
        else if (key == "votes") cfg.paths.votes = p;
        else if (key == "labels") cfg.paths.labels = p;
        else if (key == "dataset") cfg.paths.dataset = p;
        else if (key == "models") cfg.paths.models = p;
        else if (key == "results") cfg.paths.results = p;
        else if (key == "ui") cfg.paths.ui = p;
      } else if (section == "protocol") {
        if (key == "mode") {
          if (value == "holdout") cfg.protocol.mode = evaluate::Protocol::Mode::kRepeatedHoldout;
          else if (value == "kfold") cfg.protocol.mode = evaluate::Protocol::Mode::kKFold;
          else fail(name + ": expected holdout or kfold");
        } else if (key == "repetitions") {
          cfg.protocol.repetitions = parse_number<int>(name, value);
        } else if (key == "ratio") {
          cfg.protocol.ratio = parse_ratio(name, value);
        } else if (key == "base_seed") {
          cfg.protocol.base_seed = parse_number<std::uint64_t>(name, value);
          have_seed = true;
        } else if (key == "smote_neighbors") {
          cfg.protocol.smote_neighbors = parse_number<int>(name, value);
        }
      } else if (section == "sampling") {
        try {
          if (key == "strategies") {
            cfg.strategies.clear();
            for (const auto& s : split_list(value)) cfg.strategies.push_back(sampling::parse_strategy(s));
          } else {
            cfg.default_strategy = sampling::parse_strategy(value);
          }
        } catch (const Error& e) {
          fail(name + ": " + e.what());
        }
      } else if (section == "classifier") {
        if (key == "seed") {
          classifier_seed = parse_number<std::uint64_t>(name, value);
        } else {
          algorithms.clear();
          try {
            for (const auto& a : split_list(value)) algorithms.push_back(classify::parse_algorithm(a));
          } catch (const Error& e) {
            fail(name + ": " + e.what());
          }
        }
      } else if (section == "preprocess") {
        if (key == "min_token_len") cfg.min_token_len = parse_number<std::size_t>(name, value);
        else cfg.min_stem_len = parse_number<std::size_t>(name, value);
      } else if (section == "service") {
        if (key == "host") cfg.host = value;
        else if (key == "port") cfg.port = parse_number<int>(name, value);
        else cfg.votes_per_item = parse_number<int>(name, value);
      }
    }
  }

  if (!have_seed) fail("protocol.base_seed is required");
  if (cfg.protocol.repetitions < 1) fail("protocol.repetitions must be >= 1");
  if (!(cfg.protocol.ratio > 0.0 && cfg.protocol.ratio < 1.0)) fail("protocol.ratio must be in (0, 1)");
  if (cfg.protocol.smote_neighbors < 1) fail("protocol.smote_neighbors must be >= 1");
  if (cfg.strategies.empty()) fail("sampling.strategies is empty");
  if (algorithms.empty()) fail("classifier.algorithms is empty");
  if (cfg.port < 0 || cfg.port > 65535) fail("service.port out of range");
  if (cfg.votes_per_item < 1 || cfg.votes_per_item % 2 == 0) {
    fail("service.votes_per_item must be odd and >= 1");
  }

  for (const auto& [algorithm, values] : overrides) {
    if (std::find(algorithms.begin(), algorithms.end(), algorithm) == algorithms.end()) {
      algorithms.push_back(algorithm);
    }
  }
  for (auto algorithm : algorithms) {
    classify::ClassifierSpec spec{algorithm, overrides[algorithm], classifier_seed};
    try {
      spec.hyperparameters = classify::resolve(spec);
    } catch (const Error& e) {
      fail(std::string(classify::to_string(algorithm)) + ": " + e.what());
    }
    cfg.classifiers.push_back(std::move(spec));
  }

  require_file("paths.keywords", cfg.paths.keywords);
  if (!cfg.paths.stopwords.empty()) require_file("paths.stopwords", cfg.paths.stopwords);
  if (!cfg.paths.suffixes.empty()) require_file("paths.suffixes", cfg.paths.suffixes);
  require_parent("paths.corpus", cfg.paths.corpus);
  require_parent("paths.filtered", cfg.paths.filtered);
  require_parent("paths.votes", cfg.paths.votes);
  require_parent("paths.labels", cfg.paths.labels);
  require_parent("paths.dataset", cfg.paths.dataset);
  require_parent("paths.models", cfg.paths.models);
  require_parent("paths.results", cfg.paths.results);
  if (!cfg.paths.ui.empty() && !fs::is_directory(cfg.paths.ui)) {
    fail("paths.ui: no such directory: " + cfg.paths.ui.string());
  }
  return cfg;
}

}  // namespace needminer::config
