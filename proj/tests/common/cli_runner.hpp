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

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace cli {

struct Outcome {
  int code = -1;
  std::string out;
  std::string err;
};

inline std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Runs the CLI with args (already shell-quoted) in dir and captures both streams.
inline Outcome run(const std::filesystem::path& dir, const std::string& args) {
  const auto out = dir / ".stdout";
  const auto err = dir / ".stderr";
  const std::string command = "cd '" + dir.string() + "' && env -u NEEDMINER_CONFIG '" +
                              std::string(NEEDMINER_CLI) + "' " + args + " >'" + out.string() +
                              "' 2>'" + err.string() + "'";
  const int status = std::system(command.c_str());
  Outcome o;
  o.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  o.out = slurp(out);
  o.err = slurp(err);
  std::filesystem::remove(out);
  std::filesystem::remove(err);
  return o;
}

// A runnable workspace: needminer.ini plus work/ under dir, with data files
// taken from data_dir.
inline void write_workspace(const std::filesystem::path& dir, const std::filesystem::path& data_dir,
                            int repetitions = 10) {
  std::filesystem::create_directories(dir / "work");
  std::ofstream(dir / "needminer.ini") << "[paths]\n"
                                       << "corpus = work/corpus.jsonl\n"
                                       << "keywords = " << (data_dir / "keywords.txt").string() << "\n"
                                       << "stopwords = " << (data_dir / "stopwords_de.txt").string() << "\n"
                                       << "suffixes = " << (data_dir / "suffixes_de.txt").string() << "\n"
                                       << "filtered = work/filtered.jsonl\n"
                                       << "votes = work/votes.jsonl\n"
                                       << "labels = work/labels.jsonl\n"
                                       << "dataset = work/dataset.jsonl\n"
                                       << "models = work/models\n"
                                       << "results = work/results.jsonl\n\n"
                                       << "[protocol]\n"
                                       << "repetitions = " << repetitions << "\n"
                                       << "base_seed = 20150901\n\n"
                                       << "[classifier]\n"
                                       << "seed = 1\n";
}

// demo-data through dataset build. Returns the first failing step's outcome,
// or the last one.
inline Outcome prepare_dataset(const std::filesystem::path& dir) {
  for (const char* step : {"demo-data --out demo", "ingest demo/tweets.jsonl", "filter"}) {
    auto o = run(dir, step);
    if (o.code != 0) return o;
  }
  std::filesystem::copy_file(dir / "demo/votes.jsonl", dir / "work/votes.jsonl",
                             std::filesystem::copy_options::overwrite_existing);
  for (const char* step : {"label export", "dataset build"}) {
    auto o = run(dir, step);
    if (o.code != 0) return o;
  }
  return {0, {}, {}};
}

}  // namespace cli
