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

#include <doctest.h>

#include <atomic>
#include <filesystem>
#include <string>
#include <unistd.h>

#include "needminer/error.hpp"

#define CHECK_ERROR(expr, expected)                                      \
  do {                                                                   \
    bool thrown_ = false;                                                \
    try {                                                                \
      (void)(expr);                                                      \
    } catch (const ::needminer::Error& e_) {                             \
      thrown_ = true;                                                    \
      CHECK_MESSAGE(e_.code() == (expected), "got ", std::string(e_.name()), ": ", std::string(e_.what())); \
    }                                                                    \
    CHECK_MESSAGE(thrown_, "expected ", #expected);                      \
  } while (false)

namespace test {

inline std::filesystem::path data_dir() { return NEEDMINER_DATA_DIR; }
inline std::filesystem::path fixture_dir() { return NEEDMINER_FIXTURE_DIR; }

// Fresh directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("needminer-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

}  // namespace test
