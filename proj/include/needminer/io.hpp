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

#include <filesystem>
#include <string>
#include <vector>

namespace needminer::io {

// All lines of a text file, without line terminators ("\n" or "\r\n").
std::vector<std::string> read_lines(const std::filesystem::path& path);

// Entry lists (keywords, stopwords, suffix rules): one entry per line, blank
// lines skipped, "#" starts a comment, surrounding whitespace trimmed.
std::vector<std::string> load_entry_list(const std::filesystem::path& path);

// Replaces the file contents.
void write_text(const std::filesystem::path& path, const std::string& content);

std::string read_text(const std::filesystem::path& path);

}  // namespace needminer::io
