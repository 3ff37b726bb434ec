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
#include <string>
#include <string_view>
#include <vector>

// UTF-8 helpers shared by the corpus, filtering and preprocessing stages.
namespace needminer::text {

struct DecodedChar {
  char32_t code_point;
  std::size_t length;  // bytes consumed, >= 1
  bool valid;
};

// Decodes the code point starting at s[pos]. Invalid sequences consume one
// byte and report U+FFFD.
DecodedChar decode_at(std::string_view s, std::size_t pos);

void append_utf8(std::string& out, char32_t cp);

// Number of code points (invalid bytes count as one each).
std::size_t char_count(std::string_view s);

// Simple lowercase mapping covering ASCII, Latin-1, Latin Extended-A, Greek
// and basic Cyrillic. Everything else passes through unchanged.
char32_t fold_char(char32_t cp);
std::string fold_case(std::string_view s);

// Letters and digits in the scripts fold_char knows about.
bool is_word_char(char32_t cp);

bool is_space(char c);
std::string_view trim(std::string_view s);
std::vector<std::string_view> split_whitespace(std::string_view s);
std::string join(const std::vector<std::string_view>& parts, std::string_view sep);

bool starts_with_ci(std::string_view s, std::string_view ascii_prefix);

}  // namespace needminer::text
