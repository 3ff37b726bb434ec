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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "needminer/corpus.hpp"

// The three-stage reduction of a raw corpus to labeling candidates:
// language, URL exclusion, prefix-insensitive deduplication.
namespace needminer::filtering {

using corpus::TweetRecord;

struct FilterReport {
  std::size_t input_count = 0;
  std::size_t after_language = 0;
  std::size_t after_url = 0;
  std::size_t after_dedup = 0;

  // Ids removed at each stage, in input order.
  std::vector<std::string> removed_language;
  std::vector<std::string> removed_url;
  std::vector<std::string> removed_duplicate;
};

struct FilterResult {
  std::vector<TweetRecord> retained;  // input order
  FilterReport report;
};

bool is_german(const TweetRecord& record);

// True iff a whitespace-delimited token starts with http://, https:// or www.
// (ASCII case-insensitive).
bool contains_url(std::string_view text);

// Text without leading retweet markers and @-handles, case-folded, with
// whitespace runs collapsed. Equal keys mean duplicate content.
std::string dedup_key(std::string_view text);

// Stages run in the order language, URL, dedup. Among records sharing a dedup
// key the earliest created_at wins, then the smallest id.
FilterResult run_filters(std::span<const TweetRecord> records);

// Stage primitives, exposed so alternative orders can be compared.
std::vector<TweetRecord> keep_german(std::span<const TweetRecord> records);
std::vector<TweetRecord> drop_urls(std::span<const TweetRecord> records);
std::vector<TweetRecord> deduplicate(std::span<const TweetRecord> records);

}  // namespace needminer::filtering
