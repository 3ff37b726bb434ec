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
#include <cstdint>
#include <string_view>
#include <vector>

#include "needminer/corpus.hpp"
#include "needminer/labeling.hpp"

// Seeded generator for a small German corpus whose Need class is marked by a
// single word, with votes that label it unanimously. Extra records exercise
// every filter stage.
namespace needminer::synthetic {

inline constexpr std::string_view kNeedWord = "brauche";

struct Options {
  std::size_t documents = 200;  // labeled core records
  double need_share = 0.2;
  std::size_t non_german = 8;
  std::size_t with_url = 6;
  std::size_t retweets = 6;  // later-dated "RT @user:" copies of core records
  std::size_t min_filler = 0;  // filler words per core record
  std::size_t max_filler = 0;
  std::size_t filler_pool = 42;  // distinct filler words in use
  std::size_t keyword_pool = 6;  // distinct search phrases in use
  std::uint64_t seed = 7;
};

struct Corpus {
  std::vector<corpus::TweetRecord> records;  // core records first
  std::vector<labeling::LabelVote> votes;    // three per core record
  std::vector<labeling::LabeledItem> labels;  // verdict per core record, by id
};

Corpus separable_corpus(const Options& options = {});

}  // namespace needminer::synthetic
