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

#include "needminer/filtering.hpp"

#include <algorithm>
#include <tuple>
#include <unordered_map>

#include "needminer/text.hpp"

namespace needminer::filtering {

namespace {

bool is_retweet_marker(std::string_view token) {
  if (token.size() == 3 && token[2] == ':') token.remove_suffix(1);
  return token.size() == 2 && text::starts_with_ci(token, "rt");
}

bool is_handle(std::string_view token) { return !token.empty() && token.front() == '@'; }

// Winner among records with equal dedup keys.
bool precedes(const TweetRecord& a, const TweetRecord& b) {
  return std::tie(a.created_at, a.id) < std::tie(b.created_at, b.id);
}

template <typename Keep>
std::vector<TweetRecord> select(std::span<const TweetRecord> records, Keep keep,
                                std::vector<std::string>* removed) {
  std::vector<TweetRecord> out;
  for (const auto& record : records) {
    if (keep(record)) {
      out.push_back(record);
    } else if (removed != nullptr) {
      removed->push_back(record.id);
    }
  }
  return out;
}

std::vector<TweetRecord> deduplicate_impl(std::span<const TweetRecord> records,
                                          std::vector<std::string>* removed) {
  std::unordered_map<std::string, std::size_t> winner;  // key -> index
  std::vector<std::string> keys;
  keys.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    keys.push_back(dedup_key(records[i].text));
    auto [it, inserted] = winner.try_emplace(keys.back(), i);
    if (!inserted && precedes(records[i], records[it->second])) it->second = i;
  }
  std::vector<TweetRecord> out;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (winner.at(keys[i]) == i) {
      out.push_back(records[i]);
    } else if (removed != nullptr) {
      removed->push_back(records[i].id);
    }
  }
  return out;
}

}  // namespace

bool is_german(const TweetRecord& record) { return record.lang == "de"; }

bool contains_url(std::string_view text) {
  for (const auto token : text::split_whitespace(text)) {
    if (text::starts_with_ci(token, "http://") || text::starts_with_ci(token, "https://") ||
        text::starts_with_ci(token, "www.")) {
      return true;
    }
  }
  return false;
}

std::string dedup_key(std::string_view text) {
  auto tokens = text::split_whitespace(text);
  std::size_t first = 0;
  while (first < tokens.size() &&
         (is_retweet_marker(tokens[first]) || is_handle(tokens[first]))) {
    ++first;
  }
  tokens.erase(tokens.begin(), tokens.begin() + static_cast<std::ptrdiff_t>(first));
  return text::fold_case(text::join(tokens, " "));
}

std::vector<TweetRecord> keep_german(std::span<const TweetRecord> records) {
  return select(records, is_german, nullptr);
}

std::vector<TweetRecord> drop_urls(std::span<const TweetRecord> records) {
  return select(records, [](const TweetRecord& r) { return !contains_url(r.text); }, nullptr);
}

std::vector<TweetRecord> deduplicate(std::span<const TweetRecord> records) {
  return deduplicate_impl(records, nullptr);
}

FilterResult run_filters(std::span<const TweetRecord> records) {
  FilterResult result;
  auto& report = result.report;
  report.input_count = records.size();

  const auto german = select(records, is_german, &report.removed_language);
  report.after_language = german.size();

  const auto url_free = select(
      std::span<const TweetRecord>(german),
      [](const TweetRecord& r) { return !contains_url(r.text); }, &report.removed_url);
  report.after_url = url_free.size();

  result.retained = deduplicate_impl(url_free, &report.removed_duplicate);
  report.after_dedup = result.retained.size();
  return result;
}

}  // namespace needminer::filtering
