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

#include "needminer/textproc.hpp"

#include <algorithm>

#include "needminer/error.hpp"
#include "needminer/text.hpp"

namespace needminer::textproc {

SuffixStemmer::SuffixStemmer(std::vector<std::string> suffixes, std::size_t min_stem_len)
    : suffixes_(std::move(suffixes)), min_stem_len_(min_stem_len) {
  by_length_ = suffixes_;
  for (const auto& s : by_length_) {
    if (s.empty()) throw Error(ErrorCode::kInvalidConfig, "empty suffix rule");
  }
  std::stable_sort(by_length_.begin(), by_length_.end(), [](const auto& a, const auto& b) {
    return text::char_count(a) > text::char_count(b);
  });
  auto sorted = suffixes_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error(ErrorCode::kInvalidConfig, "duplicate suffix rule");
  }
}

std::string SuffixStemmer::stem(std::string_view token) const {
  for (const auto& suffix : by_length_) {
    if (!token.ends_with(suffix)) continue;
    const auto remainder = token.substr(0, token.size() - suffix.size());
    if (text::char_count(remainder) >= min_stem_len_) return std::string(remainder);
    break;
  }
  return std::string(token);
}

std::vector<std::string> default_german_suffixes() {
  return {"ern", "em", "en", "er", "es", "e", "s"};
}

PreprocessConfig PreprocessConfig::make(std::shared_ptr<const Stemmer> stemmer,
                                        std::span<const std::string> surface_stopwords,
                                        std::size_t min_token_len) {
  if (stemmer == nullptr) throw Error(ErrorCode::kInvalidConfig, "no stemmer");
  if (min_token_len < 1) throw Error(ErrorCode::kInvalidConfig, "min_token_len must be >= 1");
  PreprocessConfig config;
  config.min_token_len = min_token_len;
  for (const auto& word : surface_stopwords) {
    for (const auto& token : tokenize(word)) config.stopwords.insert(stemmer->stem(token));
  }
  config.stemmer = std::move(stemmer);
  return config;
}

PreprocessConfig PreprocessConfig::defaults() {
  return make(std::make_shared<SuffixStemmer>(default_german_suffixes()), {});
}

std::string strip_usernames(std::string_view text) {
  auto tokens = text::split_whitespace(text);
  std::erase_if(tokens, [](std::string_view t) { return t.front() == '@'; });
  return text::join(tokens, " ");
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (std::size_t pos = 0; pos < text.size();) {
    const auto d = text::decode_at(text, pos);
    pos += d.length;
    if (d.valid && text::is_word_char(d.code_point)) {
      text::append_utf8(current, text::fold_char(d.code_point));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

std::vector<std::string> preprocess(std::string_view text, const PreprocessConfig& config) {
  std::vector<std::string> out;
  for (const auto& token : tokenize(strip_usernames(text))) {
    auto stemmed = config.stemmer->stem(token);
    if (config.stopwords.contains(stemmed)) continue;
    if (text::char_count(stemmed) < config.min_token_len) continue;
    out.push_back(std::move(stemmed));
  }
  return out;
}

Vocabulary::Vocabulary(std::vector<std::string> terms) : terms_(std::move(terms)) {
  for (std::size_t i = 1; i < terms_.size(); ++i) {
    if (!(terms_[i - 1] < terms_[i])) {
      throw Error(ErrorCode::kInvalidConfig, "vocabulary terms not strictly increasing");
    }
  }
}

Vocabulary Vocabulary::build(std::span<const std::vector<std::string>> token_lists) {
  std::vector<std::string> terms;
  for (const auto& list : token_lists) terms.insert(terms.end(), list.begin(), list.end());
  if (terms.empty()) throw Error(ErrorCode::kEmptyVocabulary, "no tokens in training data");
  std::sort(terms.begin(), terms.end());
  terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
  return Vocabulary(std::move(terms));
}

std::optional<std::size_t> Vocabulary::index_of(std::string_view term) const {
  const auto it = std::lower_bound(terms_.begin(), terms_.end(), term);
  if (it == terms_.end() || *it != term) return std::nullopt;
  return static_cast<std::size_t>(it - terms_.begin());
}

FeatureVector::FeatureVector(std::size_t dimension, std::vector<std::uint32_t> active)
    : dimension_(dimension), active_(std::move(active)) {
  std::sort(active_.begin(), active_.end());
  active_.erase(std::unique(active_.begin(), active_.end()), active_.end());
  if (!active_.empty() && active_.back() >= dimension_) {
    throw Error(ErrorCode::kDimensionMismatch, "feature index out of range");
  }
}

FeatureVector FeatureVector::from_bits(std::span<const std::uint8_t> bits) {
  std::vector<std::uint32_t> active;
  for (std::size_t j = 0; j < bits.size(); ++j) {
    if (bits[j] != 0) active.push_back(static_cast<std::uint32_t>(j));
  }
  return FeatureVector(bits.size(), std::move(active));
}

bool FeatureVector::test(std::size_t index) const {
  return std::binary_search(active_.begin(), active_.end(), static_cast<std::uint32_t>(index));
}

std::vector<std::uint8_t> FeatureVector::to_bits() const {
  std::vector<std::uint8_t> bits(dimension_, 0);
  for (auto j : active_) bits[j] = 1;
  return bits;
}

FeatureVector vectorize(std::span<const std::string> tokens, const Vocabulary& vocabulary) {
  std::vector<std::uint32_t> active;
  for (const auto& token : tokens) {
    if (const auto index = vocabulary.index_of(token)) {
      active.push_back(static_cast<std::uint32_t>(*index));
    }
  }
  return FeatureVector(vocabulary.size(), std::move(active));
}

}  // namespace needminer::textproc
