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
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

// Tweet text to Boolean bag-of-words: username removal, case folding,
// tokenization, stemming, stop-word and short-token removal, vectorization.
namespace needminer::textproc {

class Stemmer {
 public:
  virtual ~Stemmer() = default;
  // token is non-empty and already case-folded.
  virtual std::string stem(std::string_view token) const = 0;
};

// Single-pass longest-suffix stripper. The longest suffix that matches is
// removed only if at least min_stem_len characters remain; shorter suffixes
// are not tried as a fallback.
class SuffixStemmer final : public Stemmer {
 public:
  static constexpr std::size_t kDefaultMinStemLen = 3;

  explicit SuffixStemmer(std::vector<std::string> suffixes,
                         std::size_t min_stem_len = kDefaultMinStemLen);

  std::string stem(std::string_view token) const override;

  const std::vector<std::string>& suffixes() const { return suffixes_; }
  std::size_t min_stem_len() const { return min_stem_len_; }

 private:
  std::vector<std::string> suffixes_;  // as given
  std::vector<std::string> by_length_;  // longest first
  std::size_t min_stem_len_;
};

// ern, em, en, er, es, e, s
std::vector<std::string> default_german_suffixes();

struct PreprocessConfig {
  std::shared_ptr<const Stemmer> stemmer;
  std::set<std::string> stopwords;  // stored stemmed
  std::size_t min_token_len = 2;

  // Folds and stems the surface-form stopword list with the given stemmer.
  // Throws InvalidConfig when min_token_len is 0 or the stemmer is null.
  static PreprocessConfig make(std::shared_ptr<const Stemmer> stemmer,
                               std::span<const std::string> surface_stopwords,
                               std::size_t min_token_len = 2);

  // Default German suffix rules, no stopwords.
  static PreprocessConfig defaults();
};

// Drops every whitespace-delimited token that starts with '@'; the remaining
// tokens are joined with single spaces.
std::string strip_usernames(std::string_view text);

// Case-folds, then splits on every run of non-alphanumeric characters.
std::vector<std::string> tokenize(std::string_view text);

std::vector<std::string> preprocess(std::string_view text, const PreprocessConfig& config);

class Vocabulary {
 public:
  Vocabulary() = default;

  // terms must be strictly increasing.
  explicit Vocabulary(std::vector<std::string> terms);

  // Sorted unique union of the token lists. Throws EmptyVocabulary if there
  // is no token at all.
  static Vocabulary build(std::span<const std::vector<std::string>> token_lists);

  std::optional<std::size_t> index_of(std::string_view term) const;
  const std::vector<std::string>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  bool operator==(const Vocabulary&) const = default;

 private:
  std::vector<std::string> terms_;
};

// Boolean presence vector, stored as the sorted indices of set bits.
class FeatureVector {
 public:
  FeatureVector() = default;

  // Indices are sorted and deduplicated; each must be < dimension.
  FeatureVector(std::size_t dimension, std::vector<std::uint32_t> active);

  static FeatureVector from_bits(std::span<const std::uint8_t> bits);

  std::size_t dimension() const { return dimension_; }
  std::span<const std::uint32_t> active() const { return active_; }
  bool test(std::size_t index) const;
  std::vector<std::uint8_t> to_bits() const;

  bool operator==(const FeatureVector&) const = default;

 private:
  std::size_t dimension_ = 0;
  std::vector<std::uint32_t> active_;
};

// Out-of-vocabulary tokens are ignored.
FeatureVector vectorize(std::span<const std::string> tokens, const Vocabulary& vocabulary);

}  // namespace needminer::textproc
