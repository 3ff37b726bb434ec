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
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "needminer/labeling.hpp"
#include "needminer/textproc.hpp"

// Labeled datasets, stratified train/test partitions and training-set
// balancing (undersampling, oversampling, SMOTE on Boolean features).
namespace needminer::sampling {

enum class Label { kNeed, kNoNeed };

std::string_view to_string(Label label);
Label parse_label(std::string_view name);

struct Document {
  std::string id;
  std::vector<std::string> tokens;
  Label label = Label::kNoNeed;

  bool operator==(const Document&) const = default;
};

struct LabeledDataset {
  std::vector<Document> documents;  // ordered by id

  std::size_t count(Label label) const;
  std::size_t size() const { return documents.size(); }
};

// Keeps Need and NoNeed items (Suspend and Pending are dropped), preprocesses
// their text and orders them by id. Throws EmptyDataset.
LabeledDataset build_dataset(std::span<const labeling::LabeledItem> items,
                             const textproc::PreprocessConfig& config);

// One JSON object per line: {"id", "label", "tokens": [...]}.
void write_dataset(const std::filesystem::path& path, const LabeledDataset& dataset);
LabeledDataset read_dataset(const std::filesystem::path& path);

struct Instance {
  std::string id;
  textproc::FeatureVector features;
  Label label = Label::kNoNeed;
  bool synthetic = false;

  bool operator==(const Instance&) const = default;
};

// Index sets into LabeledDataset::documents. X/Y are the minority and majority
// classes; A and C their training parts, B and E their test parts.
struct SplitPlan {
  Label minority = Label::kNeed;
  std::vector<std::size_t> minority_all;    // X
  std::vector<std::size_t> majority_all;    // Y
  std::vector<std::size_t> minority_train;  // A
  std::vector<std::size_t> minority_test;   // B
  std::vector<std::size_t> majority_train;  // C
  std::vector<std::size_t> majority_test;   // E
  double ratio = 2.0 / 3.0;
  std::uint64_t seed = 0;
};

inline constexpr double kDefaultTrainRatio = 2.0 / 3.0;

// Per class, round(ratio * count) instances (clamped to [1, count - 1]) are
// drawn uniformly without replacement for training. The minority class is
// the smaller one (Need on a tie). Throws ClassTooSmall when a class has
// fewer than two instances, InvalidConfig when ratio is outside (0, 1).
SplitPlan stratified_split(const LabeledDataset& dataset, double ratio, std::uint64_t seed);

// Every document in training and none in test, for fitting a final model.
SplitPlan training_only(const LabeledDataset& dataset);

// k stratified folds: each class is shuffled and dealt round-robin to the
// folds; plan f tests on fold f and trains on the rest. Throws ClassTooSmall
// when a class has fewer than k instances, InvalidConfig when k < 2.
std::vector<SplitPlan> stratified_kfold(const LabeledDataset& dataset, int k, std::uint64_t seed);

// Partition id lists as "partition<TAB>id" lines (partitions A, B, C, E).
std::string format_manifest(const SplitPlan& plan, const LabeledDataset& dataset);

// A split vectorized against a vocabulary built from A and C only.
struct MaterializedSplit {
  textproc::Vocabulary vocabulary;
  std::vector<Instance> minority_train;
  std::vector<Instance> majority_train;
  std::vector<Instance> test;  // B then E
};

MaterializedSplit materialize(const LabeledDataset& dataset, const SplitPlan& plan);

enum class Strategy { kNone, kUndersampling, kOversampling, kSmote };

std::string_view to_string(Strategy strategy);
Strategy parse_strategy(std::string_view name);
std::vector<Strategy> all_strategies();

// All balancing functions require minority.size() <= majority.size() and
// return a training set whose two classes have equal counts (except kNone).

// minority plus a uniform subset of majority of the same size.
std::vector<Instance> undersample(std::span<const Instance> minority,
                                  std::span<const Instance> majority, std::uint64_t seed);

// majority, minority, and |majority| - |minority| copies drawn with
// replacement from minority.
std::vector<Instance> oversample(std::span<const Instance> minority,
                                 std::span<const Instance> majority, std::uint64_t seed);

inline constexpr int kDefaultSmoteNeighbors = 5;

struct SyntheticOrigin {
  std::size_t source;    // index into minority
  std::size_t neighbor;  // index into minority
  double gap;
};

struct SmoteResult {
  std::vector<Instance> training;   // majority, minority, synthetic
  std::vector<Instance> synthetic;  // the generated instances alone
  std::vector<SyntheticOrigin> origins;
};

// Generates |majority| - |minority| instances. Sources are taken round-robin
// over a seeded permutation of minority; each pairs with one of its
// min(k, |minority| - 1) nearest minority neighbours (Euclidean on 0/1
// vectors, ties by index) and a gap g in [0, 1); bit j of the result is
// round(x_j + g * (n_j - x_j)). Throws MinorityTooSmall if |minority| < 2.
SmoteResult smote(std::span<const Instance> minority, std::span<const Instance> majority,
                  int k, std::uint64_t seed);

struct Balanced {
  std::vector<Instance> training;
  std::vector<std::string> warnings;
};

// Dispatches on strategy. SMOTE with fewer than two minority instances falls
// back to oversampling and records a warning.
Balanced balance(Strategy strategy, std::span<const Instance> minority,
                 std::span<const Instance> majority, std::uint64_t seed,
                 int smote_neighbors = kDefaultSmoteNeighbors);

}  // namespace needminer::sampling
