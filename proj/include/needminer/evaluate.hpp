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
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "needminer/classify.hpp"
#include "needminer/sampling.hpp"

// Metrics, the repeated evaluation protocol, leaderboards and
// objective-driven model recommendation. Need is the positive class.
namespace needminer::evaluate {

using sampling::Label;

struct ConfusionMatrix {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t tn = 0;

  std::size_t total() const { return tp + fp + fn + tn; }
  bool operator==(const ConfusionMatrix&) const = default;
};

// Throws LengthMismatch or Empty.
ConfusionMatrix confusion(std::span<const Label> predictions, std::span<const Label> truths);

struct Metrics {
  double accuracy = 0.0;
  double precision_need = 0.0;
  double recall_need = 0.0;
  double precision_no_need = 0.0;
  double recall_no_need = 0.0;
  bool zero_denominator = false;  // some precision/recall was 0/0, reported as 0
};

// Throws Empty for an all-zero matrix.
Metrics metrics(const ConfusionMatrix& cm);

// (1 + b^2) p r / (b^2 p + r); 0 when p = r = 0.
double f_beta(double precision, double recall, double beta);

struct RocPoint {
  double fpr;
  double tpr;
};

struct RocCurve {
  std::vector<RocPoint> points;  // from (0, 0) to (1, 1)
  double auc = 0.0;
};

// Thresholds sweep the distinct scores from high to low; the area is the
// trapezoidal sum, which equals P(s+ > s-) + P(s+ = s-) / 2. Throws
// SingleClassTruth, LengthMismatch or Empty.
RocCurve roc_auc(std::span<const double> scores, std::span<const Label> truths);

// "fpr<TAB>tpr" per line.
std::string format_roc(const RocCurve& curve);

struct Protocol {
  enum class Mode { kRepeatedHoldout, kKFold };

  Mode mode = Mode::kRepeatedHoldout;
  int repetitions = 10;  // holdout repetitions, or k in k-fold mode
  double ratio = sampling::kDefaultTrainRatio;
  std::uint64_t base_seed = 0;
  int smote_neighbors = sampling::kDefaultSmoteNeighbors;
};

struct RepetitionResult {
  ConfusionMatrix confusion;
  double accuracy = 0.0;
  double auc = 0.0;
  double precision_need = 0.0;
  double recall_need = 0.0;
  double precision_no_need = 0.0;
  double recall_no_need = 0.0;
  double f_05 = 0.0;
  double f_1 = 0.0;
  double f_2 = 0.0;
  bool zero_denominator = false;

  bool operator==(const RepetitionResult&) const = default;
};

struct EvalReport {
  // Arithmetic means over repetitions.
  double accuracy = 0.0;
  double auc = 0.0;
  double precision_need = 0.0;
  double recall_need = 0.0;
  double precision_no_need = 0.0;
  double recall_no_need = 0.0;
  double f_05 = 0.0;
  double f_1 = 0.0;
  double f_2 = 0.0;
  bool degenerate = false;  // pooled test predictions contain a single class
  bool zero_denominator = false;
  int repetitions = 0;
  std::vector<RepetitionResult> per_repetition;
  std::vector<std::string> warnings;

  bool operator==(const EvalReport&) const = default;
};

std::string cell_name(sampling::Strategy strategy, classify::Algorithm algorithm);

// Seed of repetition r of a cell: derive_seed(base_seed, cell, r).
std::uint64_t repetition_seed(std::uint64_t base_seed, std::string_view cell, int repetition);

// Called once per repetition with the split actually used.
using SplitObserver = std::function<void(int repetition, const sampling::SplitPlan&,
                                         const sampling::MaterializedSplit&)>;

// Per repetition: split, balance the training part, build the vocabulary
// from the training part only, vectorize, fit, score the test part. The
// classifier's own seed is mixed into each repetition's seed.
EvalReport evaluate_cell(const sampling::LabeledDataset& dataset, sampling::Strategy strategy,
                         const classify::ClassifierSpec& spec, const Protocol& protocol,
                         const SplitObserver& observer = {});

struct LeaderboardRow {
  std::string sampling;
  std::string algorithm;
  EvalReport report;

  std::string name() const { return sampling + "/" + algorithm; }
};

// Accuracy descending, then AUC descending, then name.
void sort_rows(std::vector<LeaderboardRow>& rows);

// One row per (strategy, spec) cell, sorted. Cells run on up to 
// threads; results do not depend on scheduling.
std::vector<LeaderboardRow> leaderboard(const sampling::LabeledDataset& dataset,
                                        std::span<const sampling::Strategy> strategies,
                                        std::span<const classify::ClassifierSpec> specs,
                                        const Protocol& protocol, int jobs = 1);

enum class Objective { kPrecision, kRecall, kF1, kF05, kF2, kAuc };

std::string_view to_string(Objective objective);
Objective parse_objective(std::string_view name);
double objective_value(const EvalReport& report, Objective objective);

struct Recommendation {
  LeaderboardRow row;
  double value = 0.0;
  std::string rationale;
};

// Drops degenerate rows, then takes the maximum of the objective's
// indicator. Ties prefer the sampling strategy that changes the real
// training data least (none, undersampling, oversampling, smote, other),
// then higher accuracy, then name. Throws Empty or AllDegenerate.
Recommendation recommend(std::span<const LeaderboardRow> rows, Objective objective);

// Aligned table in the column order Accuracy (%), AUC, Precision(Need),
// Recall(Need), Precision(NoNeed), Recall(NoNeed), Sampling, Algorithm,
// F0.5, F1, F2.
std::string format_table(std::span<const LeaderboardRow> rows);

// One JSON object per row, including per-repetition values.
std::string format_records(std::span<const LeaderboardRow> rows);
std::vector<LeaderboardRow> parse_records(std::string_view content);

// Tab-separated reference results: accuracy_pct, auc, precision_need,
// recall_need, precision_no_need, recall_no_need, sampling, algorithm, f_05,
// f_1, f_2, degenerate. A header line and "#" comments are skipped.
std::vector<LeaderboardRow> load_results_table(const std::filesystem::path& path);

}  // namespace needminer::evaluate
