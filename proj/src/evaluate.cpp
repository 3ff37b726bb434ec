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

#include "needminer/evaluate.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>
#include <tuple>

#include "needminer/error.hpp"
#include "needminer/rng.hpp"
#include "needminer/text.hpp"

namespace needminer::evaluate {

namespace {

double ratio_or_zero(std::size_t num, std::size_t den, bool& zero_denominator) {
  if (den == 0) {
    zero_denominator = true;
    return 0.0;
  }
  return static_cast<double>(num) / static_cast<double>(den);
}

void check_lengths(std::size_t a, std::size_t b) {
  if (a != b) {
    throw Error(ErrorCode::kLengthMismatch, std::to_string(a) + " vs " + std::to_string(b));
  }
  if (a == 0) throw Error(ErrorCode::kEmpty, "no instances");
}

int sampling_rank(std::string_view sampling) {
  const auto folded = text::fold_case(sampling);
  if (folded == "none") return 0;
  if (folded == "undersampling") return 1;
  if (folded == "oversampling") return 2;
  if (folded == "smote") return 3;
  return 4;
}

std::string indicator_name(Objective objective) {
  switch (objective) {
    case Objective::kPrecision: return "Precision(Need)";
    case Objective::kRecall: return "Recall(Need)";
    case Objective::kF1: return "F1";
    case Objective::kF05: return "F0.5";
    case Objective::kF2: return "F2";
    case Objective::kAuc: return "AUC";
  }
  return "";
}

}  // namespace

ConfusionMatrix confusion(std::span<const Label> predictions, std::span<const Label> truths) {
  check_lengths(predictions.size(), truths.size());
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < truths.size(); ++i) {
    const bool predicted_need = predictions[i] == Label::kNeed;
    const bool need = truths[i] == Label::kNeed;
    if (predicted_need && need) {
      ++cm.tp;
    } else if (predicted_need) {
      ++cm.fp;
    } else if (need) {
      ++cm.fn;
    } else {
      ++cm.tn;
    }
  }
  return cm;
}

Metrics metrics(const ConfusionMatrix& cm) {
  if (cm.total() == 0) throw Error(ErrorCode::kEmpty, "empty confusion matrix");
  Metrics m;
  m.accuracy = static_cast<double>(cm.tp + cm.tn) / static_cast<double>(cm.total());
  m.precision_need = ratio_or_zero(cm.tp, cm.tp + cm.fp, m.zero_denominator);
  m.recall_need = ratio_or_zero(cm.tp, cm.tp + cm.fn, m.zero_denominator);
  m.precision_no_need = ratio_or_zero(cm.tn, cm.tn + cm.fn, m.zero_denominator);
  m.recall_no_need = ratio_or_zero(cm.tn, cm.tn + cm.fp, m.zero_denominator);
  return m;
}

double f_beta(double precision, double recall, double beta) {
  const double b2 = beta * beta;
  const double denominator = b2 * precision + recall;
  if (denominator == 0.0) return 0.0;
  return (1.0 + b2) * precision * recall / denominator;
}

RocCurve roc_auc(std::span<const double> scores, std::span<const Label> truths) {
  check_lengths(scores.size(), truths.size());
  const auto positives = static_cast<std::size_t>(
      std::count(truths.begin(), truths.end(), Label::kNeed));
  const auto negatives = truths.size() - positives;
  if (positives == 0 || negatives == 0) {
    throw Error(ErrorCode::kSingleClassTruth, "ROC needs both classes in the truth labels");
  }

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

  RocCurve curve;
  curve.points.push_back({0.0, 0.0});
  std::size_t tp = 0, fp = 0;
  double twice_area = 0.0;  // in units of 1 / (P * N)
  for (std::size_t i = 0; i < order.size();) {
    const double threshold = scores[order[i]];
    const std::size_t tp_before = tp, fp_before = fp;
    for (; i < order.size() && scores[order[i]] == threshold; ++i) {
      (truths[order[i]] == Label::kNeed ? tp : fp) += 1;
    }
    twice_area += static_cast<double>(fp - fp_before) * static_cast<double>(tp + tp_before);
    curve.points.push_back({static_cast<double>(fp) / static_cast<double>(negatives),
                            static_cast<double>(tp) / static_cast<double>(positives)});
  }
  curve.auc = twice_area / (2.0 * static_cast<double>(positives) * static_cast<double>(negatives));
  return curve;
}

std::string format_roc(const RocCurve& curve) {
  std::string out;
  char buf[64];
  for (const auto& p : curve.points) {
    std::snprintf(buf, sizeof buf, "%.6f\t%.6f\n", p.fpr, p.tpr);
    out += buf;
  }
  return out;
}

std::string cell_name(sampling::Strategy strategy, classify::Algorithm algorithm) {
  return std::string(sampling::to_string(strategy)) + "/" +
         std::string(classify::to_string(algorithm));
}

std::uint64_t repetition_seed(std::uint64_t base_seed, std::string_view cell, int repetition) {
  return derive_seed(base_seed, cell, static_cast<std::uint64_t>(repetition));
}

EvalReport evaluate_cell(const sampling::LabeledDataset& dataset, sampling::Strategy strategy,
                         const classify::ClassifierSpec& spec, const Protocol& protocol,
                         const SplitObserver& observer) {
  if (protocol.repetitions < 1) {
    throw Error(ErrorCode::kInvalidConfig, "repetitions must be >= 1");
  }
  const auto cell = cell_name(strategy, spec.algorithm);

  std::vector<sampling::SplitPlan> kfold_plans;
  if (protocol.mode == Protocol::Mode::kKFold) {
    kfold_plans = sampling::stratified_kfold(dataset, protocol.repetitions,
                                             derive_seed(protocol.base_seed, cell + "/kfold", 0));
  }

  EvalReport report;
  report.repetitions = protocol.repetitions;
  std::size_t predicted_need = 0, predicted_no_need = 0;
  for (int r = 0; r < protocol.repetitions; ++r) {
    const auto seed = repetition_seed(protocol.base_seed, cell, r);
    const auto plan = protocol.mode == Protocol::Mode::kKFold
                          ? kfold_plans[static_cast<std::size_t>(r)]
                          : sampling::stratified_split(dataset, protocol.ratio, seed);
    const auto split = sampling::materialize(dataset, plan);
    if (observer) observer(r, plan, split);

    auto balanced = sampling::balance(strategy, split.minority_train, split.majority_train, seed,
                                      protocol.smote_neighbors);
    for (auto& w : balanced.warnings) report.warnings.push_back(std::move(w));

    auto rep_spec = spec;
    rep_spec.seed = derive_seed(seed, "classifier", spec.seed);
    const auto model = classify::fit(rep_spec, balanced.training, split.vocabulary);

    std::vector<double> scores;
    std::vector<Label> predictions, truths;
    for (const auto& instance : split.test) {
      const double s = classify::score(model, instance.features);
      scores.push_back(s);
      predictions.push_back(classify::label_for_score(s));
      truths.push_back(instance.label);
    }

    RepetitionResult result;
    result.confusion = confusion(predictions, truths);
    const auto m = metrics(result.confusion);
    result.accuracy = m.accuracy;
    result.precision_need = m.precision_need;
    result.recall_need = m.recall_need;
    result.precision_no_need = m.precision_no_need;
    result.recall_no_need = m.recall_no_need;
    result.zero_denominator = m.zero_denominator;
    result.auc = roc_auc(scores, truths).auc;
    result.f_05 = f_beta(m.precision_need, m.recall_need, 0.5);
    result.f_1 = f_beta(m.precision_need, m.recall_need, 1.0);
    result.f_2 = f_beta(m.precision_need, m.recall_need, 2.0);
    predicted_need += result.confusion.tp + result.confusion.fp;
    predicted_no_need += result.confusion.tn + result.confusion.fn;
    report.zero_denominator = report.zero_denominator || result.zero_denominator;
    report.per_repetition.push_back(result);
  }

  const auto n = static_cast<double>(report.per_repetition.size());
  auto mean = [&](double RepetitionResult::*field) {
    double sum = 0.0;
    for (const auto& r : report.per_repetition) sum += r.*field;
    return sum / n;
  };
  report.accuracy = mean(&RepetitionResult::accuracy);
  report.auc = mean(&RepetitionResult::auc);
  report.precision_need = mean(&RepetitionResult::precision_need);
  report.recall_need = mean(&RepetitionResult::recall_need);
  report.precision_no_need = mean(&RepetitionResult::precision_no_need);
  report.recall_no_need = mean(&RepetitionResult::recall_no_need);
  report.f_05 = mean(&RepetitionResult::f_05);
  report.f_1 = mean(&RepetitionResult::f_1);
  report.f_2 = mean(&RepetitionResult::f_2);
  report.degenerate = predicted_need == 0 || predicted_no_need == 0;
  return report;
}

void sort_rows(std::vector<LeaderboardRow>& rows) {
  std::stable_sort(rows.begin(), rows.end(), [](const LeaderboardRow& a, const LeaderboardRow& b) {
    if (a.report.accuracy != b.report.accuracy) return a.report.accuracy > b.report.accuracy;
    if (a.report.auc != b.report.auc) return a.report.auc > b.report.auc;
    return a.name() < b.name();
  });
}

std::vector<LeaderboardRow> leaderboard(const sampling::LabeledDataset& dataset,
                                        std::span<const sampling::Strategy> strategies,
                                        std::span<const classify::ClassifierSpec> specs,
                                        const Protocol& protocol, int jobs) {
  if (strategies.empty() || specs.empty()) throw Error(ErrorCode::kEmpty, "empty grid");
  std::vector<std::pair<sampling::Strategy, classify::ClassifierSpec>> cells;
  for (auto strategy : strategies) {
    for (const auto& spec : specs) cells.emplace_back(strategy, spec);
  }

  std::vector<LeaderboardRow> rows(cells.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      try {
        const auto& [strategy, spec] = cells[i];
        rows[i] = {std::string(sampling::to_string(strategy)),
                   std::string(classify::to_string(spec.algorithm)),
                   evaluate_cell(dataset, strategy, spec, protocol)};
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const auto threads = static_cast<std::size_t>(std::max(1, jobs));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < std::min(threads, cells.size()); ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  sort_rows(rows);
  return rows;
}

std::string_view to_string(Objective objective) {
  switch (objective) {
    case Objective::kPrecision: return "precision";
    case Objective::kRecall: return "recall";
    case Objective::kF1: return "f1";
    case Objective::kF05: return "f05";
    case Objective::kF2: return "f2";
    case Objective::kAuc: return "auc";
  }
  return "precision";
}

Objective parse_objective(std::string_view name) {
  const auto folded = text::fold_case(name);
  if (folded == "precision") return Objective::kPrecision;
  if (folded == "recall") return Objective::kRecall;
  if (folded == "f1") return Objective::kF1;
  if (folded == "f05" || folded == "f0.5") return Objective::kF05;
  if (folded == "f2") return Objective::kF2;
  if (folded == "auc") return Objective::kAuc;
  throw Error(ErrorCode::kInvalidConfig, "unknown objective '" + std::string(name) + "'");
}

double objective_value(const EvalReport& report, Objective objective) {
  switch (objective) {
    case Objective::kPrecision: return report.precision_need;
    case Objective::kRecall: return report.recall_need;
    case Objective::kF1: return report.f_1;
    case Objective::kF05: return report.f_05;
    case Objective::kF2: return report.f_2;
    case Objective::kAuc: return report.auc;
  }
  return 0.0;
}

Recommendation recommend(std::span<const LeaderboardRow> rows, Objective objective) {
  if (rows.empty()) throw Error(ErrorCode::kEmpty, "no leaderboard rows");
  const LeaderboardRow* best = nullptr;
  std::vector<std::string> excluded;
  std::size_t candidates = 0;
  auto key = [&](const LeaderboardRow& row) {
    return std::make_tuple(objective_value(row.report, objective), -sampling_rank(row.sampling),
                           row.report.accuracy);
  };
  for (const auto& row : rows) {
    if (row.report.degenerate) {
      excluded.push_back(row.name());
      continue;
    }
    ++candidates;
    if (best == nullptr || key(row) > key(*best) ||
        (key(row) == key(*best) && row.name() < best->name())) {
      best = &row;
    }
  }
  if (best == nullptr) throw Error(ErrorCode::kAllDegenerate, "every row is degenerate");

  Recommendation rec{*best, objective_value(best->report, objective), {}};
  char value[32];
  std::snprintf(value, sizeof value, "%.3f", rec.value);
  rec.rationale = "highest " + indicator_name(objective) + " = " + value + " among " +
                  std::to_string(candidates) + " non-degenerate cell(s)";
  if (!excluded.empty()) {
    rec.rationale += "; excluded as single-class predictors: ";
    for (std::size_t i = 0; i < excluded.size(); ++i) {
      rec.rationale += (i > 0 ? ", " : "") + excluded[i];
    }
  }
  return rec;
}

}  // namespace needminer::evaluate
