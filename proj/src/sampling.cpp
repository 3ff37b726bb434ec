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

#include "needminer/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <numeric>

#include "needminer/error.hpp"
#include "needminer/io.hpp"
#include "needminer/rng.hpp"
#include "needminer/text.hpp"

namespace needminer::sampling {

namespace {

using Json = nlohmann::json;

void require_balanceable(std::span<const Instance> minority, std::span<const Instance> majority) {
  if (minority.size() > majority.size()) {
    throw Error(ErrorCode::kInvalidConfig, "minority training part larger than majority");
  }
}

std::size_t hamming(const textproc::FeatureVector& a, const textproc::FeatureVector& b) {
  const auto x = a.active();
  const auto y = b.active();
  std::size_t i = 0, j = 0, common = 0;
  while (i < x.size() && j < y.size()) {
    if (x[i] == y[j]) {
      ++common;
      ++i;
      ++j;
    } else if (x[i] < y[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return x.size() + y.size() - 2 * common;
}

textproc::FeatureVector interpolate(const textproc::FeatureVector& x,
                                    const textproc::FeatureVector& n, double gap) {
  const auto xa = x.active();
  const auto na = n.active();
  std::vector<std::uint32_t> bits;
  std::size_t i = 0, j = 0;
  while (i < xa.size() || j < na.size()) {
    const bool take_x = j == na.size() || (i < xa.size() && xa[i] < na[j]);
    const bool take_n = i == xa.size() || (j < na.size() && na[j] < xa[i]);
    if (!take_x && !take_n) {  // both set
      bits.push_back(xa[i]);
      ++i;
      ++j;
    } else if (take_x) {  // x_j = 1, n_j = 0
      if (std::round(1.0 - gap) == 1.0) bits.push_back(xa[i]);
      ++i;
    } else {  // x_j = 0, n_j = 1
      if (std::round(gap) == 1.0) bits.push_back(na[j]);
      ++j;
    }
  }
  return textproc::FeatureVector(x.dimension(), std::move(bits));
}

}  // namespace

std::string_view to_string(Label label) {
  return label == Label::kNeed ? "need" : "no_need";
}

Label parse_label(std::string_view name) {
  if (name == "need") return Label::kNeed;
  if (name == "no_need") return Label::kNoNeed;
  throw Error(ErrorCode::kMalformedLine, "unknown label '" + std::string(name) + "'");
}

std::size_t LabeledDataset::count(Label label) const {
  return static_cast<std::size_t>(std::count_if(
      documents.begin(), documents.end(), [&](const Document& d) { return d.label == label; }));
}

LabeledDataset build_dataset(std::span<const labeling::LabeledItem> items,
                             const textproc::PreprocessConfig& config) {
  LabeledDataset dataset;
  for (const auto& item : items) {
    if (item.verdict != labeling::Verdict::kNeed && item.verdict != labeling::Verdict::kNoNeed) {
      continue;
    }
    dataset.documents.push_back(
        {item.id, textproc::preprocess(item.text, config),
         item.verdict == labeling::Verdict::kNeed ? Label::kNeed : Label::kNoNeed});
  }
  if (dataset.documents.empty()) {
    throw Error(ErrorCode::kEmptyDataset, "no Need or NoNeed items in export");
  }
  std::sort(dataset.documents.begin(), dataset.documents.end(),
            [](const Document& a, const Document& b) { return a.id < b.id; });
  return dataset;
}

void write_dataset(const std::filesystem::path& path, const LabeledDataset& dataset) {
  std::string content;
  for (const auto& doc : dataset.documents) {
    nlohmann::ordered_json object;
    object["id"] = doc.id;
    object["label"] = std::string(to_string(doc.label));
    object["tokens"] = doc.tokens;
    content += object.dump(-1, ' ', false, Json::error_handler_t::replace);
    content += '\n';
  }
  io::write_text(path, content);
}

LabeledDataset read_dataset(const std::filesystem::path& path) {
  LabeledDataset dataset;
  const auto lines = io::read_lines(path);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (text::trim(lines[i]).empty()) continue;
    try {
      const auto object = Json::parse(lines[i]);
      Document doc;
      doc.id = object.at("id").get<std::string>();
      doc.label = parse_label(object.at("label").get<std::string>());
      doc.tokens = object.at("tokens").get<std::vector<std::string>>();
      dataset.documents.push_back(std::move(doc));
    } catch (const Json::exception& e) {
      throw Error(ErrorCode::kMalformedLine,
                  path.string() + ":" + std::to_string(i + 1) + ": " + e.what());
    }
  }
  if (dataset.documents.empty()) throw Error(ErrorCode::kEmptyDataset, path.string());
  std::sort(dataset.documents.begin(), dataset.documents.end(),
            [](const Document& a, const Document& b) { return a.id < b.id; });
  return dataset;
}

SplitPlan stratified_split(const LabeledDataset& dataset, double ratio, std::uint64_t seed) {
  if (!(ratio > 0.0 && ratio < 1.0)) {
    throw Error(ErrorCode::kInvalidConfig, "training ratio must lie in (0, 1)");
  }
  std::vector<std::size_t> need, no_need;
  for (std::size_t i = 0; i < dataset.documents.size(); ++i) {
    (dataset.documents[i].label == Label::kNeed ? need : no_need).push_back(i);
  }
  if (need.size() < 2 || no_need.size() < 2) {
    throw Error(ErrorCode::kClassTooSmall,
                "need " + std::to_string(need.size()) + ", no_need " +
                    std::to_string(no_need.size()) + "; each class needs >= 2 instances");
  }

  SplitPlan plan;
  plan.ratio = ratio;
  plan.seed = seed;
  plan.minority = need.size() <= no_need.size() ? Label::kNeed : Label::kNoNeed;
  plan.minority_all = plan.minority == Label::kNeed ? need : no_need;
  plan.majority_all = plan.minority == Label::kNeed ? no_need : need;

  auto draw = [&](const std::vector<std::size_t>& members, std::uint64_t stream,
                  std::vector<std::size_t>& train, std::vector<std::size_t>& test) {
    const auto n = members.size();
    auto n_train = static_cast<std::size_t>(std::llround(ratio * static_cast<double>(n)));
    n_train = std::clamp<std::size_t>(n_train, 1, n - 1);
    auto shuffled = members;
    Rng rng(derive_seed(seed, "split", stream));
    rng.shuffle(std::span<std::size_t>(shuffled));
    train.assign(shuffled.begin(), shuffled.begin() + static_cast<std::ptrdiff_t>(n_train));
    test.assign(shuffled.begin() + static_cast<std::ptrdiff_t>(n_train), shuffled.end());
    std::sort(train.begin(), train.end());
    std::sort(test.begin(), test.end());
  };
  draw(plan.minority_all, 0, plan.minority_train, plan.minority_test);
  draw(plan.majority_all, 1, plan.majority_train, plan.majority_test);
  return plan;
}

SplitPlan training_only(const LabeledDataset& dataset) {
  SplitPlan plan;
  plan.ratio = 1.0;
  std::size_t need = 0;
  for (const auto& d : dataset.documents) need += d.label == Label::kNeed ? 1 : 0;
  plan.minority = need <= dataset.size() - need ? Label::kNeed : Label::kNoNeed;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    const bool minority = dataset.documents[i].label == plan.minority;
    (minority ? plan.minority_all : plan.majority_all).push_back(i);
    (minority ? plan.minority_train : plan.majority_train).push_back(i);
  }
  return plan;
}

std::vector<SplitPlan> stratified_kfold(const LabeledDataset& dataset, int k, std::uint64_t seed) {
  if (k < 2) throw Error(ErrorCode::kInvalidConfig, "k-fold needs k >= 2");
  std::vector<std::size_t> need, no_need;
  for (std::size_t i = 0; i < dataset.documents.size(); ++i) {
    (dataset.documents[i].label == Label::kNeed ? need : no_need).push_back(i);
  }
  const auto folds = static_cast<std::size_t>(k);
  if (need.size() < folds || no_need.size() < folds) {
    throw Error(ErrorCode::kClassTooSmall, "each class needs at least k instances");
  }
  const Label minority = need.size() <= no_need.size() ? Label::kNeed : Label::kNoNeed;
  const auto& minority_all = minority == Label::kNeed ? need : no_need;
  const auto& majority_all = minority == Label::kNeed ? no_need : need;

  auto deal = [&](const std::vector<std::size_t>& members, std::uint64_t stream) {
    auto shuffled = members;
    Rng rng(derive_seed(seed, "kfold", stream));
    rng.shuffle(std::span<std::size_t>(shuffled));
    std::vector<std::size_t> fold_of(dataset.documents.size(), 0);
    for (std::size_t r = 0; r < shuffled.size(); ++r) fold_of[shuffled[r]] = r % folds;
    return fold_of;
  };
  const auto minority_fold = deal(minority_all, 0);
  const auto majority_fold = deal(majority_all, 1);

  std::vector<SplitPlan> plans;
  for (std::size_t f = 0; f < folds; ++f) {
    SplitPlan plan;
    plan.minority = minority;
    plan.minority_all = minority_all;
    plan.majority_all = majority_all;
    plan.ratio = 1.0 - 1.0 / static_cast<double>(folds);
    plan.seed = seed;
    for (auto i : minority_all) {
      (minority_fold[i] == f ? plan.minority_test : plan.minority_train).push_back(i);
    }
    for (auto i : majority_all) {
      (majority_fold[i] == f ? plan.majority_test : plan.majority_train).push_back(i);
    }
    plans.push_back(std::move(plan));
  }
  return plans;
}

std::string format_manifest(const SplitPlan& plan, const LabeledDataset& dataset) {
  std::string out;
  auto emit = [&](const char* name, const std::vector<std::size_t>& indices) {
    for (auto i : indices) {
      out += name;
      out += '\t';
      out += dataset.documents.at(i).id;
      out += '\n';
    }
  };
  emit("A", plan.minority_train);
  emit("B", plan.minority_test);
  emit("C", plan.majority_train);
  emit("E", plan.majority_test);
  return out;
}

MaterializedSplit materialize(const LabeledDataset& dataset, const SplitPlan& plan) {
  std::vector<std::vector<std::string>> training_tokens;
  for (auto i : plan.minority_train) training_tokens.push_back(dataset.documents.at(i).tokens);
  for (auto i : plan.majority_train) training_tokens.push_back(dataset.documents.at(i).tokens);

  MaterializedSplit split;
  split.vocabulary = textproc::Vocabulary::build(training_tokens);
  auto make = [&](std::size_t i) {
    const auto& doc = dataset.documents.at(i);
    return Instance{doc.id, textproc::vectorize(doc.tokens, split.vocabulary), doc.label, false};
  };
  for (auto i : plan.minority_train) split.minority_train.push_back(make(i));
  for (auto i : plan.majority_train) split.majority_train.push_back(make(i));
  for (auto i : plan.minority_test) split.test.push_back(make(i));
  for (auto i : plan.majority_test) split.test.push_back(make(i));
  return split;
}

std::string_view to_string(Strategy strategy) {
  switch (strategy) {
    case Strategy::kNone: return "none";
    case Strategy::kUndersampling: return "undersampling";
    case Strategy::kOversampling: return "oversampling";
    case Strategy::kSmote: return "smote";
  }
  return "none";
}

Strategy parse_strategy(std::string_view name) {
  const std::string folded = text::fold_case(name);
  if (folded == "none") return Strategy::kNone;
  if (folded == "undersampling") return Strategy::kUndersampling;
  if (folded == "oversampling") return Strategy::kOversampling;
  if (folded == "smote") return Strategy::kSmote;
  throw Error(ErrorCode::kInvalidConfig, "unknown sampling strategy '" + std::string(name) + "'");
}

std::vector<Strategy> all_strategies() {
  return {Strategy::kNone, Strategy::kUndersampling, Strategy::kOversampling, Strategy::kSmote};
}

std::vector<Instance> undersample(std::span<const Instance> minority,
                                  std::span<const Instance> majority, std::uint64_t seed) {
  require_balanceable(minority, majority);
  std::vector<std::size_t> order(majority.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(derive_seed(seed, "undersample", 0));
  rng.shuffle(std::span<std::size_t>(order));
  order.resize(minority.size());
  std::sort(order.begin(), order.end());

  std::vector<Instance> out(minority.begin(), minority.end());
  for (auto i : order) out.push_back(majority[i]);
  return out;
}

std::vector<Instance> oversample(std::span<const Instance> minority,
                                 std::span<const Instance> majority, std::uint64_t seed) {
  require_balanceable(minority, majority);
  std::vector<Instance> out(majority.begin(), majority.end());
  out.insert(out.end(), minority.begin(), minority.end());
  if (minority.empty()) return out;
  Rng rng(derive_seed(seed, "oversample", 0));
  for (std::size_t n = minority.size(); n < majority.size(); ++n) {
    out.push_back(minority[rng.below(minority.size())]);
  }
  return out;
}

SmoteResult smote(std::span<const Instance> minority, std::span<const Instance> majority, int k,
                  std::uint64_t seed) {
  require_balanceable(minority, majority);
  if (minority.size() < 2) {
    throw Error(ErrorCode::kMinorityTooSmall, "SMOTE needs at least two minority instances");
  }
  if (k < 1) throw Error(ErrorCode::kInvalidConfig, "SMOTE k must be >= 1");
  const auto m = minority.size();
  const auto neighbors_k = std::min<std::size_t>(static_cast<std::size_t>(k), m - 1);

  const auto needed = majority.size() - m;
  SmoteResult result;
  result.training.assign(majority.begin(), majority.end());
  result.training.insert(result.training.end(), minority.begin(), minority.end());
  if (needed == 0) return result;

  // k nearest minority neighbours of every minority instance.
  std::vector<std::vector<std::size_t>> neighbors(m);
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<std::pair<std::size_t, std::size_t>> by_distance;  // (distance, index)
    for (std::size_t j = 0; j < m; ++j) {
      if (j != i) by_distance.emplace_back(hamming(minority[i].features, minority[j].features), j);
    }
    std::partial_sort(by_distance.begin(),
                      by_distance.begin() + static_cast<std::ptrdiff_t>(neighbors_k),
                      by_distance.end());
    for (std::size_t r = 0; r < neighbors_k; ++r) neighbors[i].push_back(by_distance[r].second);
  }

  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng order_rng(derive_seed(seed, "smote-order", 0));
  order_rng.shuffle(std::span<std::size_t>(order));

  for (std::size_t n = 0; n < needed; ++n) {
    // Each synthetic instance has its own stream, so generation order is free.
    Rng rng(derive_seed(seed, "smote", n));
    const auto source = order[n % m];
    const auto neighbor = neighbors[source][rng.below(neighbors_k)];
    const double gap = rng.unit();
    const auto& x = minority[source];
    Instance synthetic{x.id + "#smote" + std::to_string(n),
                       interpolate(x.features, minority[neighbor].features, gap), x.label, true};
    result.origins.push_back({source, neighbor, gap});
    result.synthetic.push_back(synthetic);
    result.training.push_back(std::move(synthetic));
  }
  return result;
}

Balanced balance(Strategy strategy, std::span<const Instance> minority,
                 std::span<const Instance> majority, std::uint64_t seed, int smote_neighbors) {
  Balanced out;
  switch (strategy) {
    case Strategy::kNone:
      out.training.assign(minority.begin(), minority.end());
      out.training.insert(out.training.end(), majority.begin(), majority.end());
      break;
    case Strategy::kUndersampling:
      out.training = undersample(minority, majority, seed);
      break;
    case Strategy::kOversampling:
      out.training = oversample(minority, majority, seed);
      break;
    case Strategy::kSmote:
      if (minority.size() < 2) {
        out.warnings.push_back("SMOTE needs two minority instances; oversampling instead");
        out.training = oversample(minority, majority, seed);
      } else {
        out.training = smote(minority, majority, smote_neighbors, seed).training;
      }
      break;
  }
  return out;
}

}  // namespace needminer::sampling
