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

#include "needminer/classify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "classify_internal.hpp"
#include "needminer/error.hpp"
#include "needminer/rng.hpp"
#include "needminer/text.hpp"

namespace needminer::classify {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::kInvalidHyperparameter, what);
}

bool is_whole(double v) { return std::isfinite(v) && v == std::floor(v); }

detail::TreeOptions tree_options(const Hyperparameters& h) {
  return {static_cast<std::size_t>(h.at("features_per_node")),
          static_cast<std::size_t>(h.at("max_depth"))};
}

}  // namespace

std::string_view to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kNaiveBayes: return "naive_bayes";
    case Algorithm::kSpegasos: return "spegasos";
    case Algorithm::kRandomTree: return "random_tree";
    case Algorithm::kRandomForest: return "random_forest";
  }
  return "naive_bayes";
}

Algorithm parse_algorithm(std::string_view name) {
  const auto folded = text::fold_case(name);
  if (folded == "naive_bayes") return Algorithm::kNaiveBayes;
  if (folded == "spegasos") return Algorithm::kSpegasos;
  if (folded == "random_tree" || folded == "random_trees") return Algorithm::kRandomTree;
  if (folded == "random_forest" || folded == "random_forests") return Algorithm::kRandomForest;
  throw Error(ErrorCode::kInvalidConfig, "unknown algorithm '" + std::string(name) + "'");
}

std::vector<Algorithm> all_algorithms() {
  return {Algorithm::kNaiveBayes, Algorithm::kSpegasos, Algorithm::kRandomTree,
          Algorithm::kRandomForest};
}

Hyperparameters default_hyperparameters(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kNaiveBayes: return {{"alpha", 1.0}};
    case Algorithm::kSpegasos: return {{"lambda", 1e-4}, {"epochs", 100.0}, {"projection", 1.0}};
    case Algorithm::kRandomTree: return {{"features_per_node", 0.0}, {"max_depth", 0.0}};
    case Algorithm::kRandomForest:
      return {{"features_per_node", 0.0}, {"max_depth", 0.0}, {"trees", 100.0}};
  }
  return {};
}

Hyperparameters resolve(const ClassifierSpec& spec) {
  auto h = default_hyperparameters(spec.algorithm);
  for (const auto& [key, value] : spec.hyperparameters) {
    require(h.contains(key), "'" + key + "' is not a " + std::string(to_string(spec.algorithm)) +
                                 " hyperparameter");
    require(std::isfinite(value), key + " must be finite");
    h[key] = value;
  }
  switch (spec.algorithm) {
    case Algorithm::kNaiveBayes:
      require(h["alpha"] > 0.0, "alpha must be > 0");
      break;
    case Algorithm::kSpegasos:
      require(h["lambda"] > 0.0, "lambda must be > 0");
      require(is_whole(h["epochs"]) && h["epochs"] >= 1.0, "epochs must be a positive integer");
      require(h["projection"] == 0.0 || h["projection"] == 1.0, "projection must be 0 or 1");
      break;
    case Algorithm::kRandomForest:
      require(is_whole(h["trees"]) && h["trees"] >= 1.0, "trees must be a positive integer");
      [[fallthrough]];
    case Algorithm::kRandomTree:
      require(is_whole(h["features_per_node"]) && h["features_per_node"] >= 0.0,
              "features_per_node must be a non-negative integer");
      require(is_whole(h["max_depth"]) && h["max_depth"] >= 0.0,
              "max_depth must be a non-negative integer");
      break;
  }
  return h;
}

TrainedModel fit(const ClassifierSpec& spec, std::span<const Instance> training,
                 Vocabulary vocabulary, FitTrace* trace) {
  const auto h = resolve(spec);
  const auto dimension = vocabulary.size();

  std::vector<const Instance*> data;
  data.reserve(training.size());
  bool has_need = false, has_no_need = false;
  for (const auto& instance : training) {
    if (instance.features.dimension() != dimension) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "instance " + instance.id + " has " +
                      std::to_string(instance.features.dimension()) + " features, vocabulary " +
                      std::to_string(dimension));
    }
    (instance.label == Label::kNeed ? has_need : has_no_need) = true;
    data.push_back(&instance);
  }
  if (!has_need || !has_no_need) {
    throw Error(ErrorCode::kSingleClassTraining, "training data must contain both classes");
  }
  std::stable_sort(data.begin(), data.end(),
                   [](const Instance* a, const Instance* b) { return a->id < b->id; });

  TrainedModel model{spec, std::move(vocabulary), {}};
  model.spec.hyperparameters = h;
  switch (spec.algorithm) {
    case Algorithm::kNaiveBayes:
      model.parameters = detail::fit_naive_bayes(data, dimension, h.at("alpha"));
      break;
    case Algorithm::kSpegasos:
      model.parameters = detail::fit_pegasos(data, dimension, h.at("lambda"),
                                             static_cast<int>(h.at("epochs")),
                                             h.at("projection") != 0.0, spec.seed, trace);
      break;
    case Algorithm::kRandomTree:
      model.parameters = detail::grow_tree(data, dimension, tree_options(h),
                                           derive_seed(spec.seed, "tree", 0));
      break;
    case Algorithm::kRandomForest:
      model.parameters = detail::grow_forest(data, dimension, tree_options(h),
                                             static_cast<std::size_t>(h.at("trees")), spec.seed);
      break;
  }
  return model;
}

double score(const TrainedModel& model, const FeatureVector& x) {
  if (x.dimension() != model.vocabulary.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "vector has " + std::to_string(x.dimension()) + " features, model expects " +
                    std::to_string(model.vocabulary.size()));
  }
  return std::visit(
      Overloaded{
          [&](const NaiveBayesParams& p) { return detail::score_naive_bayes(p, x); },
          [&](const PegasosParams& p) { return detail::score_pegasos(p, x); },
          [&](const TreeParams& p) { return detail::score_tree(p, x); },
          [&](const ForestParams& p) { return detail::score_forest(p, x); },
      },
      model.parameters);
}

Label label_for_score(double score) { return score > 0.0 ? Label::kNeed : Label::kNoNeed; }

Label predict(const TrainedModel& model, const FeatureVector& x) {
  return label_for_score(score(model, x));
}

}  // namespace needminer::classify
