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

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "needminer/sampling.hpp"
#include "needminer/textproc.hpp"

// Binary Need / NoNeed classifiers behind one fit / score / predict contract.
namespace needminer::classify {

using sampling::Instance;
using sampling::Label;
using textproc::FeatureVector;
using textproc::Vocabulary;

enum class Algorithm { kNaiveBayes, kSpegasos, kRandomTree, kRandomForest };

std::string_view to_string(Algorithm algorithm);
// Accepts the canonical names and the plural forms random_trees/random_forests.
Algorithm parse_algorithm(std::string_view name);
std::vector<Algorithm> all_algorithms();

using Hyperparameters = std::map<std::string, double>;

// Defaults per algorithm:
//   naive_bayes    alpha = 1 (Laplace)
//   spegasos       lambda = 1e-4, epochs = 100, projection = 1
//   random_tree    features_per_node = 0 (ceil(sqrt(d))), max_depth = 0 (unbounded)
//   random_forest  as random_tree, plus trees = 100
Hyperparameters default_hyperparameters(Algorithm algorithm);

struct ClassifierSpec {
  Algorithm algorithm = Algorithm::kNaiveBayes;
  Hyperparameters hyperparameters;  // overrides; missing keys take defaults
  std::uint64_t seed = 0;

  bool operator==(const ClassifierSpec&) const = default;
};

// Defaults merged with the overrides. Throws InvalidHyperparameter for
// unknown keys or out-of-range values.
Hyperparameters resolve(const ClassifierSpec& spec);

// Bernoulli event model. presence[c][j] = P(feature j present | class c).
struct NaiveBayesParams {
  double log_prior_need = 0.0;
  double log_prior_no_need = 0.0;
  std::vector<double> presence_need;
  std::vector<double> presence_no_need;

  double probability(Label label, std::size_t feature, bool present) const;
  double log_likelihood(Label label, std::size_t feature, bool present) const;

  bool operator==(const NaiveBayesParams&) const = default;
};

struct PegasosParams {
  std::vector<double> weights;
  double bias = 0.0;

  bool operator==(const PegasosParams&) const = default;
};

struct TreeNode {
  std::int32_t feature = -1;  // -1 marks a leaf
  std::uint32_t absent = 0;   // child taken when the feature bit is 0
  std::uint32_t present = 0;  // child taken when the feature bit is 1
  std::uint32_t need = 0;     // training instances reaching the node
  std::uint32_t no_need = 0;

  bool leaf() const { return feature < 0; }
  bool operator==(const TreeNode&) const = default;
};

struct TreeParams {
  std::vector<TreeNode> nodes;  // nodes[0] is the root

  const TreeNode& leaf_for(const FeatureVector& x) const;
  bool operator==(const TreeParams&) const = default;
};

struct ForestParams {
  std::vector<TreeParams> trees;

  bool operator==(const ForestParams&) const = default;
};

using Parameters = std::variant<NaiveBayesParams, PegasosParams, TreeParams, ForestParams>;

struct TrainedModel {
  ClassifierSpec spec;  // hyperparameters fully resolved
  Vocabulary vocabulary;
  Parameters parameters;
};

// Per-epoch primal objective, filled by fit for spegasos when requested.
struct FitTrace {
  std::vector<double> epoch_objective;
};

// Training instances are ordered by id (stable) before use, so the result
// depends only on the spec, the seed and the instance multiset. Throws
// SingleClassTraining, InvalidHyperparameter or DimensionMismatch.
TrainedModel fit(const ClassifierSpec& spec, std::span<const Instance> training,
                 Vocabulary vocabulary, FitTrace* trace = nullptr);

// Higher means more Need-like:
//   naive_bayes    log P(Need | x) - log P(NoNeed | x)
//   spegasos       w.x + b
//   random_tree    leaf Need proportion - 0.5
//   random_forest  fraction of trees voting Need - 0.5
// Throws DimensionMismatch when x does not match the vocabulary.
double score(const TrainedModel& model, const FeatureVector& x);

// Need iff score > 0; a zero score is NoNeed.
Label label_for_score(double score);
Label predict(const TrainedModel& model, const FeatureVector& x);

// lambda/2 |w|^2 (bias included) + mean hinge loss.
double pegasos_objective(const PegasosParams& params, std::span<const Instance> data,
                         double lambda);

inline constexpr int kModelFormatVersion = 1;

std::string serialize_model(const TrainedModel& model);
// Throws VersionMismatch or CorruptModel.
TrainedModel deserialize_model(std::string_view content);

void save_model(const TrainedModel& model, const std::filesystem::path& path);
TrainedModel load_model(const std::filesystem::path& path);

}  // namespace needminer::classify
