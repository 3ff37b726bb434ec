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

#include <span>
#include <vector>

#include "needminer/classify.hpp"

namespace needminer::classify::detail {

NaiveBayesParams fit_naive_bayes(std::span<const Instance* const> data, std::size_t dimension,
                                 double alpha);
double score_naive_bayes(const NaiveBayesParams& params, const FeatureVector& x);

PegasosParams fit_pegasos(std::span<const Instance* const> data, std::size_t dimension,
                          double lambda, int epochs, bool projection, std::uint64_t seed,
                          FitTrace* trace);
double score_pegasos(const PegasosParams& params, const FeatureVector& x);

struct TreeOptions {
  std::size_t features_per_node = 0;  // 0: ceil(sqrt(d))
  std::size_t max_depth = 0;          // 0: unbounded
};

TreeParams grow_tree(std::span<const Instance* const> data, std::size_t dimension,
                     const TreeOptions& options, std::uint64_t seed);
double score_tree(const TreeParams& tree, const FeatureVector& x);

ForestParams grow_forest(std::span<const Instance* const> data, std::size_t dimension,
                         const TreeOptions& options, std::size_t trees, std::uint64_t seed);
double score_forest(const ForestParams& forest, const FeatureVector& x);

}  // namespace needminer::classify::detail
