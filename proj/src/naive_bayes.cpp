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

#include <cmath>

#include "classify_internal.hpp"

namespace needminer::classify {

double NaiveBayesParams::probability(Label label, std::size_t feature, bool present) const {
  const double p = (label == Label::kNeed ? presence_need : presence_no_need).at(feature);
  return present ? p : 1.0 - p;
}

double NaiveBayesParams::log_likelihood(Label label, std::size_t feature, bool present) const {
  return std::log(probability(label, feature, present));
}

namespace detail {

NaiveBayesParams fit_naive_bayes(std::span<const Instance* const> data, std::size_t dimension,
                                 double alpha) {
  std::vector<double> present_need(dimension, 0.0), present_no_need(dimension, 0.0);
  double n_need = 0.0, n_no_need = 0.0;
  for (const Instance* instance : data) {
    const bool need = instance->label == Label::kNeed;
    (need ? n_need : n_no_need) += 1.0;
    auto& counts = need ? present_need : present_no_need;
    for (auto j : instance->features.active()) counts[j] += 1.0;
  }
  NaiveBayesParams params;
  const double n = n_need + n_no_need;
  params.log_prior_need = std::log(n_need / n);
  params.log_prior_no_need = std::log(n_no_need / n);
  params.presence_need.resize(dimension);
  params.presence_no_need.resize(dimension);
  for (std::size_t j = 0; j < dimension; ++j) {
    params.presence_need[j] = (present_need[j] + alpha) / (n_need + 2.0 * alpha);
    params.presence_no_need[j] = (present_no_need[j] + alpha) / (n_no_need + 2.0 * alpha);
  }
  return params;
}

double score_naive_bayes(const NaiveBayesParams& params, const FeatureVector& x) {
  // Sum log P(x_j = 0 | c) over all features, then swap in the present ones.
  double need = params.log_prior_need;
  double no_need = params.log_prior_no_need;
  for (std::size_t j = 0; j < params.presence_need.size(); ++j) {
    need += std::log(1.0 - params.presence_need[j]);
    no_need += std::log(1.0 - params.presence_no_need[j]);
  }
  for (auto j : x.active()) {
    need += std::log(params.presence_need[j]) - std::log(1.0 - params.presence_need[j]);
    no_need += std::log(params.presence_no_need[j]) - std::log(1.0 - params.presence_no_need[j]);
  }
  return need - no_need;
}

}  // namespace detail
}  // namespace needminer::classify
