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

#include <algorithm>
#include <cmath>
#include <numeric>

#include "classify_internal.hpp"
#include "needminer/rng.hpp"

namespace needminer::classify {

namespace {

double sign_of(Label label) { return label == Label::kNeed ? 1.0 : -1.0; }

// w = scale * v, with |v|^2 tracked incrementally so that scaling and the
// projection step cost O(1) and a gradient step costs O(nnz(x)). The last
// coordinate is the always-on bias feature.
class ScaledWeights {
 public:
  explicit ScaledWeights(std::size_t dimension) : v_(dimension + 1, 0.0) {}

  double dot(const FeatureVector& x) const {
    double sum = v_.back();
    for (auto j : x.active()) sum += v_[j];
    return scale_ * sum;
  }

  void multiply(double factor) {
    if (factor == 0.0) {
      std::fill(v_.begin(), v_.end(), 0.0);
      norm_sq_ = 0.0;
      scale_ = 1.0;
      return;
    }
    scale_ *= factor;
    if (scale_ < 1e-9) renormalize();
  }

  void add(const FeatureVector& x, double step) {
    const double delta = step / scale_;
    for (auto j : x.active()) bump(j, delta);
    bump(v_.size() - 1, delta);
  }

  double norm() const { return scale_ * std::sqrt(std::max(norm_sq_, 0.0)); }

  std::vector<double> values() const {
    std::vector<double> w(v_.size());
    std::transform(v_.begin(), v_.end(), w.begin(), [&](double x) { return scale_ * x; });
    return w;
  }

 private:
  void bump(std::size_t j, double delta) {
    norm_sq_ += delta * (2.0 * v_[j] + delta);
    v_[j] += delta;
  }

  void renormalize() {
    for (auto& x : v_) x *= scale_;
    scale_ = 1.0;
    norm_sq_ = std::inner_product(v_.begin(), v_.end(), v_.begin(), 0.0);
  }

  std::vector<double> v_;
  double scale_ = 1.0;
  double norm_sq_ = 0.0;
};

PegasosParams to_params(const ScaledWeights& w) {
  PegasosParams params;
  params.weights = w.values();
  params.bias = params.weights.back();
  params.weights.pop_back();
  return params;
}

}  // namespace

double pegasos_objective(const PegasosParams& params, std::span<const Instance> data,
                         double lambda) {
  double norm_sq = params.bias * params.bias;
  for (double w : params.weights) norm_sq += w * w;
  double hinge = 0.0;
  for (const auto& instance : data) {
    const double margin = sign_of(instance.label) * detail::score_pegasos(params, instance.features);
    hinge += std::max(0.0, 1.0 - margin);
  }
  return 0.5 * lambda * norm_sq + (data.empty() ? 0.0 : hinge / static_cast<double>(data.size()));
}

namespace detail {

PegasosParams fit_pegasos(std::span<const Instance* const> data, std::size_t dimension,
                          double lambda, int epochs, bool projection, std::uint64_t seed,
                          FitTrace* trace) {
  ScaledWeights w(dimension);
  const double radius = 1.0 / std::sqrt(lambda);
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<Instance> trace_data;
  if (trace != nullptr) {
    for (const Instance* instance : data) trace_data.push_back(*instance);
  }

  std::uint64_t t = 0;
  for (int epoch = 0; epoch < epochs; ++epoch) {
    Rng rng(derive_seed(seed, "pegasos", static_cast<std::uint64_t>(epoch)));
    rng.shuffle(std::span<std::size_t>(order));
    for (auto i : order) {
      ++t;
      const Instance& instance = *data[i];
      const double eta = 1.0 / (lambda * static_cast<double>(t));
      const double y = sign_of(instance.label);
      const bool violated = y * w.dot(instance.features) < 1.0;
      w.multiply(1.0 - eta * lambda);
      if (violated) w.add(instance.features, eta * y);
      if (projection) {
        const double norm = w.norm();
        if (norm > radius) w.multiply(radius / norm);
      }
    }
    if (trace != nullptr) {
      trace->epoch_objective.push_back(pegasos_objective(to_params(w), trace_data, lambda));
    }
  }
  return to_params(w);
}

double score_pegasos(const PegasosParams& params, const FeatureVector& x) {
  double sum = params.bias;
  for (auto j : x.active()) sum += params.weights[j];
  return sum;
}

}  // namespace detail
}  // namespace needminer::classify
