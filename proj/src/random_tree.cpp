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
#include <array>
#include <cmath>
#include <numeric>

#include "classify_internal.hpp"
#include "needminer/rng.hpp"

namespace needminer::classify {

const TreeNode& TreeParams::leaf_for(const FeatureVector& x) const {
  std::size_t index = 0;
  while (!nodes[index].leaf()) {
    const auto& node = nodes[index];
    index = x.test(static_cast<std::size_t>(node.feature)) ? node.present : node.absent;
  }
  return nodes[index];
}

namespace detail {

namespace {

constexpr double kMinGain = 1e-12;

double gini(double need, double no_need) {
  const double n = need + no_need;
  if (n == 0.0) return 0.0;
  const double p = need / n;
  const double q = no_need / n;
  return 1.0 - p * p - q * q;
}

struct PendingNode {
  std::size_t node;
  std::vector<std::size_t> members;
  std::size_t depth;
};

class TreeGrower {
 public:
  TreeGrower(std::span<const Instance* const> data, std::size_t dimension,
             const TreeOptions& options, std::uint64_t seed)
      : data_(data),
        dimension_(dimension),
        options_(options),
        rng_(seed),
        counts_(dimension, {0, 0}),
        features_(dimension) {
    std::iota(features_.begin(), features_.end(), std::uint32_t{0});
    candidates_ = options.features_per_node != 0
                      ? options.features_per_node
                      : static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(dimension))));
  }

  TreeParams grow(std::vector<std::size_t> members) {
    TreeParams tree;
    tree.nodes.emplace_back();
    std::vector<PendingNode> stack;
    stack.push_back({0, std::move(members), 0});
    while (!stack.empty()) {
      auto pending = std::move(stack.back());
      stack.pop_back();
      split(tree, std::move(pending), stack);
    }
    return tree;
  }

 private:
  void split(TreeParams& tree, PendingNode pending, std::vector<PendingNode>& stack) {
    std::uint32_t need = 0, no_need = 0;
    for (auto i : pending.members) (data_[i]->label == Label::kNeed ? need : no_need)++;
    tree.nodes[pending.node].need = need;
    tree.nodes[pending.node].no_need = no_need;
    if (need == 0 || no_need == 0) return;
    if (options_.max_depth != 0 && pending.depth >= options_.max_depth) return;

    // Presence counts per feature among the node's members.
    std::vector<std::uint32_t> touched;
    for (auto i : pending.members) {
      const auto label = data_[i]->label == Label::kNeed ? 0 : 1;
      for (auto j : data_[i]->features.active()) {
        if (counts_[j][0] == 0 && counts_[j][1] == 0) touched.push_back(j);
        ++counts_[j][label];
      }
    }

    // Visit features in a fresh random order. Stop once the candidate budget
    // is spent and some feature improves impurity; otherwise keep looking.
    const double parent = gini(need, no_need);
    const double total = need + no_need;
    double best_gain = kMinGain;
    std::int32_t best = -1;
    for (std::size_t k = 0; k < dimension_; ++k) {
      if (k >= candidates_ && best >= 0) break;
      std::swap(features_[k], features_[k + rng_.below(dimension_ - k)]);
      const auto j = features_[k];
      const double present_need = counts_[j][0];
      const double present_no_need = counts_[j][1];
      const double present = present_need + present_no_need;
      if (present == 0.0 || present == total) continue;
      const double gain = parent - (present / total) * gini(present_need, present_no_need) -
                          ((total - present) / total) *
                              gini(need - present_need, no_need - present_no_need);
      if (gain > best_gain) {
        best_gain = gain;
        best = static_cast<std::int32_t>(j);
      }
    }
    for (auto j : touched) counts_[j] = {0, 0};
    if (best < 0) return;

    PendingNode absent{tree.nodes.size(), {}, pending.depth + 1};
    PendingNode present{tree.nodes.size() + 1, {}, pending.depth + 1};
    for (auto i : pending.members) {
      (data_[i]->features.test(static_cast<std::size_t>(best)) ? present : absent)
          .members.push_back(i);
    }
    auto& node = tree.nodes[pending.node];
    node.feature = best;
    node.absent = static_cast<std::uint32_t>(absent.node);
    node.present = static_cast<std::uint32_t>(present.node);
    tree.nodes.emplace_back();
    tree.nodes.emplace_back();
    stack.push_back(std::move(present));
    stack.push_back(std::move(absent));
  }

  std::span<const Instance* const> data_;
  std::size_t dimension_;
  TreeOptions options_;
  Rng rng_;
  std::vector<std::array<std::uint32_t, 2>> counts_;
  std::vector<std::uint32_t> features_;
  std::size_t candidates_;
};

}  // namespace

TreeParams grow_tree(std::span<const Instance* const> data, std::size_t dimension,
                     const TreeOptions& options, std::uint64_t seed) {
  std::vector<std::size_t> members(data.size());
  std::iota(members.begin(), members.end(), std::size_t{0});
  return TreeGrower(data, dimension, options, seed).grow(std::move(members));
}

double score_tree(const TreeParams& tree, const FeatureVector& x) {
  const auto& leaf = tree.leaf_for(x);
  const double n = static_cast<double>(leaf.need) + static_cast<double>(leaf.no_need);
  return static_cast<double>(leaf.need) / n - 0.5;
}

ForestParams grow_forest(std::span<const Instance* const> data, std::size_t dimension,
                         const TreeOptions& options, std::size_t trees, std::uint64_t seed) {
  ForestParams forest;
  if (trees == 1) {
    // No bootstrap for a single tree: it equals random_tree under the same seed.
    forest.trees.push_back(grow_tree(data, dimension, options, derive_seed(seed, "tree", 0)));
    return forest;
  }
  for (std::size_t t = 0; t < trees; ++t) {
    Rng rng(derive_seed(seed, "bootstrap", t));
    std::vector<std::size_t> members(data.size());
    for (auto& m : members) m = rng.below(data.size());
    std::sort(members.begin(), members.end());
    TreeGrower grower(data, dimension, options, derive_seed(seed, "tree", t));
    forest.trees.push_back(grower.grow(std::move(members)));
  }
  return forest;
}

double score_forest(const ForestParams& forest, const FeatureVector& x) {
  std::size_t votes = 0;
  for (const auto& tree : forest.trees) {
    if (score_tree(tree, x) > 0.0) ++votes;
  }
  return static_cast<double>(votes) / static_cast<double>(forest.trees.size()) - 0.5;
}

}  // namespace detail
}  // namespace needminer::classify
