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

// Fixture generators and brute-force oracles shared by the unit and
// acceptance suites. Oracles recount from first principles and use none of
// the library's metric code.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdio>
#include <span>
#include <string>
#include <vector>

#include "needminer/evaluate.hpp"
#include "needminer/labeling.hpp"
#include "needminer/rng.hpp"
#include "needminer/sampling.hpp"
#include "needminer/synthetic.hpp"

namespace oracle {

using needminer::Rng;
using needminer::sampling::Label;

// Documents whose tokens come from a small vocabulary, classes interleaved.
inline needminer::sampling::LabeledDataset random_dataset(Rng& rng, std::size_t need,
                                                          std::size_t no_need,
                                                          std::size_t vocabulary = 12) {
  needminer::sampling::LabeledDataset ds;
  const std::size_t n = need + no_need;
  std::vector<Label> labels(need, Label::kNeed);
  labels.insert(labels.end(), no_need, Label::kNoNeed);
  rng.shuffle(std::span<Label>(labels));
  for (std::size_t i = 0; i < n; ++i) {
    needminer::sampling::Document d;
    char id[24];
    std::snprintf(id, sizeof id, "d%04zu", i);
    d.id = id;
    d.label = labels[i];
    // Every document gets at least one token so vocabularies are never empty.
    d.tokens.push_back("w" + std::to_string(rng.below(vocabulary)));
    for (std::size_t k = rng.below(5); k > 0; --k) {
      d.tokens.push_back("w" + std::to_string(rng.below(vocabulary)));
    }
    ds.documents.push_back(std::move(d));
  }
  return ds;
}

struct Counts {
  std::size_t tp = 0, fp = 0, fn = 0, tn = 0;
};

inline Counts count(const std::vector<Label>& pred, const std::vector<Label>& truth) {
  Counts c;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const bool p = pred[i] == Label::kNeed;
    const bool t = truth[i] == Label::kNeed;
    if (p && t) ++c.tp;
    else if (p && !t) ++c.fp;
    else if (!p && t) ++c.fn;
    else ++c.tn;
  }
  return c;
}

inline double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

// Exhaustive pair statistic: P(s+ > s-) + P(s+ = s-) / 2.
inline double mann_whitney(const std::vector<double>& scores, const std::vector<Label>& truth) {
  double wins = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (truth[i] != Label::kNeed) continue;
    for (std::size_t j = 0; j < scores.size(); ++j) {
      if (truth[j] != Label::kNoNeed) continue;
      ++pairs;
      if (scores[i] > scores[j]) wins += 1.0;
      else if (scores[i] == scores[j]) wins += 0.5;
    }
  }
  return wins / static_cast<double>(pairs);
}

// Vote log over need + no_need + suspend items, three distinct labelers per
// item, positive votes 2-3 / 0 / 1 respectively. Votes come in shuffled order.
inline std::vector<needminer::labeling::LabelVote> vote_matrix(Rng& rng, std::size_t need,
                                                               std::size_t no_need,
                                                               std::size_t suspend,
                                                               std::vector<std::string>& ids) {
  std::vector<needminer::labeling::LabelVote> votes;
  const std::size_t n = need + no_need + suspend;
  ids.clear();
  for (std::size_t i = 0; i < n; ++i) {
    char id[24];
    std::snprintf(id, sizeof id, "m%05zu", i);
    ids.push_back(id);
    int positives = 0;
    if (i < need) positives = 2 + static_cast<int>(rng.below(2));
    else if (i >= need + no_need) positives = 1;
    std::array<bool, 3> ballot = {false, false, false};
    for (int k = 0; k < positives; ++k) ballot[static_cast<std::size_t>(k)] = true;
    rng.shuffle(std::span<bool>(ballot));
    for (std::size_t l = 0; l < 3; ++l) {
      votes.push_back({id, "L" + std::to_string(rng.below(35)) + "-" + std::to_string(l),
                       ballot[l], "2015-09-01T10:00:00Z"});
    }
  }
  rng.shuffle(std::span<needminer::labeling::LabelVote>(votes));
  return votes;
}

}  // namespace oracle
