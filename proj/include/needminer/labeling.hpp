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
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

// Crowd-labeling sessions: item assignment, vote capture and the
// Need / NoNeed / Suspend aggregation over a fixed number of votes per item.
namespace needminer::labeling {

enum class Verdict { kNeed, kNoNeed, kSuspend, kPending };

std::string_view to_string(Verdict verdict);
Verdict parse_verdict(std::string_view name);

inline constexpr int kDefaultVotesRequired = 3;

// Pending below votes_required; otherwise Need on a strict majority of
// positive votes, NoNeed on none, Suspend in between. At three votes this is
// 2-3 -> Need, 0 -> NoNeed, 1 -> Suspend.
Verdict aggregate_verdict(int positive_votes, int vote_count, int votes_required);

struct LabelItem {
  std::string id;
  std::string text;
};

struct LabelVote {
  std::string item_id;
  std::string labeler_id;
  bool has_need = false;
  std::string submitted_at;
};

struct AggregatedLabel {
  std::string item_id;
  Verdict verdict = Verdict::kPending;
  int vote_count = 0;
  int positive_votes = 0;
};

struct LabeledItem {
  std::string id;
  std::string text;
  Verdict verdict = Verdict::kPending;

  bool operator==(const LabeledItem&) const = default;
};

struct Progress {
  std::size_t items_total = 0;
  std::size_t completed = 0;
  std::size_t pending = 0;
  std::size_t votes_total = 0;
  std::map<std::string, std::size_t> per_labeler;
};

class LabelSession {
 public:
  // In-memory session. votes_required must be odd and >= 1.
  explicit LabelSession(std::vector<LabelItem> items,
                        int votes_required = kDefaultVotesRequired);

  // Persistent session: replays the vote log (if present) and appends every
  // accepted vote to it.
  LabelSession(std::vector<LabelItem> items, std::filesystem::path vote_log,
               int votes_required = kDefaultVotesRequired);

  LabelSession(const LabelSession&) = delete;
  LabelSession& operator=(const LabelSession&) = delete;

  // An item the labeler has not voted on and that still lacks votes. Items
  // closest to completion come first, ties by item id.
  std::optional<LabelItem> next_item(std::string_view labeler_id) const;

  // Throws UnknownItem, DuplicateVote, ItemComplete or InvalidVote.
  AggregatedLabel submit_vote(const LabelVote& vote);

  AggregatedLabel label(std::string_view item_id) const;

  // Completed items ordered by id; Suspend included, Pending excluded.
  std::vector<LabeledItem> export_labels() const;

  Progress progress() const;

  int votes_required() const { return votes_required_; }

 private:
  struct ItemState {
    LabelItem item;
    std::vector<LabelVote> votes;
  };

  AggregatedLabel aggregate(const ItemState& state) const;
  AggregatedLabel apply(const LabelVote& vote);

  int votes_required_;
  mutable std::shared_mutex mutex_;
  std::map<std::string, ItemState, std::less<>> items_;
  std::optional<std::ofstream> log_;
};

std::string format_vote(const LabelVote& vote);
LabelVote parse_vote(std::string_view line);

std::string format_labeled(const LabeledItem& item);
LabeledItem parse_labeled(std::string_view line);

void write_export(const std::filesystem::path& path, const std::vector<LabeledItem>& items);
std::vector<LabeledItem> read_export(const std::filesystem::path& path);

// Current UTC time as YYYY-MM-DDTHH:MM:SSZ.
std::string utc_timestamp();

}  // namespace needminer::labeling
