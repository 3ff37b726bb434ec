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

#include "needminer/labeling.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <json.hpp>
#include <mutex>
#include <tuple>

#include "needminer/error.hpp"
#include "needminer/io.hpp"
#include "needminer/text.hpp"

namespace needminer::labeling {

namespace {

using Json = nlohmann::json;

Json parse_object(std::string_view line) {
  Json object;
  try {
    object = Json::parse(line);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kMalformedLine, e.what());
  }
  if (!object.is_object()) throw Error(ErrorCode::kMalformedLine, "not an object");
  return object;
}

std::string required_string(const Json& object, const char* key) {
  const auto it = object.find(key);
  if (it == object.end() || it->is_null()) throw Error(ErrorCode::kMissingField, key);
  if (!it->is_string()) {
    throw Error(ErrorCode::kMalformedLine, std::string("field '") + key + "' is not a string");
  }
  return it->get<std::string>();
}

}  // namespace

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::kNeed: return "need";
    case Verdict::kNoNeed: return "no_need";
    case Verdict::kSuspend: return "suspend";
    case Verdict::kPending: return "pending";
  }
  return "pending";
}

Verdict parse_verdict(std::string_view name) {
  if (name == "need") return Verdict::kNeed;
  if (name == "no_need") return Verdict::kNoNeed;
  if (name == "suspend") return Verdict::kSuspend;
  if (name == "pending") return Verdict::kPending;
  throw Error(ErrorCode::kMalformedLine, "unknown verdict '" + std::string(name) + "'");
}

Verdict aggregate_verdict(int positive_votes, int vote_count, int votes_required) {
  if (vote_count < votes_required) return Verdict::kPending;
  if (2 * positive_votes > vote_count) return Verdict::kNeed;
  if (positive_votes == 0) return Verdict::kNoNeed;
  return Verdict::kSuspend;
}

LabelSession::LabelSession(std::vector<LabelItem> items, int votes_required)
    : votes_required_(votes_required) {
  if (votes_required < 1 || votes_required % 2 == 0) {
    throw Error(ErrorCode::kInvalidConfig, "votes per item must be odd and >= 1");
  }
  for (auto& item : items) {
    if (item.id.empty()) throw Error(ErrorCode::kMissingField, "item id");
    if (items_.contains(item.id)) {
      throw Error(ErrorCode::kInvalidConfig, "duplicate item id " + item.id);
    }
    std::string id = item.id;
    items_.emplace(std::move(id), ItemState{std::move(item), {}});
  }
}

LabelSession::LabelSession(std::vector<LabelItem> items, std::filesystem::path vote_log,
                           int votes_required)
    : LabelSession(std::move(items), votes_required) {
  if (std::filesystem::exists(vote_log)) {
    const auto lines = io::read_lines(vote_log);
    for (std::size_t i = 0; i < lines.size(); ++i) {
      if (text::trim(lines[i]).empty()) continue;
      try {
        apply(parse_vote(lines[i]));
      } catch (const Error& e) {
        throw Error(e.code(),
                    vote_log.string() + ":" + std::to_string(i + 1) + ": " + e.what());
      }
    }
  }
  log_.emplace(vote_log, std::ios::binary | std::ios::app);
  if (!*log_) throw Error(ErrorCode::kIoError, "cannot open vote log " + vote_log.string());
}

std::optional<LabelItem> LabelSession::next_item(std::string_view labeler_id) const {
  std::shared_lock lock(mutex_);
  const ItemState* best = nullptr;
  for (const auto& [id, state] : items_) {
    const auto count = static_cast<int>(state.votes.size());
    if (count >= votes_required_) continue;
    const bool voted = std::any_of(state.votes.begin(), state.votes.end(),
                                   [&](const LabelVote& v) { return v.labeler_id == labeler_id; });
    if (voted) continue;
    // Map order is by id, so strict > keeps the smallest id among equals.
    if (best == nullptr || count > static_cast<int>(best->votes.size())) best = &state;
  }
  if (best == nullptr) return std::nullopt;
  return best->item;
}

AggregatedLabel LabelSession::aggregate(const ItemState& state) const {
  AggregatedLabel label;
  label.item_id = state.item.id;
  label.vote_count = static_cast<int>(state.votes.size());
  for (const auto& vote : state.votes) label.positive_votes += vote.has_need ? 1 : 0;
  label.verdict = aggregate_verdict(label.positive_votes, label.vote_count, votes_required_);
  return label;
}

AggregatedLabel LabelSession::apply(const LabelVote& vote) {
  if (vote.labeler_id.empty()) throw Error(ErrorCode::kInvalidVote, "empty labeler id");
  const auto it = items_.find(vote.item_id);
  if (it == items_.end()) throw Error(ErrorCode::kUnknownItem, vote.item_id);
  auto& state = it->second;
  for (const auto& existing : state.votes) {
    if (existing.labeler_id == vote.labeler_id) {
      throw Error(ErrorCode::kDuplicateVote, vote.labeler_id + " on " + vote.item_id);
    }
  }
  if (static_cast<int>(state.votes.size()) >= votes_required_) {
    throw Error(ErrorCode::kItemComplete, vote.item_id);
  }
  state.votes.push_back(vote);
  return aggregate(state);
}

AggregatedLabel LabelSession::submit_vote(const LabelVote& vote) {
  std::unique_lock lock(mutex_);
  auto label = apply(vote);
  if (log_) {
    *log_ << format_vote(vote) << '\n';
    log_->flush();
    if (!*log_) throw Error(ErrorCode::kIoError, "vote log write failed");
  }
  return label;
}

AggregatedLabel LabelSession::label(std::string_view item_id) const {
  std::shared_lock lock(mutex_);
  const auto it = items_.find(item_id);
  if (it == items_.end()) throw Error(ErrorCode::kUnknownItem, std::string(item_id));
  return aggregate(it->second);
}

std::vector<LabeledItem> LabelSession::export_labels() const {
  std::shared_lock lock(mutex_);
  std::vector<LabeledItem> out;
  for (const auto& [id, state] : items_) {
    const auto label = aggregate(state);
    if (label.verdict == Verdict::kPending) continue;
    out.push_back({state.item.id, state.item.text, label.verdict});
  }
  return out;
}

Progress LabelSession::progress() const {
  std::shared_lock lock(mutex_);
  Progress p;
  p.items_total = items_.size();
  for (const auto& [id, state] : items_) {
    if (static_cast<int>(state.votes.size()) >= votes_required_) {
      ++p.completed;
    } else {
      ++p.pending;
    }
    p.votes_total += state.votes.size();
    for (const auto& vote : state.votes) ++p.per_labeler[vote.labeler_id];
  }
  return p;
}

std::string format_vote(const LabelVote& vote) {
  nlohmann::ordered_json object;
  object["item_id"] = vote.item_id;
  object["labeler"] = vote.labeler_id;
  object["has_need"] = vote.has_need;
  object["submitted_at"] = vote.submitted_at;
  return object.dump(-1, ' ', false, Json::error_handler_t::replace);
}

LabelVote parse_vote(std::string_view line) {
  const auto object = parse_object(line);
  LabelVote vote;
  vote.item_id = required_string(object, "item_id");
  vote.labeler_id = required_string(object, "labeler");
  const auto need = object.find("has_need");
  if (need == object.end()) throw Error(ErrorCode::kMissingField, "has_need");
  if (!need->is_boolean()) throw Error(ErrorCode::kMalformedLine, "has_need is not a boolean");
  vote.has_need = need->get<bool>();
  if (const auto at = object.find("submitted_at"); at != object.end() && at->is_string()) {
    vote.submitted_at = at->get<std::string>();
  }
  return vote;
}

std::string format_labeled(const LabeledItem& item) {
  nlohmann::ordered_json object;
  object["id"] = item.id;
  object["text"] = item.text;
  object["verdict"] = std::string(to_string(item.verdict));
  return object.dump(-1, ' ', false, Json::error_handler_t::replace);
}

LabeledItem parse_labeled(std::string_view line) {
  const auto object = parse_object(line);
  LabeledItem item;
  item.id = required_string(object, "id");
  item.text = required_string(object, "text");
  item.verdict = parse_verdict(required_string(object, "verdict"));
  return item;
}

void write_export(const std::filesystem::path& path, const std::vector<LabeledItem>& items) {
  std::string content;
  for (const auto& item : items) {
    content += format_labeled(item);
    content += '\n';
  }
  io::write_text(path, content);
}

std::vector<LabeledItem> read_export(const std::filesystem::path& path) {
  std::vector<LabeledItem> items;
  const auto lines = io::read_lines(path);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (text::trim(lines[i]).empty()) continue;
    try {
      items.push_back(parse_labeled(lines[i]));
    } catch (const Error& e) {
      throw Error(e.code(), path.string() + ":" + std::to_string(i + 1) + ": " + e.what());
    }
  }
  return items;
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace needminer::labeling
