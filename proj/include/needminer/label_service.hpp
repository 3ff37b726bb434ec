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

#include <filesystem>
#include <functional>
#include <memory>
#include <string>

#include "needminer/labeling.hpp"

namespace needminer::labeling {

// HTTP/1.1 front for a LabelSession.
//
//   GET  /api/items/next?labeler=<id>  200 {item_id, text} | 204
//   POST /api/votes {item_id, labeler, has_need}
//                                      201 {verdict, vote_count}
//                                      409 {error: DuplicateVote|ItemComplete}
//                                      404 {error: UnknownItem}
//   GET  /api/progress                 200 {items_total, completed, pending,
//                                           votes_total, per_labeler}
//   GET  /api/export                   200 labeled items, one JSON object per line
//
// Malformed requests get 400 {error}. A static UI bundle, when configured, is
// served under /ui.
class LabelService {
 public:
  using Clock = std::function<std::string()>;

  explicit LabelService(LabelSession& session, Clock clock = utc_timestamp);
  ~LabelService();

  LabelService(const LabelService&) = delete;
  LabelService& operator=(const LabelService&) = delete;

  // Returns false when the directory does not exist.
  bool mount_ui(const std::filesystem::path& directory);

  // Binds and blocks until stop(). Returns false if the port cannot be bound.
  bool listen(const std::string& host, int port);

  // Binds to an ephemeral port and returns it (or -1); serve with run().
  int bind_any_port(const std::string& host);
  bool run();

  void stop();
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace needminer::labeling
