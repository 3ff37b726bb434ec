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

#include "needminer/label_service.hpp"

#include <httplib.h>

#include <json.hpp>

#include "needminer/error.hpp"

namespace needminer::labeling {

namespace {

using Json = nlohmann::json;

constexpr const char* kJson = "application/json";

void send_error(httplib::Response& res, int status, std::string_view name,
                const std::string& detail = {}) {
  Json body{{"error", std::string(name)}};
  if (!detail.empty()) body["detail"] = detail;
  res.status = status;
  res.set_content(body.dump(), kJson);
}

int status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDuplicateVote:
    case ErrorCode::kItemComplete: return 409;
    case ErrorCode::kUnknownItem: return 404;
    case ErrorCode::kIoError: return 500;
    default: return 400;
  }
}

}  // namespace

struct LabelService::Impl {
  LabelSession& session;
  Clock clock;
  httplib::Server server;

  Impl(LabelSession& s, Clock c) : session(s), clock(std::move(c)) { routes(); }

  void routes() {
    server.Get("/api/items/next", [this](const httplib::Request& req, httplib::Response& res) {
      const auto labeler = req.get_param_value("labeler");
      if (labeler.empty()) {
        send_error(res, 400, "InvalidVote", "missing labeler");
        return;
      }
      const auto item = session.next_item(labeler);
      if (!item) {
        res.status = 204;
        return;
      }
      res.status = 200;
      res.set_content(Json{{"item_id", item->id}, {"text", item->text}}.dump(
                          -1, ' ', false, Json::error_handler_t::replace),
                      kJson);
    });

    server.Post("/api/votes", [this](const httplib::Request& req, httplib::Response& res) {
      LabelVote vote;
      try {
        const auto body = Json::parse(req.body);
        if (!body.is_object()) throw Error(ErrorCode::kMalformedLine, "body is not an object");
        const auto item = body.find("item_id");
        const auto labeler = body.find("labeler");
        const auto need = body.find("has_need");
        if (item == body.end() || labeler == body.end() || need == body.end()) {
          throw Error(ErrorCode::kMissingField, "item_id, labeler and has_need are required");
        }
        if (!item->is_string() || !labeler->is_string() || !need->is_boolean()) {
          throw Error(ErrorCode::kMalformedLine, "wrong field types");
        }
        vote.item_id = item->get<std::string>();
        vote.labeler_id = labeler->get<std::string>();
        vote.has_need = need->get<bool>();
      } catch (const Json::exception& e) {
        send_error(res, 400, "MalformedLine", e.what());
        return;
      } catch (const Error& e) {
        send_error(res, 400, e.name(), e.what());
        return;
      }
      vote.submitted_at = clock();
      try {
        const auto label = session.submit_vote(vote);
        res.status = 201;
        res.set_content(Json{{"verdict", std::string(to_string(label.verdict))},
                             {"vote_count", label.vote_count}}
                            .dump(),
                        kJson);
      } catch (const Error& e) {
        send_error(res, status_for(e.code()), e.name(), e.what());
      }
    });

    server.Get("/api/progress", [this](const httplib::Request&, httplib::Response& res) {
      const auto p = session.progress();
      Json per = Json::object();
      for (const auto& [labeler, count] : p.per_labeler) per[labeler] = count;
      Json body{{"items_total", p.items_total},
                {"completed", p.completed},
                {"pending", p.pending},
                {"votes_total", p.votes_total},
                {"per_labeler", per}};
      res.set_content(body.dump(-1, ' ', false, Json::error_handler_t::replace), kJson);
    });

    server.Get("/api/export", [this](const httplib::Request&, httplib::Response& res) {
      std::string body;
      for (const auto& item : session.export_labels()) {
        body += format_labeled(item);
        body += '\n';
      }
      res.set_content(body, "application/x-ndjson");
    });
  }
};

LabelService::LabelService(LabelSession& session, Clock clock)
    : impl_(std::make_unique<Impl>(session, std::move(clock))) {}

LabelService::~LabelService() = default;

bool LabelService::mount_ui(const std::filesystem::path& directory) {
  return impl_->server.set_mount_point("/ui", directory.string());
}

bool LabelService::listen(const std::string& host, int port) {
  return impl_->server.listen(host, port);
}

int LabelService::bind_any_port(const std::string& host) {
  return impl_->server.bind_to_any_port(host);
}

bool LabelService::run() { return impl_->server.listen_after_bind(); }

void LabelService::stop() { impl_->server.stop(); }

void LabelService::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace needminer::labeling
