/*
 * Copyright 2026 The layerchart Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "service/http.h"

#include <condition_variable>
#include <functional>
#include <set>

#include "app/pipeline.h"
#include "httplib.h"

namespace layerchart {

namespace {

using nlohmann::json;

struct Reply {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
};

Reply json_reply(const json& j, int status = 200) { return Reply{status, "application/json", j.dump()}; }

Reply error_reply(ErrorCode code, const std::string& message, const std::vector<std::string>& details = {}) {
  json j = {{"error", error_code_name(code)}, {"message", message}};
  if (!details.empty()) j["details"] = details;
  return json_reply(j, http_status(code));
}

json parse_body(const httplib::Request& req) {
  if (req.body.empty()) return json::object();
  try {
    return json::parse(req.body);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument, std::string("request body is not JSON: ") + e.what());
  }
}

std::string body_string(const json& body, const char* key, bool required) {
  if (!body.contains(key)) {
    if (required) throw ValidationError("request is invalid", {std::string("'") + key + "' is required"});
    return {};
  }
  if (!body[key].is_string()) throw ValidationError("request is invalid", {std::string("'") + key + "' must be a string"});
  return body[key].get<std::string>();
}

json narrative_json(const Project& p, const NarrativeState& n) {
  json j = {{"narrativeId", n.narrative.id},
            {"order", n.narrative.order},
            {"epoch", n.epoch},
            {"usedFallback", n.used_fallback},
            {"regenerations", n.regenerations},
            {"chartId", p.id + "_" + n.narrative.id},
            {"chartSpec", chart_spec_to_json(n.spec)}};
  j["binding"] = n.binding ? json(serialize_binding(*n.binding)) : json(nullptr);
  if (!n.note.empty()) j["note"] = n.note;
  return j;
}

}  // namespace

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotFound:
    case ErrorCode::kUnknownTarget:
      return 404;
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kParse:
    case ErrorCode::kValidation:
    case ErrorCode::kEmptyArticle:
    case ErrorCode::kCanvasTooSmall:
    case ErrorCode::kEmptyFrameList:
    case ErrorCode::kTargetNotInLayout:
    case ErrorCode::kLayout:
      return 400;
    case ErrorCode::kBindingFailed:
    case ErrorCode::kNoNumericColumn:
    case ErrorCode::kEmptySeries:
    case ErrorCode::kSeriesTooShort:
      return 422;
    case ErrorCode::kProvider:
    case ErrorCode::kMalformedResponse:
      return 502;
    default:
      return 500;
  }
}

struct ApiServer::Impl {
  Service& service;
  httplib::Server server;
  std::mutex inflight_mu;
  std::condition_variable inflight_cv;
  std::set<std::string> inflight;

  explicit Impl(Service& s) : service(s) { routes(); }

  static void send(httplib::Response& res, const Reply& r) {
    res.status = r.status;
    res.set_content(r.body, r.content_type);
  }

  static Reply guarded(const std::function<Reply()>& fn) {
    try {
      return fn();
    } catch (const ValidationError& e) {
      return error_reply(e.code(), e.what(), e.details());
    } catch (const Error& e) {
      return error_reply(e.code(), e.what());
    } catch (const std::exception& e) {
      return error_reply(ErrorCode::kIo, std::string("internal error: ") + e.what());
    }
  }

  // Runs fn at most once per request id; concurrent duplicates wait.
  void mutating(const httplib::Request& req, httplib::Response& res, const std::function<Reply()>& fn) {
    std::string rid = req.get_header_value("X-Request-Id");
    if (rid.empty()) rid = req.get_header_value("Idempotency-Key");
    if (rid.empty()) {
      send(res, guarded(fn));
      return;
    }
    const std::string key = rid + " " + req.method + " " + req.path;
    {
      std::unique_lock lock(inflight_mu);
      inflight_cv.wait(lock, [&] { return !inflight.count(key); });
      inflight.insert(key);
    }
    Reply r;
    bool replay = false;
    try {
      if (auto stored = service.store().response(key)) {
        r = Reply{stored->status, stored->content_type, stored->body};
        replay = true;
      } else {
        r = guarded(fn);
        if (r.status < 500) service.store().put_response(key, StoredResponse{r.status, r.content_type, r.body});
      }
    } catch (...) {
      r = error_reply(ErrorCode::kIo, "request store failure");
    }
    {
      std::lock_guard lock(inflight_mu);
      inflight.erase(key);
    }
    inflight_cv.notify_all();
    if (replay) res.set_header("X-Idempotent-Replay", "true");
    res.set_header("X-Request-Id", rid);
    send(res, r);
  }

  void routes() {
    server.Post("/v1/projects", [this](const httplib::Request& req, httplib::Response& res) {
      mutating(req, res, [&] {
        std::string table_text, article, name = "table";
        if (req.is_multipart_form_data()) {
          if (!req.has_file("table")) throw ValidationError("request is invalid", {"'table' is required"});
          if (!req.has_file("article")) throw ValidationError("request is invalid", {"'article' is required"});
          table_text = req.get_file_value("table").content;
          article = req.get_file_value("article").content;
          if (req.has_file("tableName")) name = req.get_file_value("tableName").content;
        } else {
          json body = parse_body(req);
          if (!body.contains("table")) throw ValidationError("request is invalid", {"'table' is required"});
          table_text = body["table"].is_string() ? body["table"].get<std::string>() : body["table"].dump();
          article = body_string(body, "article", true);
          if (body.contains("tableName")) name = body_string(body, "tableName", true);
        }
        Project p = service.create_project(table_text, article, name);
        return json_reply(project_to_json(p), 201);
      });
    });

    server.Get(R"(/v1/projects/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
      send(res, guarded([&] { return json_reply(project_to_json(service.project(req.matches[1]))); }));
    });

    server.Get(R"(/v1/projects/([^/]+)/narratives/([^/]+)/annotations)",
               [this](const httplib::Request& req, httplib::Response& res) {
                 send(res, guarded([&] {
                   const std::string pid = req.matches[1], nid = req.matches[2];
                   auto spans = service.annotate(pid, nid);
                   Project p = service.project(pid);
                   return json_reply({{"narrativeId", nid},
                                      {"text", p.find(nid)->narrative.text},
                                      {"spans", annotations_to_json(spans)}});
                 }));
               });

    auto rebind = [this](bool perturb) {
      return [this, perturb](const httplib::Request& req, httplib::Response& res) {
        mutating(req, res, [&] {
          const std::string pid = req.matches[1], nid = req.matches[2];
          if (perturb) service.regenerate(pid, nid); else service.bind(pid, nid);
          Project p = service.project(pid);
          return json_reply(narrative_json(p, *p.find(nid)));
        });
      };
    };
    server.Post(R"(/v1/projects/([^/]+)/narratives/([^/]+)/bind)", rebind(false));
    server.Post(R"(/v1/projects/([^/]+)/narratives/([^/]+)/regenerate)", rebind(true));

    server.Post(R"(/v1/projects/([^/]+)/narratives/([^/]+)/edits)",
                [this](const httplib::Request& req, httplib::Response& res) {
                  mutating(req, res, [&] {
                    EditOp op = edit_op_from_json(parse_body(req));
                    auto out = service.apply_edit(req.matches[1], req.matches[2], op,
                                                  req.get_header_value("X-Request-Id"));
                    return json_reply({{"chartSpec", chart_spec_to_json(out.spec)},
                                       {"seq", out.seq},
                                       {"inverse", edit_op_to_json(out.inverse)}});
                  });
                });

    server.Get(R"(/v1/projects/([^/]+)/narratives/([^/]+)/edits)",
               [this](const httplib::Request& req, httplib::Response& res) {
                 send(res, guarded([&] {
                   json log = json::array();
                   for (const auto& e : service.edit_log(req.matches[1], req.matches[2])) {
                     log.push_back({{"epoch", e.epoch},
                                    {"seq", e.seq},
                                    {"op", json::parse(e.op)},
                                    {"inverse", json::parse(e.inverse)},
                                    {"createdAt", e.created_at}});
                   }
                   return json_reply({{"edits", log}});
                 }));
               });

    server.Post(R"(/v1/projects/([^/]+)/narratives/([^/]+)/feedback)",
                [this](const httplib::Request& req, httplib::Response& res) {
                  mutating(req, res, [&] {
                    json body = parse_body(req);
                    FeedbackEntry entry;
                    auto kind = parse_feedback_kind(body_string(body, "kind", true));
                    if (!kind) {
                      throw ValidationError("feedback is invalid",
                                            {"'kind' must be mark, thumbs_up or thumbs_down"});
                    }
                    entry.kind = *kind;
                    entry.narrative_id = req.matches[2];
                    entry.payload = body.value("payload", json::object());
                    auto out = service.record_feedback(req.matches[1], entry);
                    json j = {{"id", out.id}, {"kind", feedback_kind_name(entry.kind)}};
                    if (out.regenerated) j["regenerated"] = serialize_binding(*out.regenerated);
                    return json_reply(j, 201);
                  });
                });

    server.Get(R"(/v1/projects/([^/]+)/export)", [this](const httplib::Request& req, httplib::Response& res) {
      send(res, guarded([&] {
        std::string format = req.get_param_value("format");
        if (format == "gif") {
          auto gif = service.export_gif(req.matches[1]);
          return Reply{200, "image/gif", std::string(gif.begin(), gif.end())};
        }
        if (format == "png" || format == "png_per_narrative") {
          auto tar = service.export_png_archive(req.matches[1]);
          return Reply{200, "application/x-tar", std::string(tar.begin(), tar.end())};
        }
        throw Error(ErrorCode::kInvalidArgument, "format must be gif or png");
      }));
    });

    server.Get(R"(/v1/charts/([^/]+)\.svg)", [this](const httplib::Request& req, httplib::Response& res) {
      send(res, guarded([&] { return Reply{200, "image/svg+xml", service.chart_svg(req.matches[1])}; }));
    });

    server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
      if (res.body.empty()) {
        Reply r = error_reply(ErrorCode::kNotFound, "no such endpoint");
        if (res.status != 404) r.status = res.status;
        res.set_content(r.body, r.content_type);
      }
    });
  }
};

ApiServer::ApiServer(Service& service) : impl_(std::make_unique<Impl>(service)) {}

ApiServer::~ApiServer() { stop(); }

int ApiServer::bind(const std::string& host, int port) {
  if (port == 0) {
    int p = impl_->server.bind_to_any_port(host);
    if (p < 0) throw Error(ErrorCode::kIo, "cannot bind " + host);
    return p;
  }
  if (!impl_->server.bind_to_port(host, port)) {
    throw Error(ErrorCode::kIo, "cannot bind " + host + ":" + std::to_string(port));
  }
  return port;
}

void ApiServer::listen() { impl_->server.listen_after_bind(); }

void ApiServer::stop() {
  if (impl_->server.is_running()) impl_->server.stop();
}

void ApiServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace layerchart
