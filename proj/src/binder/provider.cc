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

#include "binder/provider.h"

#include <algorithm>
#include <cstdlib>

#include "core/error.h"
#include "core/util.h"
#include "httplib.h"
#include "json.hpp"

namespace layerchart {

ChatRequest chat_request(const PromptSequence& seq) {
  ChatRequest req;
  req.purpose = "bind";
  req.system = seq.system_instruction;
  req.user = render_prompt(seq);
  req.task_text = seq.task_text;
  return req;
}

std::string request_hash(const ChatRequest& req) {
  std::string key = req.purpose;
  key += '\n';
  key += req.system;
  key += '\n';
  key += req.user;
  return hex64(fnv1a64(key));
}

std::string NullProvider::complete(const ChatRequest&, std::chrono::milliseconds) {
  throw Error(ErrorCode::kProvider, "no language model provider is configured");
}

FixtureProvider::FixtureProvider(std::string dir) : dir_(std::move(dir)) {
  std::string index = dir_ + "/index.json";
  if (!file_exists(index)) return;
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_file(index));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, "fixture index " + index + ": " + e.what());
  }
  const auto& list = doc.is_object() && doc.contains("entries") ? doc["entries"] : doc;
  if (!list.is_array()) throw Error(ErrorCode::kParse, "fixture index must list entries");
  for (const auto& e : list) {
    Entry entry;
    entry.purpose = e.value("purpose", std::string("bind"));
    entry.match = e.value("match", std::string());
    for (const auto& r : e.value("responses", nlohmann::json::array())) {
      entry.responses.push_back(r.get<std::string>());
    }
    if (entry.responses.empty()) {
      throw Error(ErrorCode::kParse, "fixture entry '" + entry.match + "' has no responses");
    }
    entries_.push_back(std::move(entry));
  }
}

std::string FixtureProvider::complete(const ChatRequest& req, std::chrono::milliseconds) {
  std::string exact = dir_ + "/" + request_hash(req) + ".txt";
  if (file_exists(exact)) return read_file(exact);
  std::lock_guard<std::mutex> lock(mu_);
  for (auto& e : entries_) {
    if (e.purpose != req.purpose) continue;
    if (req.task_text.find(e.match) == std::string::npos) continue;
    size_t i = std::min(e.next, e.responses.size() - 1);
    ++e.next;
    return read_file(dir_ + "/" + e.responses[i]);
  }
  throw Error(ErrorCode::kProvider, "no recorded response for request " + request_hash(req));
}

HttpProvider::HttpProvider(HttpProviderConfig cfg)
    : cfg_(std::move(cfg)),
      slots_(static_cast<std::ptrdiff_t>(std::clamp<size_t>(cfg_.max_in_flight, 1, 64))) {
  auto scheme_end = cfg_.endpoint.find("://");
  if (scheme_end == std::string::npos) {
    throw Error(ErrorCode::kInvalidArgument, "provider endpoint must be an http(s) URL");
  }
  auto path_start = cfg_.endpoint.find('/', scheme_end + 3);
  base_ = cfg_.endpoint.substr(0, path_start);
  path_ = path_start == std::string::npos ? "/" : cfg_.endpoint.substr(path_start);
  if (cfg_.model.empty()) throw Error(ErrorCode::kInvalidArgument, "provider model is not set");
}

std::string HttpProvider::complete(const ChatRequest& req, std::chrono::milliseconds timeout) {
  slots_.acquire();
  struct Release {
    std::counting_semaphore<64>& s;
    ~Release() { s.release(); }
  } release{slots_};

  httplib::Client client(base_);
  auto secs = std::chrono::duration_cast<std::chrono::seconds>(timeout).count();
  client.set_connection_timeout(std::max<long>(1, static_cast<long>(secs)));
  client.set_read_timeout(std::max<long>(1, static_cast<long>(secs)));
  client.set_write_timeout(std::max<long>(1, static_cast<long>(secs)));
  httplib::Headers headers;
  if (const char* key = std::getenv(cfg_.api_key_env.c_str()); key && *key) {
    headers.emplace("Authorization", std::string("Bearer ") + key);
  }
  nlohmann::json body = {
      {"model", cfg_.model},
      {"temperature", 0},
      {"messages",
       {{{"role", "system"}, {"content", req.system}}, {{"role", "user"}, {"content", req.user}}}}};
  auto res = client.Post(path_, headers, body.dump(), "application/json");
  if (!res) {
    throw Error(ErrorCode::kProvider,
                "request to " + base_ + " failed: " + httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    throw Error(ErrorCode::kProvider, "provider returned HTTP " + std::to_string(res->status));
  }
  try {
    auto doc = nlohmann::json::parse(res->body);
    return doc.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kProvider, std::string("unexpected provider response: ") + e.what());
  }
}

std::unique_ptr<Provider> make_provider(const ProviderConfig& cfg) {
  if (cfg.kind == "null" || cfg.kind.empty()) return std::make_unique<NullProvider>();
  if (cfg.kind == "fixture") {
    if (cfg.fixture_dir.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "fixture provider needs a fixture directory");
    }
    return std::make_unique<FixtureProvider>(cfg.fixture_dir);
  }
  if (cfg.kind == "http") return std::make_unique<HttpProvider>(cfg.http);
  throw Error(ErrorCode::kInvalidArgument, "unknown provider '" + cfg.kind + "'");
}

}  // namespace layerchart
