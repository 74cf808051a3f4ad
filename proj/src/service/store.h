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

#ifndef LAYERCHART_SERVICE_STORE_H_
#define LAYERCHART_SERVICE_STORE_H_

#include <mutex>
#include <optional>
#include <string>
#include <vector>

struct sqlite3;

namespace layerchart {

struct StoredProject {
  std::string id;
  std::string created_at;
  std::string table_json;
  std::string article;
};

struct StoredNarrative {
  std::string project_id;
  std::string narrative_id;
  size_t order = 0;
  std::string text;
  size_t epoch = 0;                    // bumps whenever the binding is replaced
  std::optional<std::string> binding;  // wire form
  std::string note;
  bool used_fallback = false;
  size_t regenerations = 0;
  std::string base_spec;  // spec JSON the current epoch's edits start from
  std::string spec;       // spec JSON after the edits
};

struct StoredEdit {
  std::string project_id;
  std::string narrative_id;
  size_t epoch = 0;
  size_t seq = 0;
  std::string op;
  std::string inverse;
  std::string request_id;
  std::string created_at;
};

struct StoredFeedback {
  std::string id;
  std::string project_id;
  std::string narrative_id;
  std::string kind;
  std::string payload;
  std::string timestamp;
};

struct StoredResponse {
  int status = 200;
  std::string content_type;
  std::string body;
};

// Single-file SQLite store for projects, op logs, feedback and the
// responses of requests that carried a request id. ":memory:" keeps
// everything in memory. All methods are thread-safe.
class Store {
 public:
  explicit Store(const std::string& path);
  ~Store();
  Store(const Store&) = delete;
  Store& operator=(const Store&) = delete;

  void put_project(const StoredProject& project, const std::vector<StoredNarrative>& narratives);
  std::optional<StoredProject> project(const std::string& id);
  std::vector<std::string> project_ids();
  std::vector<StoredNarrative> narratives(const std::string& project_id);

  void put_narratives(const std::vector<StoredNarrative>& narratives);
  // Saves the narrative and appends the edit in one transaction; returns
  // the edit's sequence number within its epoch.
  size_t put_edit(const StoredNarrative& narrative, StoredEdit edit);
  // Edits of one epoch, or every epoch when epoch is empty, in order.
  std::vector<StoredEdit> edits(const std::string& project_id, const std::string& narrative_id,
                                std::optional<size_t> epoch = std::nullopt);

  void append_feedback(const StoredFeedback& entry);
  std::vector<StoredFeedback> feedback(const std::string& project_id);

  std::optional<StoredResponse> response(const std::string& request_id);
  void put_response(const std::string& request_id, const StoredResponse& response);

 private:
  void exec(const char* sql);
  void put_narrative_locked(const StoredNarrative& n);

  sqlite3* db_ = nullptr;
  std::mutex mu_;
};

}  // namespace layerchart

#endif  // LAYERCHART_SERVICE_STORE_H_
