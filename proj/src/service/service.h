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

#ifndef LAYERCHART_SERVICE_SERVICE_H_
#define LAYERCHART_SERVICE_SERVICE_H_

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "app/engine.h"
#include "binder/segment.h"
#include "core/binding.h"
#include "core/error.h"
#include "core/table.h"
#include "json.hpp"
#include "render/chart.h"
#include "service/edit.h"
#include "service/store.h"

namespace layerchart {

// Rejection carrying one message per offending field.
class ValidationError : public Error {
 public:
  ValidationError(const std::string& message, std::vector<std::string> details)
      : Error(ErrorCode::kValidation, message), details_(std::move(details)) {}
  const std::vector<std::string>& details() const { return details_; }

 private:
  std::vector<std::string> details_;
};

struct NarrativeState {
  Narrative narrative;
  size_t epoch = 0;
  std::optional<BindingResult> binding;
  std::string note;
  bool used_fallback = false;
  size_t regenerations = 0;
  LayeredChartSpec base_spec;
  LayeredChartSpec spec;
};

struct Project {
  std::string id;
  std::string created_at;
  DataTable table;
  std::string article;
  std::vector<NarrativeState> narratives;

  const NarrativeState* find(std::string_view narrative_id) const;
};

nlohmann::json project_to_json(const Project& project);

enum class FeedbackKind { kMark, kThumbsUp, kThumbsDown };
const char* feedback_kind_name(FeedbackKind kind);
std::optional<FeedbackKind> parse_feedback_kind(std::string_view name);

// payload for marks: {"span": {kind, text, charStart?, charEnd?},
// "correctedBinding"?: wire text, "note"?}.
struct FeedbackEntry {
  std::string id;
  FeedbackKind kind = FeedbackKind::kThumbsUp;
  std::string narrative_id;
  nlohmann::json payload = nlohmann::json::object();
  std::string timestamp;
};

struct FeedbackOutcome {
  std::string id;
  std::optional<BindingResult> regenerated;  // set for thumbs_down
};

struct EditOutcome {
  LayeredChartSpec spec;
  size_t seq = 0;
  EditOp inverse;
};

struct ServiceConfig {
  std::string store_path = ":memory:";
  std::string curation_path;  // empty: marks are kept in the store only
};

// Project lifecycle behind the HTTP API. Reads are unrestricted;
// mutations of one project are serialized.
class Service {
 public:
  Service(const Engine& engine, ServiceConfig config);

  const Engine& engine() const { return engine_; }
  Store& store() { return store_; }

  // Throws ValidationError for a bad table or Error(kEmptyArticle).
  Project create_project(std::string_view table_text, std::string_view article,
                         const std::string& table_name = "table");
  Project create_project(const DataTable& table, std::string_view article);
  // Throws Error(kNotFound).
  Project project(const std::string& id);

  std::vector<VocabSpan> annotate(const std::string& project_id, const std::string& narrative_id);
  // Binds again with the normal example list; the chart restarts from the
  // new binding.
  NarrativeState bind(const std::string& project_id, const std::string& narrative_id);
  // Binds with the least similar example dropped.
  NarrativeState regenerate(const std::string& project_id, const std::string& narrative_id);
  EditOutcome apply_edit(const std::string& project_id, const std::string& narrative_id, const EditOp& op,
                         const std::string& request_id = "");
  std::vector<StoredEdit> edit_log(const std::string& project_id, const std::string& narrative_id);
  // The current epoch's base spec with its edits replayed.
  LayeredChartSpec replay(const std::string& project_id, const std::string& narrative_id);
  FeedbackOutcome record_feedback(const std::string& project_id, FeedbackEntry entry);

  std::string chart_svg(const std::string& chart_id);
  Bytes export_gif(const std::string& project_id);
  // ustar archive with one <narrativeId>.png per narrative.
  Bytes export_png_archive(const std::string& project_id);

  // Serializes work on one project.
  std::shared_ptr<std::mutex> project_mutex(const std::string& project_id);

 private:
  Project load(const std::string& id);
  NarrativeState& state(Project& p, const std::string& narrative_id);
  DataTable render_table(const Project& p) const;
  NarrativeState rebind(const std::string& project_id, const std::string& narrative_id, bool perturb);
  void resequence(Project& p, const std::string& rebound_id);
  StoredNarrative stored(const Project& p, const NarrativeState& n) const;
  std::string new_id(std::string_view prefix, std::string_view seed);

  const Engine& engine_;
  ServiceConfig config_;
  Store store_;
  std::mutex map_mu_;
  std::map<std::string, std::shared_ptr<std::mutex>> project_mu_;
  uint64_t counter_ = 0;
};

// "<projectId>_<narrativeId>"; throws Error(kNotFound) when malformed.
std::pair<std::string, std::string> split_chart_id(std::string_view chart_id);

}  // namespace layerchart

#endif  // LAYERCHART_SERVICE_SERVICE_H_
