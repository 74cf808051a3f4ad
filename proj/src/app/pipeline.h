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

#ifndef LAYERCHART_APP_PIPELINE_H_
#define LAYERCHART_APP_PIPELINE_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "app/engine.h"
#include "binder/bind.h"
#include "binder/segment.h"
#include "core/binding.h"
#include "core/table.h"
#include "json.hpp"
#include "render/chart.h"

namespace layerchart {

struct NarrativeRun {
  Narrative narrative;
  std::optional<BindOutcome> outcome;  // empty when binding failed
  std::string error;
  std::vector<VocabSpan> spans;
};

struct PipelineRun {
  DataTable table;
  std::vector<NarrativeRun> narratives;
  std::vector<LayeredChartSpec> specs;
  // Some narrative fell back from an available provider, or failed.
  bool degraded = false;
};

// Display class of a vocabulary kind: background, underline or box.
const char* annotation_display(VocabKind kind);
nlohmann::json annotations_to_json(const std::vector<VocabSpan>& spans);

// Binds each narrative with up to engine.jobs() workers. Results keep the
// input order. cfg defaults to engine.bind_config().
std::vector<NarrativeRun> bind_narratives(const std::vector<Narrative>& narratives,
                                          const DataTable& table, const Engine& engine,
                                          const std::optional<BindConfig>& cfg = std::nullopt);

// Table with every combined column named by a record materialized.
DataTable table_for_runs(const DataTable& table, const std::vector<NarrativeRun>& runs);
std::vector<NarrativeBinding> narrative_bindings(const std::vector<NarrativeRun>& runs);

// validate_table, segment, bind, sequence. Throws Error(kValidation) listing
// the table violations and Error(kEmptyArticle) for blank text.
PipelineRun run_pipeline(const DataTable& table, std::string_view article, const Engine& engine);

// Writes summary.json, annotations.json, bindings/<id>.txt, specs/<id>.json,
// <id>.svg, <id>.png and sequence.gif under out_dir. Returns the paths
// written, relative to out_dir.
std::vector<std::string> write_pipeline_outputs(const PipelineRun& run, const Engine& engine,
                                                const std::string& out_dir);

nlohmann::json pipeline_summary(const PipelineRun& run);

}  // namespace layerchart

#endif  // LAYERCHART_APP_PIPELINE_H_
