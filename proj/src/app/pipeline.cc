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

#include "app/pipeline.h"

#include <atomic>
#include <filesystem>
#include <thread>

#include "binder/evaluate.h"
#include "core/error.h"
#include "core/util.h"

namespace layerchart {

namespace fs = std::filesystem;

const char* annotation_display(VocabKind kind) {
  switch (kind) {
    case VocabKind::kSubject:
      return "background";
    case VocabKind::kNumerical:
      return "underline";
    case VocabKind::kTrend:
      return "box";
  }
  return "background";
}

nlohmann::json annotations_to_json(const std::vector<VocabSpan>& spans) {
  auto out = nlohmann::json::array();
  for (const auto& s : spans) {
    out.push_back({{"kind", vocab_kind_name(s.kind)},
                   {"text", s.text},
                   {"charStart", s.char_start},
                   {"charEnd", s.char_end},
                   {"display", annotation_display(s.kind)}});
  }
  return out;
}

std::vector<NarrativeRun> bind_narratives(const std::vector<Narrative>& narratives,
                                          const DataTable& table, const Engine& engine,
                                          const std::optional<BindConfig>& cfg) {
  const BindConfig config = cfg.value_or(engine.bind_config());
  std::vector<NarrativeRun> runs(narratives.size());
  std::atomic<size_t> next{0};
  auto work = [&] {
    for (size_t i = next++; i < narratives.size(); i = next++) {
      auto& run = runs[i];
      run.narrative = narratives[i];
      try {
        run.outcome = bind_narrative(run.narrative, table, engine.provider(), engine.prompt_db(),
                                     config, engine.lexicon());
        run.spans = derive_vocab_spans(run.narrative.text, run.outcome->result,
                                       table_for_runs(table, {run}));
      } catch (const Error& e) {
        run.outcome.reset();
        run.error = e.what();
      }
    }
  };
  const size_t workers = std::min(engine.jobs(), std::max<size_t>(1, narratives.size()));
  std::vector<std::thread> pool;
  for (size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  return runs;
}

DataTable table_for_runs(const DataTable& table, const std::vector<NarrativeRun>& runs) {
  DataTable out = table;
  for (const auto& run : runs) {
    if (!run.outcome) continue;
    for (const auto& r : run.outcome->result.records) {
      for (const auto* name : {&r.data_name, &r.position[0].column}) {
        if (!out.has_column(*name) && split_combined_column(*name).size() > 1 &&
            is_resolvable_column(out, *name)) {
          out = with_combined_column(out, *name);
        }
      }
    }
  }
  return out;
}

std::vector<NarrativeBinding> narrative_bindings(const std::vector<NarrativeRun>& runs) {
  std::vector<NarrativeBinding> out;
  for (const auto& run : runs) {
    NarrativeBinding b;
    b.narrative_id = run.narrative.id;
    b.order = run.narrative.order;
    if (run.outcome) b.result = run.outcome->result;
    b.note = run.error;
    out.push_back(std::move(b));
  }
  return out;
}

PipelineRun run_pipeline(const DataTable& table, std::string_view article, const Engine& engine) {
  auto violations = validate_table(table);
  if (!violations.empty()) {
    std::string msg = "table is invalid";
    for (const auto& v : violations) msg += "; " + v;
    throw Error(ErrorCode::kValidation, msg);
  }
  PipelineRun run;
  run.table = table;
  auto narratives = segment_narratives(article, table, engine.provider());
  run.narratives = bind_narratives(narratives, table, engine);
  for (const auto& n : run.narratives) {
    if (!n.outcome) run.degraded = true;
    if (n.outcome && n.outcome->used_fallback && engine.provider()->available()) run.degraded = true;
  }
  run.specs = sequence_charts(narrative_bindings(run.narratives), table, engine.chart_config(),
                              engine.lexicon());
  return run;
}

nlohmann::json pipeline_summary(const PipelineRun& run) {
  nlohmann::json j;
  j["table"] = run.table.name;
  j["degraded"] = run.degraded;
  j["narratives"] = nlohmann::json::array();
  for (const auto& n : run.narratives) {
    nlohmann::json e = {{"id", n.narrative.id}, {"order", n.narrative.order}, {"bound", n.outcome.has_value()}};
    if (n.outcome) {
      e["usedFallback"] = n.outcome->used_fallback;
      e["attempts"] = n.outcome->attempts;
      e["records"] = n.outcome->result.records.size();
      e["notes"] = n.outcome->notes;
    } else {
      e["error"] = n.error;
    }
    j["narratives"].push_back(std::move(e));
  }
  return j;
}

std::vector<std::string> write_pipeline_outputs(const PipelineRun& run, const Engine& engine,
                                                const std::string& out_dir) {
  std::vector<std::string> written;
  auto put = [&](const std::string& rel, std::string_view data) {
    fs::path p = fs::path(out_dir) / rel;
    fs::create_directories(p.parent_path());
    write_file(p.string(), data);
    written.push_back(rel);
  };
  const DataTable table = table_for_runs(run.table, run.narratives);

  auto annotations = nlohmann::json::array();
  for (const auto& n : run.narratives) {
    annotations.push_back({{"narrativeId", n.narrative.id},
                           {"order", n.narrative.order},
                           {"text", n.narrative.text},
                           {"spans", annotations_to_json(n.spans)}});
    if (n.outcome) put("bindings/" + n.narrative.id + ".txt", serialize_binding(n.outcome->result) + "\n");
  }
  put("annotations.json", annotations.dump(2) + "\n");
  for (const auto& spec : run.specs) {
    put("specs/" + spec.narrative_id + ".json", chart_spec_to_json(spec).dump(2) + "\n");
    put(spec.narrative_id + ".svg", chart_svg(spec, table, engine.palette()));
    auto png = chart_png(spec, table, engine.palette());
    put(spec.narrative_id + ".png", std::string_view(reinterpret_cast<const char*>(png.data()), png.size()));
  }
  if (!run.specs.empty()) {
    auto gif = sequence_gif(run.specs, table, engine.palette(), engine.chart_config().frame_duration_ms);
    put("sequence.gif", std::string_view(reinterpret_cast<const char*>(gif.data()), gif.size()));
  }
  put("summary.json", pipeline_summary(run).dump(2) + "\n");
  return written;
}

}  // namespace layerchart
