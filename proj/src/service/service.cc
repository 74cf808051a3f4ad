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

#include "service/service.h"

#include "app/curate.h"
#include "app/pipeline.h"
#include "binder/evaluate.h"
#include "core/util.h"
#include "service/archive.h"

namespace layerchart {

namespace {

std::mutex g_curation_mu;

NarrativeState from_run(const NarrativeRun& run) {
  NarrativeState s;
  s.narrative = run.narrative;
  if (run.outcome) {
    s.binding = run.outcome->result;
    s.used_fallback = run.outcome->used_fallback;
  } else {
    s.note = run.error;
  }
  return s;
}

}  // namespace

const NarrativeState* Project::find(std::string_view narrative_id) const {
  for (const auto& n : narratives) {
    if (n.narrative.id == narrative_id) return &n;
  }
  return nullptr;
}

nlohmann::json project_to_json(const Project& p) {
  nlohmann::json j;
  j["id"] = p.id;
  j["createdAt"] = p.created_at;
  j["table"] = table_to_json(p.table);
  j["article"] = p.article;
  j["narratives"] = nlohmann::json::array();
  j["bindings"] = nlohmann::json::object();
  j["chartSpecs"] = nlohmann::json::object();
  for (const auto& n : p.narratives) {
    nlohmann::json e = {{"id", n.narrative.id}, {"order", n.narrative.order}, {"text", n.narrative.text},
                        {"chartId", p.id + "_" + n.narrative.id}, {"usedFallback", n.used_fallback}};
    if (!n.note.empty()) e["note"] = n.note;
    j["narratives"].push_back(std::move(e));
    if (n.binding) j["bindings"][n.narrative.id] = serialize_binding(*n.binding);
    j["chartSpecs"][n.narrative.id] = chart_spec_to_json(n.spec);
  }
  return j;
}

const char* feedback_kind_name(FeedbackKind kind) {
  switch (kind) {
    case FeedbackKind::kMark:
      return "mark";
    case FeedbackKind::kThumbsUp:
      return "thumbs_up";
    case FeedbackKind::kThumbsDown:
      return "thumbs_down";
  }
  return "mark";
}

std::optional<FeedbackKind> parse_feedback_kind(std::string_view name) {
  for (auto k : {FeedbackKind::kMark, FeedbackKind::kThumbsUp, FeedbackKind::kThumbsDown}) {
    if (name == feedback_kind_name(k)) return k;
  }
  return std::nullopt;
}

std::pair<std::string, std::string> split_chart_id(std::string_view chart_id) {
  size_t cut = chart_id.find('_');
  if (cut == std::string_view::npos || cut == 0 || cut + 1 == chart_id.size()) {
    throw Error(ErrorCode::kNotFound, "no chart '" + std::string(chart_id) + "'");
  }
  return {std::string(chart_id.substr(0, cut)), std::string(chart_id.substr(cut + 1))};
}

Service::Service(const Engine& engine, ServiceConfig config)
    : engine_(engine), config_(std::move(config)), store_(config_.store_path) {}

std::shared_ptr<std::mutex> Service::project_mutex(const std::string& project_id) {
  std::lock_guard lock(map_mu_);
  auto& m = project_mu_[project_id];
  if (!m) m = std::make_shared<std::mutex>();
  return m;
}

std::string Service::new_id(std::string_view prefix, std::string_view seed) {
  std::lock_guard lock(map_mu_);
  std::string basis = std::string(seed) + "|" + utc_timestamp() + "|" + std::to_string(++counter_);
  return std::string(prefix) + hex64(fnv1a64(basis)).substr(0, 12);
}

DataTable Service::render_table(const Project& p) const {
  std::vector<NarrativeRun> runs;
  for (const auto& n : p.narratives) {
    if (!n.binding) continue;
    NarrativeRun r;
    r.outcome = BindOutcome{};
    r.outcome->result = *n.binding;
    runs.push_back(std::move(r));
  }
  return table_for_runs(p.table, runs);
}

StoredNarrative Service::stored(const Project& p, const NarrativeState& n) const {
  StoredNarrative s;
  s.project_id = p.id;
  s.narrative_id = n.narrative.id;
  s.order = n.narrative.order;
  s.text = n.narrative.text;
  s.epoch = n.epoch;
  if (n.binding) s.binding = serialize_binding(*n.binding);
  s.note = n.note;
  s.used_fallback = n.used_fallback;
  s.regenerations = n.regenerations;
  s.base_spec = chart_spec_to_json(n.base_spec).dump();
  s.spec = chart_spec_to_json(n.spec).dump();
  return s;
}

Project Service::create_project(std::string_view table_text, std::string_view article,
                                const std::string& table_name) {
  DataTable table;
  try {
    table = parse_table_text(table_text, table_name);
  } catch (const Error& e) {
    throw ValidationError("table could not be read", {e.what()});
  }
  return create_project(table, article);
}

Project Service::create_project(const DataTable& table, std::string_view article) {
  auto violations = validate_table(table);
  if (!violations.empty()) throw ValidationError("table is invalid", violations);
  if (trim(article).empty()) throw Error(ErrorCode::kEmptyArticle, "article is empty");

  Project p;
  p.table = table;
  p.article = std::string(article);
  p.created_at = utc_timestamp();
  do {
    p.id = new_id("p", table_digest(table) + p.article);
  } while (store_.project(p.id));

  auto narratives = segment_narratives(article, table, engine_.provider());
  for (const auto& run : bind_narratives(narratives, table, engine_)) p.narratives.push_back(from_run(run));
  resequence(p, "");

  std::vector<StoredNarrative> rows;
  for (const auto& n : p.narratives) rows.push_back(stored(p, n));
  store_.put_project(StoredProject{p.id, p.created_at, table_to_json(p.table).dump(), p.article}, rows);
  return p;
}

void Service::resequence(Project& p, const std::string& rebound_id) {
  std::vector<NarrativeBinding> bindings;
  for (const auto& n : p.narratives) {
    bindings.push_back(NarrativeBinding{n.narrative.id, n.narrative.order, n.binding, n.note});
  }
  auto specs = sequence_charts(bindings, p.table, engine_.chart_config(), engine_.lexicon());
  for (auto& n : p.narratives) {
    for (auto& s : specs) {
      if (s.narrative_id != n.narrative.id) continue;
      if (rebound_id.empty() || n.narrative.id == rebound_id) {
        n.base_spec = s;
        n.spec = s;
      } else {
        for (auto* spec : {&n.base_spec, &n.spec}) {
          spec->columns = s.columns;
          spec->chart_type = s.chart_type;
        }
      }
    }
  }
}

Project Service::load(const std::string& id) {
  auto sp = store_.project(id);
  if (!sp) throw Error(ErrorCode::kNotFound, "no project '" + id + "'");
  Project p;
  p.id = sp->id;
  p.created_at = sp->created_at;
  p.table = table_from_json(nlohmann::json::parse(sp->table_json));
  p.article = sp->article;
  for (const auto& sn : store_.narratives(id)) {
    NarrativeState n;
    n.narrative = Narrative{sn.narrative_id, sn.order, sn.text, std::nullopt};
    n.epoch = sn.epoch;
    if (sn.binding) n.binding = parse_binding_document(*sn.binding);
    n.note = sn.note;
    n.used_fallback = sn.used_fallback;
    n.regenerations = sn.regenerations;
    n.base_spec = chart_spec_from_json(nlohmann::json::parse(sn.base_spec));
    n.spec = chart_spec_from_json(nlohmann::json::parse(sn.spec));
    p.narratives.push_back(std::move(n));
  }
  return p;
}

Project Service::project(const std::string& id) { return load(id); }

NarrativeState& Service::state(Project& p, const std::string& narrative_id) {
  for (auto& n : p.narratives) {
    if (n.narrative.id == narrative_id) return n;
  }
  throw Error(ErrorCode::kNotFound, "no narrative '" + narrative_id + "' in project " + p.id);
}

std::vector<VocabSpan> Service::annotate(const std::string& project_id, const std::string& narrative_id) {
  Project p = load(project_id);
  const auto& n = state(p, narrative_id);
  if (!n.binding) return {};
  return derive_vocab_spans(n.narrative.text, *n.binding, render_table(p));
}

NarrativeState Service::rebind(const std::string& project_id, const std::string& narrative_id, bool perturb) {
  auto mu = project_mutex(project_id);
  std::lock_guard lock(*mu);
  Project p = load(project_id);
  auto& n = state(p, narrative_id);
  BindConfig cfg = engine_.bind_config();
  if (perturb) cfg.drop_least_similar = 1;
  auto runs = bind_narratives({n.narrative}, p.table, engine_, cfg);
  if (!runs[0].outcome) throw Error(ErrorCode::kBindingFailed, runs[0].error);
  n.binding = runs[0].outcome->result;
  n.used_fallback = runs[0].outcome->used_fallback;
  n.note.clear();
  n.epoch += 1;
  if (perturb) n.regenerations += 1;
  resequence(p, narrative_id);
  std::vector<StoredNarrative> rows;
  for (const auto& s : p.narratives) rows.push_back(stored(p, s));
  store_.put_narratives(rows);
  return state(p, narrative_id);
}

NarrativeState Service::bind(const std::string& project_id, const std::string& narrative_id) {
  return rebind(project_id, narrative_id, false);
}

NarrativeState Service::regenerate(const std::string& project_id, const std::string& narrative_id) {
  return rebind(project_id, narrative_id, true);
}

EditOutcome Service::apply_edit(const std::string& project_id, const std::string& narrative_id,
                                const EditOp& op, const std::string& request_id) {
  auto mu = project_mutex(project_id);
  std::lock_guard lock(*mu);
  Project p = load(project_id);
  auto& n = state(p, narrative_id);
  LayeredChartSpec next = n.spec;
  AppliedEdit applied = apply_edit_op(next, op);
  compose_chart(next, render_table(p), engine_.palette());
  n.spec = next;
  StoredEdit e;
  e.project_id = p.id;
  e.narrative_id = narrative_id;
  e.epoch = n.epoch;
  e.op = edit_op_to_json(applied.op).dump();
  e.inverse = edit_op_to_json(applied.inverse).dump();
  e.request_id = request_id;
  e.created_at = utc_timestamp();
  size_t seq = store_.put_edit(stored(p, n), e);
  return EditOutcome{n.spec, seq, applied.inverse};
}

std::vector<StoredEdit> Service::edit_log(const std::string& project_id, const std::string& narrative_id) {
  Project p = load(project_id);
  state(p, narrative_id);
  return store_.edits(project_id, narrative_id);
}

LayeredChartSpec Service::replay(const std::string& project_id, const std::string& narrative_id) {
  Project p = load(project_id);
  const auto& n = state(p, narrative_id);
  std::vector<EditOp> ops;
  for (const auto& e : store_.edits(project_id, narrative_id, n.epoch)) {
    ops.push_back(edit_op_from_json(nlohmann::json::parse(e.op)));
  }
  return replay_edits(n.base_spec, ops);
}

FeedbackOutcome Service::record_feedback(const std::string& project_id, FeedbackEntry entry) {
  FeedbackOutcome out;
  {
    auto mu = project_mutex(project_id);
    std::lock_guard lock(*mu);
    Project p = load(project_id);
    const auto& n = state(p, entry.narrative_id);
    std::optional<CurationEntry> mark;
    if (entry.kind == FeedbackKind::kMark) {
      const auto& span = entry.payload.contains("span") ? entry.payload["span"] : nlohmann::json();
      std::vector<std::string> problems;
      if (!span.is_object() || !span.contains("text") || !span["text"].is_string() ||
          trim(span["text"].get<std::string>()).empty()) {
        problems.push_back("payload.span.text must be a non-empty string");
      }
      std::optional<VocabKind> kind;
      if (span.is_object() && span.contains("kind") && span["kind"].is_string()) {
        kind = parse_vocab_kind(span["kind"].get<std::string>());
      }
      if (!kind) problems.push_back("payload.span.kind must be subject, trend or numerical");
      if (entry.payload.contains("correctedBinding")) {
        if (!entry.payload["correctedBinding"].is_string()) {
          problems.push_back("payload.correctedBinding must be a binding document");
        } else {
          try {
            parse_binding_document(entry.payload["correctedBinding"].get<std::string>());
          } catch (const Error& e) {
            problems.push_back(std::string("payload.correctedBinding: ") + e.what());
          }
        }
      }
      if (!problems.empty()) throw ValidationError("mark is invalid", problems);
      CurationEntry c;
      c.project_id = p.id;
      c.narrative_id = n.narrative.id;
      c.text = n.narrative.text;
      c.table_digest = table_digest(p.table);
      c.span.kind = *kind;
      c.span.text = span["text"].get<std::string>();
      c.span.char_start = span.value("charStart", size_t{0});
      c.span.char_end = span.value("charEnd", size_t{0});
      c.corrected_binding = entry.payload.value(
          "correctedBinding", n.binding ? serialize_binding(*n.binding) : std::string());
      c.note = entry.payload.value("note", "");
      mark = c;
    }
    entry.id = new_id("f", project_id + entry.narrative_id + entry.payload.dump());
    std::lock_guard curation(g_curation_mu);
    entry.timestamp = utc_timestamp();
    store_.append_feedback(StoredFeedback{entry.id, project_id, entry.narrative_id,
                                          feedback_kind_name(entry.kind), entry.payload.dump(),
                                          entry.timestamp});
    if (mark && !config_.curation_path.empty()) {
      mark->id = entry.id;
      mark->timestamp = entry.timestamp;
      append_curation_entry(config_.curation_path, *mark);
    }
    out.id = entry.id;
  }
  if (entry.kind == FeedbackKind::kThumbsDown) {
    out.regenerated = regenerate(project_id, entry.narrative_id).binding;
  }
  return out;
}

std::string Service::chart_svg(const std::string& chart_id) {
  auto [pid, nid] = split_chart_id(chart_id);
  Project p = load(pid);
  const auto& n = state(p, nid);
  return layerchart::chart_svg(n.spec, render_table(p), engine_.palette());
}

Bytes Service::export_gif(const std::string& project_id) {
  Project p = load(project_id);
  if (p.narratives.empty()) throw Error(ErrorCode::kEmptyFrameList, "project has no narratives");
  std::vector<LayeredChartSpec> specs;
  for (const auto& n : p.narratives) specs.push_back(n.spec);
  return sequence_gif(specs, render_table(p), engine_.palette(), engine_.chart_config().frame_duration_ms);
}

Bytes Service::export_png_archive(const std::string& project_id) {
  Project p = load(project_id);
  if (p.narratives.empty()) throw Error(ErrorCode::kEmptyFrameList, "project has no narratives");
  const DataTable table = render_table(p);
  std::vector<ArchiveFile> files;
  for (const auto& n : p.narratives) {
    files.push_back(ArchiveFile{n.narrative.id + ".png", chart_png(n.spec, table, engine_.palette())});
  }
  return tar_archive(files);
}

}  // namespace layerchart
