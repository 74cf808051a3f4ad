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

#include "layerchart/layerchart.h"

#include <cstdlib>
#include <cstring>
#include <functional>
#include <memory>
#include <string>

#include "app/curate.h"
#include "app/engine.h"
#include "app/eval.h"
#include "app/pipeline.h"
#include "app/scaling.h"
#include "binder/evaluate.h"
#include "core/error.h"
#include "core/util.h"
#include "service/http.h"
#include "service/service.h"

struct lc_table {
  layerchart::DataTable table;
};

struct lc_engine {
  std::unique_ptr<layerchart::Engine> engine;
};

struct lc_server {
  std::unique_ptr<layerchart::Service> service;
  std::unique_ptr<layerchart::ApiServer> api;
};

namespace {

using layerchart::Error;
using layerchart::ErrorCode;

thread_local std::string g_last_error;

lc_status to_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return LC_ERR_INVALID_ARGUMENT;
    case ErrorCode::kIo: return LC_ERR_IO;
    case ErrorCode::kParse: return LC_ERR_PARSE;
    case ErrorCode::kValidation: return LC_ERR_VALIDATION;
    case ErrorCode::kEmptyArticle: return LC_ERR_EMPTY_ARTICLE;
    case ErrorCode::kEmptySeries: return LC_ERR_EMPTY_SERIES;
    case ErrorCode::kSeriesTooShort: return LC_ERR_SERIES_TOO_SHORT;
    case ErrorCode::kMalformedResponse: return LC_ERR_MALFORMED_RESPONSE;
    case ErrorCode::kBindingFailed: return LC_ERR_BINDING_FAILED;
    case ErrorCode::kProvider: return LC_ERR_PROVIDER;
    case ErrorCode::kTargetNotInLayout: return LC_ERR_TARGET_NOT_IN_LAYOUT;
    case ErrorCode::kCanvasTooSmall: return LC_ERR_CANVAS_TOO_SMALL;
    case ErrorCode::kNoNumericColumn: return LC_ERR_NO_NUMERIC_COLUMN;
    case ErrorCode::kEmptyFrameList: return LC_ERR_EMPTY_FRAME_LIST;
    case ErrorCode::kDimensionMismatch: return LC_ERR_DIMENSION_MISMATCH;
    case ErrorCode::kUnknownTarget: return LC_ERR_UNKNOWN_TARGET;
    case ErrorCode::kNotFound: return LC_ERR_NOT_FOUND;
    case ErrorCode::kLayout: return LC_ERR_LAYOUT;
  }
  return LC_ERR_INTERNAL;
}

lc_status fail(lc_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

lc_status guard(const std::function<void()>& fn) {
  try {
    fn();
    g_last_error.clear();
    return LC_OK;
  } catch (const Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(LC_ERR_PARSE, e.what());
  } catch (const std::bad_alloc&) {
    return fail(LC_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(LC_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(LC_ERR_INTERNAL, "unknown failure");
  }
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size());
  out[s.size()] = '\0';
  return out;
}

void fill(lc_buffer* buffer, const layerchart::Bytes& bytes) {
  buffer->data = static_cast<uint8_t*>(std::malloc(bytes.empty() ? 1 : bytes.size()));
  if (!buffer->data) throw std::bad_alloc();
  if (!bytes.empty()) std::memcpy(buffer->data, bytes.data(), bytes.size());
  buffer->size = bytes.size();
}

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::kInvalidArgument, std::string(what) + " must not be NULL");
}

// One-narrative spec for a binding document.
layerchart::ComposedChart single_chart(const layerchart::Engine& engine, const layerchart::DataTable& table,
                                       const char* binding, layerchart::DataTable& render_table,
                                       layerchart::LayeredChartSpec& spec) {
  layerchart::NarrativeRun run;
  run.narrative = layerchart::Narrative{"n0", 0, "", std::nullopt};
  run.outcome = layerchart::BindOutcome{};
  run.outcome->result = layerchart::parse_binding_document(binding);
  render_table = layerchart::table_for_runs(table, {run});
  auto specs = layerchart::sequence_charts(layerchart::narrative_bindings({run}), table,
                                           engine.chart_config(), engine.lexicon());
  spec = specs.at(0);
  return layerchart::compose_chart(spec, render_table, engine.palette());
}

}  // namespace

extern "C" {

const char* lc_version(void) { return "0.1.0"; }

const char* lc_status_name(lc_status status) {
  switch (status) {
    case LC_OK: return "ok";
    case LC_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case LC_ERR_IO: return "io";
    case LC_ERR_PARSE: return "parse";
    case LC_ERR_VALIDATION: return "validation";
    case LC_ERR_EMPTY_ARTICLE: return "empty_article";
    case LC_ERR_EMPTY_SERIES: return "empty_series";
    case LC_ERR_SERIES_TOO_SHORT: return "series_too_short";
    case LC_ERR_MALFORMED_RESPONSE: return "malformed_response";
    case LC_ERR_BINDING_FAILED: return "binding_failed";
    case LC_ERR_PROVIDER: return "provider";
    case LC_ERR_TARGET_NOT_IN_LAYOUT: return "target_not_in_layout";
    case LC_ERR_CANVAS_TOO_SMALL: return "canvas_too_small";
    case LC_ERR_NO_NUMERIC_COLUMN: return "no_numeric_column";
    case LC_ERR_EMPTY_FRAME_LIST: return "empty_frame_list";
    case LC_ERR_DIMENSION_MISMATCH: return "dimension_mismatch";
    case LC_ERR_UNKNOWN_TARGET: return "unknown_target";
    case LC_ERR_NOT_FOUND: return "not_found";
    case LC_ERR_LAYOUT: return "layout";
    case LC_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* lc_last_error(void) { return g_last_error.c_str(); }

void lc_string_free(char* s) { std::free(s); }

void lc_buffer_free(lc_buffer* buffer) {
  if (!buffer) return;
  std::free(buffer->data);
  buffer->data = nullptr;
  buffer->size = 0;
}

lc_status lc_table_load(const char* path, lc_table** out) {
  return guard([&] {
    require(path && out, "path and out");
    *out = new lc_table{layerchart::load_table_file(path)};
  });
}

lc_status lc_table_parse(const char* text, const char* name, lc_table** out) {
  return guard([&] {
    require(text && out, "text and out");
    *out = new lc_table{layerchart::parse_table_text(text, name ? name : "table")};
  });
}

void lc_table_free(lc_table* table) { delete table; }

size_t lc_table_row_count(const lc_table* table) { return table ? table->table.row_count() : 0; }

size_t lc_table_column_count(const lc_table* table) { return table ? table->table.column_count() : 0; }

lc_status lc_table_validate(const lc_table* table, char** violations_json) {
  return guard([&] {
    require(table && violations_json, "table and violations_json");
    *violations_json = dup(nlohmann::json(layerchart::validate_table(table->table)).dump());
  });
}

lc_status lc_engine_create(const char* options_json, lc_engine** out) {
  return guard([&] {
    require(out, "out");
    layerchart::EngineOptions options;
    if (options_json && *options_json) {
      options = layerchart::engine_options_from_json(nlohmann::json::parse(options_json));
    }
    auto e = std::make_unique<lc_engine>();
    e->engine = std::make_unique<layerchart::Engine>(std::move(options));
    *out = e.release();
  });
}

void lc_engine_free(lc_engine* engine) { delete engine; }

lc_status lc_segment(lc_engine* engine, const lc_table* table, const char* article, char** narratives_json) {
  return guard([&] {
    require(engine && table && article && narratives_json, "engine, table, article and narratives_json");
    auto narratives = layerchart::segment_narratives(article, table->table, engine->engine->provider());
    auto j = nlohmann::json::array();
    for (const auto& n : narratives) j.push_back({{"id", n.id}, {"order", n.order}, {"text", n.text}});
    *narratives_json = dup(j.dump());
  });
}

lc_status lc_bind(lc_engine* engine, const lc_table* table, const char* narrative, char** binding,
                  int* used_fallback) {
  return guard([&] {
    require(engine && table && narrative && binding, "engine, table, narrative and binding");
    auto runs = layerchart::bind_narratives({layerchart::Narrative{"n0", 0, narrative, std::nullopt}},
                                            table->table, *engine->engine);
    if (!runs[0].outcome) throw Error(ErrorCode::kBindingFailed, runs[0].error);
    *binding = dup(layerchart::serialize_binding(runs[0].outcome->result));
    if (used_fallback) *used_fallback = runs[0].outcome->used_fallback ? 1 : 0;
  });
}

lc_status lc_annotate(const lc_table* table, const char* narrative, const char* binding, char** spans_json) {
  return guard([&] {
    require(table && narrative && binding && spans_json, "table, narrative, binding and spans_json");
    layerchart::NarrativeRun run;
    run.outcome = layerchart::BindOutcome{};
    run.outcome->result = layerchart::parse_binding_document(binding);
    auto t = layerchart::table_for_runs(table->table, {run});
    auto spans = layerchart::derive_vocab_spans(narrative, run.outcome->result, t);
    *spans_json = dup(layerchart::annotations_to_json(spans).dump());
  });
}

lc_status lc_chart_svg(lc_engine* engine, const lc_table* table, const char* binding, char** svg) {
  return guard([&] {
    require(engine && table && binding && svg, "engine, table, binding and svg");
    layerchart::DataTable t;
    layerchart::LayeredChartSpec spec;
    auto c = single_chart(*engine->engine, table->table, binding, t, spec);
    *svg = dup(layerchart::render_svg(c.layout, c.overlays));
  });
}

lc_status lc_chart_png(lc_engine* engine, const lc_table* table, const char* binding, double scale,
                       lc_buffer* png) {
  return guard([&] {
    require(engine && table && binding && png, "engine, table, binding and png");
    layerchart::DataTable t;
    layerchart::LayeredChartSpec spec;
    auto c = single_chart(*engine->engine, table->table, binding, t, spec);
    fill(png, layerchart::render_png(c.layout, c.overlays, scale));
  });
}

lc_status lc_pipeline_run(lc_engine* engine, const lc_table* table, const char* article, const char* out_dir,
                          int* degraded, char** summary_json) {
  return guard([&] {
    require(engine && table && article && out_dir, "engine, table, article and out_dir");
    auto run = layerchart::run_pipeline(table->table, article, *engine->engine);
    layerchart::write_pipeline_outputs(run, *engine->engine, out_dir);
    if (degraded) *degraded = run.degraded ? 1 : 0;
    if (summary_json) *summary_json = dup(layerchart::pipeline_summary(run).dump(2));
  });
}

lc_status lc_evaluate_files(const char* pred_path, const char* gold_path, char** report_text,
                            char** report_json) {
  return guard([&] {
    require(pred_path && gold_path, "pred_path and gold_path");
    auto report = layerchart::evaluate_files(pred_path, gold_path);
    if (report_text) *report_text = dup(layerchart::format_report(report));
    if (report_json) *report_json = dup(layerchart::report_to_json(report).dump(2));
  });
}

lc_status lc_label_corpus(lc_engine* engine, const char* gold_path, const char* pred_path) {
  return guard([&] {
    require(engine && gold_path && pred_path, "engine, gold_path and pred_path");
    auto gold = layerchart::load_corpus_file(gold_path);
    auto pred = engine->engine->provider()->available()
                    ? layerchart::engine_labels(gold, *engine->engine)
                    : layerchart::fallback_labels(gold, engine->engine->lexicon());
    layerchart::write_file(pred_path, layerchart::corpus_to_json(pred).dump(1) + "\n");
  });
}

lc_status lc_scaling_run(lc_engine* engine, const char* options_json, char** csv) {
  return guard([&] {
    require(engine && csv, "engine and csv");
    layerchart::ScalingConfig cfg;
    cfg.seed = engine->engine->options().seed;
    std::optional<layerchart::DataTable> base;
    if (options_json && *options_json) {
      auto j = nlohmann::json::parse(options_json);
      cfg.min_cols = j.value("minCols", cfg.min_cols);
      cfg.max_cols = j.value("maxCols", cfg.max_cols);
      cfg.col_step = j.value("colStep", cfg.col_step);
      cfg.min_rows = j.value("minRows", cfg.min_rows);
      cfg.max_rows = j.value("maxRows", cfg.max_rows);
      cfg.row_step = j.value("rowStep", cfg.row_step);
      cfg.narratives_per_cell = j.value("perCell", cfg.narratives_per_cell);
      cfg.seed = j.value("seed", cfg.seed);
      if (j.contains("baseTable")) base = layerchart::load_table_file(j["baseTable"].get<std::string>());
    }
    *csv = dup(layerchart::scaling_csv(layerchart::run_scaling(base, cfg, *engine->engine)));
  });
}

lc_status lc_curation_approve(const char* curation_path, const char* entry_id) {
  return guard([&] {
    require(curation_path && entry_id, "curation_path and entry_id");
    bool known = false;
    for (const auto& e : layerchart::load_curation_file(curation_path)) known = known || e.id == entry_id;
    if (!known) throw Error(ErrorCode::kNotFound, std::string("no curation entry '") + entry_id + "'");
    layerchart::append_review(curation_path, entry_id);
  });
}

lc_status lc_curate(const char* curation_path, const char* prompt_db_path, size_t* promoted,
                    char** warnings_json) {
  return guard([&] {
    require(curation_path && prompt_db_path, "curation_path and prompt_db_path");
    auto res = layerchart::curate(curation_path, prompt_db_path);
    if (promoted) *promoted = res.promoted;
    if (warnings_json) *warnings_json = dup(nlohmann::json(res.warnings).dump());
  });
}

lc_status lc_server_create(lc_engine* engine, const char* store_path, const char* curation_path,
                           const char* host, int port, lc_server** out, int* bound_port) {
  return guard([&] {
    require(engine && out, "engine and out");
    layerchart::ServiceConfig cfg;
    if (store_path && *store_path) cfg.store_path = store_path;
    if (curation_path) cfg.curation_path = curation_path;
    auto s = std::make_unique<lc_server>();
    s->service = std::make_unique<layerchart::Service>(*engine->engine, cfg);
    s->api = std::make_unique<layerchart::ApiServer>(*s->service);
    int p = s->api->bind(host && *host ? host : "127.0.0.1", port);
    if (bound_port) *bound_port = p;
    *out = s.release();
  });
}

lc_status lc_server_run(lc_server* server) {
  return guard([&] {
    require(server, "server");
    server->api->listen();
  });
}

void lc_server_stop(lc_server* server) {
  if (server) server->api->stop();
}

void lc_server_free(lc_server* server) { delete server; }

}  // extern "C"
