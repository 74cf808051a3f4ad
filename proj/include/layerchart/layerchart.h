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

/* C interface to the layerchart engine. Every function returns an
 * lc_status; on failure lc_last_error() describes the problem for the
 * calling thread. Strings and buffers handed out by the library are freed
 * with lc_string_free / lc_buffer_free. */

#ifndef LAYERCHART_LAYERCHART_H_
#define LAYERCHART_LAYERCHART_H_

#include <stddef.h>
#include <stdint.h>

#if defined(LAYERCHART_BUILDING_LIBRARY)
#define LC_API __attribute__((visibility("default")))
#else
#define LC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lc_status {
  LC_OK = 0,
  LC_ERR_INVALID_ARGUMENT = 1,
  LC_ERR_IO = 2,
  LC_ERR_PARSE = 3,
  LC_ERR_VALIDATION = 4,
  LC_ERR_EMPTY_ARTICLE = 5,
  LC_ERR_EMPTY_SERIES = 6,
  LC_ERR_SERIES_TOO_SHORT = 7,
  LC_ERR_MALFORMED_RESPONSE = 8,
  LC_ERR_BINDING_FAILED = 9,
  LC_ERR_PROVIDER = 10,
  LC_ERR_TARGET_NOT_IN_LAYOUT = 11,
  LC_ERR_CANVAS_TOO_SMALL = 12,
  LC_ERR_NO_NUMERIC_COLUMN = 13,
  LC_ERR_EMPTY_FRAME_LIST = 14,
  LC_ERR_DIMENSION_MISMATCH = 15,
  LC_ERR_UNKNOWN_TARGET = 16,
  LC_ERR_NOT_FOUND = 17,
  LC_ERR_LAYOUT = 18,
  LC_ERR_INTERNAL = 99
} lc_status;

typedef struct lc_table lc_table;
typedef struct lc_engine lc_engine;
typedef struct lc_server lc_server;

typedef struct lc_buffer {
  uint8_t* data;
  size_t size;
} lc_buffer;

LC_API const char* lc_version(void);
LC_API const char* lc_status_name(lc_status status);
/* Message of the last failure on this thread; "" after a success. */
LC_API const char* lc_last_error(void);

LC_API void lc_string_free(char* s);
LC_API void lc_buffer_free(lc_buffer* buffer);

/* Tables: CSV or the JSON document form, chosen by content. */
LC_API lc_status lc_table_load(const char* path, lc_table** out);
LC_API lc_status lc_table_parse(const char* text, const char* name, lc_table** out);
LC_API void lc_table_free(lc_table* table);
LC_API size_t lc_table_row_count(const lc_table* table);
LC_API size_t lc_table_column_count(const lc_table* table);
/* JSON array of violation messages; "[]" for a valid table. */
LC_API lc_status lc_table_validate(const lc_table* table, char** violations_json);

/* options_json may be NULL. Keys: provider {kind, fixtureDir, endpoint,
 * model, apiKeyEnv} or a kind string, lexicon, palette, promptDb,
 * chartConfig, chartType, canvas, k, jobs, seed. */
LC_API lc_status lc_engine_create(const char* options_json, lc_engine** out);
LC_API void lc_engine_free(lc_engine* engine);

/* Narratives of an article as a JSON array of {id, order, text}. */
LC_API lc_status lc_segment(lc_engine* engine, const lc_table* table, const char* article,
                            char** narratives_json);
/* Binding document in wire form. used_fallback may be NULL. */
LC_API lc_status lc_bind(lc_engine* engine, const lc_table* table, const char* narrative,
                         char** binding, int* used_fallback);
/* JSON array of {kind, text, charStart, charEnd, display}. */
LC_API lc_status lc_annotate(const lc_table* table, const char* narrative, const char* binding,
                             char** spans_json);
/* Single layered chart for one narrative's binding. */
LC_API lc_status lc_chart_svg(lc_engine* engine, const lc_table* table, const char* binding,
                              char** svg);
LC_API lc_status lc_chart_png(lc_engine* engine, const lc_table* table, const char* binding,
                              double scale, lc_buffer* png);

/* Full pipeline into out_dir. *degraded is set when a narrative fell back
 * from an available provider or could not be bound. summary_json may be
 * NULL. */
LC_API lc_status lc_pipeline_run(lc_engine* engine, const lc_table* table, const char* article,
                                 const char* out_dir, int* degraded, char** summary_json);

/* Per-kind metrics between two label corpora. */
LC_API lc_status lc_evaluate_files(const char* pred_path, const char* gold_path, char** report_text,
                                   char** report_json);
/* Labels every narrative of a gold corpus with the engine (the null
 * provider gives the rule-based binder) and writes a prediction corpus. */
LC_API lc_status lc_label_corpus(lc_engine* engine, const char* gold_path, const char* pred_path);

/* options_json keys: minCols, maxCols, colStep, minRows, maxRows, rowStep,
 * perCell, seed, baseTable (path). Output is "rows,cols,accuracy" CSV. */
LC_API lc_status lc_scaling_run(lc_engine* engine, const char* options_json, char** csv);

/* Marks reviewed curation entries and promotes them into a prompt DB. */
LC_API lc_status lc_curation_approve(const char* curation_path, const char* entry_id);
LC_API lc_status lc_curate(const char* curation_path, const char* prompt_db_path, size_t* promoted,
                           char** warnings_json);

/* HTTP API. port 0 picks a free port; *bound_port receives it. */
LC_API lc_status lc_server_create(lc_engine* engine, const char* store_path, const char* curation_path,
                                  const char* host, int port, lc_server** out, int* bound_port);
/* Blocks until lc_server_stop. */
LC_API lc_status lc_server_run(lc_server* server);
LC_API void lc_server_stop(lc_server* server);
LC_API void lc_server_free(lc_server* server);

#ifdef __cplusplus
}
#endif

#endif /* LAYERCHART_LAYERCHART_H_ */
