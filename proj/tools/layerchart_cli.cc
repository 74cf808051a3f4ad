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

// Command-line front end. Talks to the engine only through the C API.

#include <pthread.h>
#include <signal.h>

#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "layerchart/layerchart.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDegraded = 1;
constexpr int kExitUsage = 2;

struct EngineFlags {
  std::string provider = "null";
  std::string fixture_dir;
  std::string endpoint;
  std::string model;
  std::string api_key_env;
  std::string lexicon;
  std::string palette;
  std::string prompt_db;
  std::string chart_config;
  std::string chart_type;
  std::string canvas;
  std::optional<size_t> k;
  size_t jobs = 1;
  uint64_t seed = 1;

  void add(CLI::App* cmd) {
    cmd->add_option("--provider", provider, "Model provider: null, fixture or http")
        ->check(CLI::IsMember({"null", "fixture", "http"}));
    cmd->add_option("--fixture-dir", fixture_dir, "Recorded responses for --provider fixture");
    cmd->add_option("--endpoint", endpoint, "Chat-completion URL for --provider http");
    cmd->add_option("--model", model, "Model name for --provider http");
    cmd->add_option("--api-key-env", api_key_env, "Environment variable holding the API key");
    cmd->add_option("--lexicon", lexicon, "Trend lexicon JSON file");
    cmd->add_option("--palette", palette, "Palette JSON file");
    cmd->add_option("--prompt-db", prompt_db, "Prompt example DB (JSON lines)");
    cmd->add_option("--chart-config", chart_config, "Chart config JSON file");
    cmd->add_option("--chart-type", chart_type, "single_line, multi_line, single_bar or multi_bar")
        ->check(CLI::IsMember({"single_line", "multi_line", "single_bar", "multi_bar"}));
    cmd->add_option("--canvas", canvas, "Canvas size as WxH");
    cmd->add_option("--k", k, "Few-shot examples per prompt");
    cmd->add_option("--jobs", jobs, "Parallel binding jobs")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", seed, "Seed for generated scaling data");
  }

  std::string json() const {
    nlohmann::json j;
    j["provider"] = {{"kind", provider}, {"fixtureDir", fixture_dir}, {"endpoint", endpoint}, {"model", model}};
    if (!api_key_env.empty()) j["provider"]["apiKeyEnv"] = api_key_env;
    if (!lexicon.empty()) j["lexicon"] = lexicon;
    if (!palette.empty()) j["palette"] = palette;
    if (!prompt_db.empty()) j["promptDb"] = prompt_db;
    if (!chart_config.empty()) j["chartConfig"] = chart_config;
    if (!chart_type.empty()) j["chartType"] = chart_type;
    if (!canvas.empty()) j["canvas"] = canvas;
    if (k) j["k"] = *k;
    j["jobs"] = jobs;
    j["seed"] = seed;
    return j.dump();
  }
};

// Statuses caused by the caller's input rather than by the pipeline.
bool is_input_error(lc_status s) {
  switch (s) {
    case LC_ERR_INVALID_ARGUMENT:
    case LC_ERR_IO:
    case LC_ERR_PARSE:
    case LC_ERR_VALIDATION:
    case LC_ERR_EMPTY_ARTICLE:
    case LC_ERR_CANVAS_TOO_SMALL:
    case LC_ERR_NOT_FOUND:
    case LC_ERR_NO_NUMERIC_COLUMN:
      return true;
    default:
      return false;
  }
}

struct Failure {
  int code;
};

void check(lc_status s, const std::string& what) {
  if (s == LC_OK) return;
  std::cerr << "layerchart: " << what << ": " << lc_last_error() << " (" << lc_status_name(s) << ")\n";
  throw Failure{is_input_error(s) ? kExitUsage : kExitDegraded};
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "layerchart: cannot read " << path << "\n";
    throw Failure{kExitUsage};
  }
  return std::string(std::istreambuf_iterator<char>(in), {});
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) {
    std::cerr << "layerchart: cannot write " << path << "\n";
    throw Failure{kExitUsage};
  }
}

std::string take(char* s) {
  std::string out = s ? s : "";
  lc_string_free(s);
  return out;
}

struct Engine {
  lc_engine* e = nullptr;
  explicit Engine(const EngineFlags& f) { check(lc_engine_create(f.json().c_str(), &e), "engine"); }
  ~Engine() { lc_engine_free(e); }
};

struct Table {
  lc_table* t = nullptr;
  explicit Table(const std::string& path) { check(lc_table_load(path.c_str(), &t), "table " + path); }
  ~Table() { lc_table_free(t); }
};

lc_server* g_server = nullptr;

int serve(const EngineFlags& flags, const std::string& host, int port, const std::string& store,
          const std::string& curation) {
  sigset_t set;
  sigemptyset(&set);
  sigaddset(&set, SIGINT);
  sigaddset(&set, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &set, nullptr);
  Engine engine(flags);
  int bound = 0;
  check(lc_server_create(engine.e, store.c_str(), curation.c_str(), host.c_str(), port, &g_server, &bound),
        "server");
  std::cerr << "layerchart: serving /v1 on http://" << host << ":" << bound << "\n";
  std::thread waiter([&] {
    int sig = 0;
    sigwait(&set, &sig);
    lc_server_stop(g_server);
  });
  lc_status s = lc_server_run(g_server);
  pthread_kill(waiter.native_handle(), SIGTERM);
  waiter.join();
  lc_server_free(g_server);
  check(s, "server");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"layerchart: layered charts from financial narratives"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(lc_version()));

  EngineFlags flags;

  auto* pipeline = app.add_subcommand("pipeline", "Segment, bind and render an article");
  std::string table_path, text_path, out_dir;
  pipeline->add_option("table", table_path, "Data table (CSV or JSON)")->required();
  pipeline->add_option("text", text_path, "Article text file")->required();
  pipeline->add_option("out", out_dir, "Output directory")->required();
  flags.add(pipeline);

  auto* segment = app.add_subcommand("segment", "Split an article into narratives");
  segment->add_option("table", table_path, "Data table (CSV or JSON)")->required();
  segment->add_option("text", text_path, "Article text file")->required();
  flags.add(segment);

  auto* bind = app.add_subcommand("bind", "Bind one narrative and print the binding document");
  bind->add_option("table", table_path, "Data table (CSV or JSON)")->required();
  bind->add_option("text", text_path, "Narrative text file")->required();
  flags.add(bind);

  auto* label = app.add_subcommand("label", "Predict labels for every narrative of a gold corpus");
  std::string gold_path, pred_path;
  label->add_option("gold", gold_path, "Gold corpus JSON")->required();
  label->add_option("pred", pred_path, "Prediction corpus to write")->required();
  flags.add(label);

  auto* eval = app.add_subcommand("eval", "Per-kind precision, recall and F1");
  bool eval_json = false;
  eval->add_option("pred", pred_path, "Predicted label corpus")->required();
  eval->add_option("gold", gold_path, "Gold label corpus")->required();
  eval->add_flag("--json", eval_json, "Print JSON instead of a table");

  auto* scaling = app.add_subcommand("scaling", "Binding accuracy over a grid of table sizes");
  std::string base_table, scaling_out;
  size_t min_cols = 2, max_cols = 10, col_step = 2, min_rows = 20, max_rows = 200, row_step = 45, per_cell = 10;
  scaling->add_option("--base", base_table, "Table to grow (default: generated)");
  scaling->add_option("--min-cols", min_cols, "Fewest value columns")->capture_default_str()->check(CLI::PositiveNumber);
  scaling->add_option("--max-cols", max_cols, "Most value columns")->capture_default_str()->check(CLI::PositiveNumber);
  scaling->add_option("--col-step", col_step, "Column step")->capture_default_str()->check(CLI::PositiveNumber);
  scaling->add_option("--min-rows", min_rows, "Fewest rows")->capture_default_str()->check(CLI::PositiveNumber);
  scaling->add_option("--max-rows", max_rows, "Most rows")->capture_default_str()->check(CLI::PositiveNumber);
  scaling->add_option("--row-step", row_step, "Row step")->capture_default_str()->check(CLI::PositiveNumber);
  scaling->add_option("--per-cell", per_cell, "Narratives per grid cell")->check(CLI::PositiveNumber);
  scaling->add_option("-o,--out", scaling_out, "CSV output (default: stdout)");
  flags.add(scaling);

  auto* curate = app.add_subcommand("curate", "Promote reviewed marks into the prompt DB");
  std::string curation_path, prompt_db_path;
  std::vector<std::string> approve;
  curate->add_option("feedback", curation_path, "Curation file (JSON lines)")->required();
  curate->add_option("promptdb", prompt_db_path, "Prompt DB to extend")->required();
  curate->add_option("--approve", approve, "Mark these entry ids reviewed first");

  auto* serve_cmd = app.add_subcommand("serve", "Serve the HTTP API");
  std::string host = "127.0.0.1", store = "layerchart.db", curation;
  int port = 8080;
  serve_cmd->add_option("--host", host, "Address to listen on")->capture_default_str();
  serve_cmd->add_option("--port", port, "Port; 0 picks a free one")->capture_default_str()->check(CLI::Range(0, 65535));
  serve_cmd->add_option("--store", store, "SQLite file for projects and logs");
  serve_cmd->add_option("--curation", curation, "Curation file for marks");
  flags.add(serve_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*pipeline) {
      Engine engine(flags);
      Table table(table_path);
      std::string article = read_text(text_path);
      int degraded = 0;
      char* summary = nullptr;
      check(lc_pipeline_run(engine.e, table.t, article.c_str(), out_dir.c_str(), &degraded, &summary),
            "pipeline");
      std::cout << take(summary) << "\n";
      return degraded ? kExitDegraded : kExitOk;
    }
    if (*segment) {
      Engine engine(flags);
      Table table(table_path);
      char* out = nullptr;
      check(lc_segment(engine.e, table.t, read_text(text_path).c_str(), &out), "segment");
      std::cout << nlohmann::json::parse(take(out)).dump(2) << "\n";
      return kExitOk;
    }
    if (*bind) {
      Engine engine(flags);
      Table table(table_path);
      char* out = nullptr;
      int used_fallback = 0;
      check(lc_bind(engine.e, table.t, read_text(text_path).c_str(), &out, &used_fallback), "bind");
      std::cout << take(out) << "\n";
      return used_fallback && flags.provider != "null" ? kExitDegraded : kExitOk;
    }
    if (*label) {
      Engine engine(flags);
      check(lc_label_corpus(engine.e, gold_path.c_str(), pred_path.c_str()), "label");
      return kExitOk;
    }
    if (*eval) {
      char* text = nullptr;
      char* json = nullptr;
      check(lc_evaluate_files(pred_path.c_str(), gold_path.c_str(), &text, &json), "eval");
      std::string t = take(text), j = take(json);
      std::cout << (eval_json ? j + "\n" : t);
      return kExitOk;
    }
    if (*scaling) {
      Engine engine(flags);
      nlohmann::json opts = {{"minCols", min_cols}, {"maxCols", max_cols}, {"colStep", col_step},
                             {"minRows", min_rows}, {"maxRows", max_rows}, {"rowStep", row_step},
                             {"perCell", per_cell}, {"seed", flags.seed}};
      if (!base_table.empty()) opts["baseTable"] = base_table;
      char* csv = nullptr;
      check(lc_scaling_run(engine.e, opts.dump().c_str(), &csv), "scaling");
      write_text(scaling_out, take(csv));
      return kExitOk;
    }
    if (*curate) {
      for (const auto& id : approve) check(lc_curation_approve(curation_path.c_str(), id.c_str()), "approve " + id);
      size_t promoted = 0;
      char* warnings = nullptr;
      check(lc_curate(curation_path.c_str(), prompt_db_path.c_str(), &promoted, &warnings), "curate");
      for (const auto& w : nlohmann::json::parse(take(warnings))) {
        std::cerr << "layerchart: warning: " << w.get<std::string>() << "\n";
      }
      std::cout << promoted << "\n";
      return kExitOk;
    }
    if (*serve_cmd) return serve(flags, host, port, store, curation);
  } catch (const Failure& f) {
    return f.code;
  }
  return kExitUsage;
}
