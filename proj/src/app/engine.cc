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

#include "app/engine.h"

#include <set>

#include "core/error.h"

namespace layerchart {

EngineOptions engine_options_from_json(const nlohmann::json& j) {
  static const std::set<std::string> kKeys = {"provider", "lexicon",   "palette", "promptDb",
                                              "chartConfig", "chartType", "canvas", "k",
                                              "jobs", "seed"};
  if (!j.is_object()) throw Error(ErrorCode::kInvalidArgument, "engine options must be an object");
  for (const auto& [key, value] : j.items()) {
    if (!kKeys.count(key)) throw Error(ErrorCode::kInvalidArgument, "unknown engine option '" + key + "'");
  }
  EngineOptions o;
  try {
    if (j.contains("provider")) {
      const auto& p = j["provider"];
      if (p.is_string()) {
        o.provider.kind = p.get<std::string>();
      } else {
        o.provider.kind = p.value("kind", "null");
        o.provider.fixture_dir = p.value("fixtureDir", "");
        o.provider.http.endpoint = p.value("endpoint", "");
        o.provider.http.model = p.value("model", "");
        o.provider.http.api_key_env = p.value("apiKeyEnv", o.provider.http.api_key_env);
      }
    }
    o.lexicon_path = j.value("lexicon", "");
    o.palette_path = j.value("palette", "");
    o.prompt_db_path = j.value("promptDb", "");
    o.chart_config_path = j.value("chartConfig", "");
    if (j.contains("chartType")) {
      auto t = parse_chart_type(j["chartType"].get<std::string>());
      if (!t) throw Error(ErrorCode::kInvalidArgument, "unknown chart type " + j["chartType"].dump());
      o.chart_type = t;
    }
    if (j.contains("canvas")) {
      const auto& c = j["canvas"];
      o.canvas = c.is_string() ? parse_canvas(c.get<std::string>())
                               : Canvas{c.at("width").get<int>(), c.at("height").get<int>()};
    }
    if (j.contains("k")) o.k = j["k"].get<size_t>();
    o.jobs = j.value("jobs", size_t{1});
    o.seed = j.value("seed", uint64_t{1});
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument, std::string("engine options: ") + e.what());
  }
  return o;
}

nlohmann::json engine_options_to_json(const EngineOptions& o) {
  nlohmann::json j;
  j["provider"] = {{"kind", o.provider.kind},
                   {"fixtureDir", o.provider.fixture_dir},
                   {"endpoint", o.provider.http.endpoint},
                   {"model", o.provider.http.model},
                   {"apiKeyEnv", o.provider.http.api_key_env}};
  if (!o.lexicon_path.empty()) j["lexicon"] = o.lexicon_path;
  if (!o.palette_path.empty()) j["palette"] = o.palette_path;
  if (!o.prompt_db_path.empty()) j["promptDb"] = o.prompt_db_path;
  if (!o.chart_config_path.empty()) j["chartConfig"] = o.chart_config_path;
  if (o.chart_type) j["chartType"] = chart_type_name(*o.chart_type);
  if (o.canvas) j["canvas"] = {{"width", o.canvas->width}, {"height", o.canvas->height}};
  if (o.k) j["k"] = *o.k;
  j["jobs"] = o.jobs;
  j["seed"] = o.seed;
  return j;
}

Engine::Engine(EngineOptions options)
    : options_(std::move(options)),
      lexicon_(options_.lexicon_path.empty() ? default_lexicon()
                                             : load_lexicon_file(options_.lexicon_path)),
      palette_(options_.palette_path.empty() ? default_palette()
                                             : load_palette_file(options_.palette_path)),
      db_(options_.prompt_db_path.empty() ? default_prompt_db()
                                          : load_prompt_db(options_.prompt_db_path)),
      provider_(make_provider(options_.provider)) {
  if (!options_.chart_config_path.empty()) chart_ = load_chart_config_file(options_.chart_config_path);
  if (options_.chart_type) chart_.chart_type = options_.chart_type;
  if (options_.canvas) chart_.canvas = *options_.canvas;
  if (chart_.canvas.width < 200 || chart_.canvas.height < 150) {
    throw Error(ErrorCode::kCanvasTooSmall, "canvas must be at least 200x150");
  }
}

BindConfig Engine::bind_config() const {
  BindConfig cfg;
  if (options_.k) cfg.retrieval.k = *options_.k;
  return cfg;
}

}  // namespace layerchart
