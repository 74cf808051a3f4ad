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

#ifndef LAYERCHART_APP_ENGINE_H_
#define LAYERCHART_APP_ENGINE_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>

#include "binder/bind.h"
#include "binder/prompt.h"
#include "binder/provider.h"
#include "json.hpp"
#include "overlay/palette.h"
#include "render/chart.h"
#include "trendlex/lexicon.h"

namespace layerchart {

// Everything a front end can override. Empty paths mean the bundled data.
struct EngineOptions {
  ProviderConfig provider;
  std::string lexicon_path;
  std::string palette_path;
  std::string prompt_db_path;
  std::string chart_config_path;
  std::optional<ChartType> chart_type;
  std::optional<Canvas> canvas;
  std::optional<size_t> k;
  size_t jobs = 1;
  uint64_t seed = 1;
};

// Keys: provider {kind, fixtureDir, endpoint, model, apiKeyEnv}, lexicon,
// palette, promptDb, chartConfig, chartType, canvas ("WxH" or object), k,
// jobs, seed. Unknown keys are rejected.
EngineOptions engine_options_from_json(const nlohmann::json& doc);
nlohmann::json engine_options_to_json(const EngineOptions& options);

// Loaded configuration shared by the pipeline, the harnesses and the
// service. Read-only after construction apart from the provider, whose
// implementations are thread-safe.
class Engine {
 public:
  explicit Engine(EngineOptions options);

  const EngineOptions& options() const { return options_; }
  const Lexicon& lexicon() const { return lexicon_; }
  const Palette& palette() const { return palette_; }
  const PromptDb& prompt_db() const { return db_; }
  const ChartConfig& chart_config() const { return chart_; }
  Provider* provider() const { return provider_.get(); }
  BindConfig bind_config() const;
  size_t jobs() const { return options_.jobs == 0 ? 1 : options_.jobs; }

 private:
  EngineOptions options_;
  Lexicon lexicon_;
  Palette palette_;
  PromptDb db_;
  ChartConfig chart_;
  std::unique_ptr<Provider> provider_;
};

}  // namespace layerchart

#endif  // LAYERCHART_APP_ENGINE_H_
