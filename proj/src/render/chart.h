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

#ifndef LAYERCHART_RENDER_CHART_H_
#define LAYERCHART_RENDER_CHART_H_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "core/binding.h"
#include "json.hpp"
#include "overlay/overlay.h"
#include "overlay/palette.h"
#include "overlay/placement.h"
#include "render/layout.h"
#include "render/render.h"
#include "trendlex/lexicon.h"

namespace layerchart {

struct ChartConfig {
  Canvas canvas;
  std::optional<ChartType> chart_type;
  std::vector<std::string> columns;  // empty: every numeric column
  int frame_duration_ms = 2000;
};

ChartConfig chart_config_from_json(const nlohmann::json& doc);
nlohmann::json chart_config_to_json(const ChartConfig& config);
ChartConfig load_chart_config_file(const std::string& path);
// "800x450"; throws kInvalidArgument.
Canvas parse_canvas(std::string_view text);

struct LayeredChartSpec {
  std::string narrative_id;
  size_t order = 0;
  ChartType chart_type = ChartType::kSingleLine;
  std::vector<std::string> columns;
  Canvas canvas;
  std::vector<OverlaySpec> overlays;
  // Chart-level settings changed by edits.
  std::optional<std::string> title;
  std::optional<std::string> x_label;
  std::optional<std::string> y_label;
  std::optional<double> line_width;
  std::map<std::string, std::string> series_colors;
  // Top-left corner of the legend; clamped into the canvas.
  std::optional<Point> legend_position;
  std::vector<std::string> notes;

  bool operator==(const LayeredChartSpec&) const = default;
};

nlohmann::json chart_spec_to_json(const LayeredChartSpec& spec);
LayeredChartSpec chart_spec_from_json(const nlohmann::json& doc);

// Binding outcome of one narrative; result is empty when binding failed.
struct NarrativeBinding {
  std::string narrative_id;
  size_t order = 0;
  std::optional<BindingResult> result;
  std::string note;
};

// One spec per narrative, sorted by order. All specs plot the same columns
// on the same chart type, so frames share axes. Derived "A + B" columns
// referenced by any record join the plotted set. Throws kInvalidArgument on
// repeated order values.
std::vector<LayeredChartSpec> sequence_charts(const std::vector<NarrativeBinding>& bindings,
                                              const DataTable& table, const ChartConfig& config,
                                              const Lexicon& lexicon);

struct ComposedChart {
  BaseChartLayout layout;
  std::vector<PlacedOverlay> overlays;
};

// Layout, placement and palette for one spec.
ComposedChart compose_chart(const LayeredChartSpec& spec, const DataTable& table,
                            const Palette& palette);

std::string chart_svg(const LayeredChartSpec& spec, const DataTable& table, const Palette& palette);
Bytes chart_png(const LayeredChartSpec& spec, const DataTable& table, const Palette& palette,
                double scale = 1.0);
// One frame per spec in order.
Bytes sequence_gif(const std::vector<LayeredChartSpec>& specs, const DataTable& table,
                   const Palette& palette, int frame_duration_ms = 2000);

}  // namespace layerchart

#endif  // LAYERCHART_RENDER_CHART_H_
