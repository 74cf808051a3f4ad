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

#include "render/chart.h"

#include <algorithm>
#include <set>

#include "core/error.h"
#include "core/util.h"

namespace layerchart {

Canvas parse_canvas(std::string_view text) {
  auto x = text.find('x');
  if (x == std::string_view::npos) x = text.find('X');
  auto w = x == std::string_view::npos ? std::nullopt : parse_number(text.substr(0, x));
  auto h = x == std::string_view::npos ? std::nullopt : parse_number(text.substr(x + 1));
  if (!w || !h || *w != static_cast<int>(*w) || *h != static_cast<int>(*h) || *w <= 0 || *h <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "canvas must look like 800x450, got '" + std::string(text) + "'");
  }
  return Canvas{static_cast<int>(*w), static_cast<int>(*h)};
}

ChartConfig chart_config_from_json(const nlohmann::json& j) {
  ChartConfig c;
  try {
    if (!j.is_object()) throw Error(ErrorCode::kValidation, "chart config must be an object");
    if (j.contains("canvas")) {
      const auto& cv = j["canvas"];
      if (cv.is_string()) {
        c.canvas = parse_canvas(cv.get<std::string>());
      } else {
        c.canvas = Canvas{cv.at("width").get<int>(), cv.at("height").get<int>()};
      }
    }
    if (j.contains("chartType") && !j["chartType"].is_null()) {
      auto t = parse_chart_type(j["chartType"].get<std::string>());
      if (!t) throw Error(ErrorCode::kValidation, "unknown chart type " + j["chartType"].dump());
      c.chart_type = t;
    }
    c.columns = j.value("columns", std::vector<std::string>{});
    c.frame_duration_ms = j.value("frameDurationMs", 2000);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kValidation, std::string("chart config: ") + e.what());
  }
  if (c.frame_duration_ms < 0) throw Error(ErrorCode::kValidation, "frameDurationMs must be >= 0");
  return c;
}

nlohmann::json chart_config_to_json(const ChartConfig& c) {
  nlohmann::json j = {{"canvas", {{"width", c.canvas.width}, {"height", c.canvas.height}}},
                      {"columns", c.columns},
                      {"frameDurationMs", c.frame_duration_ms}};
  j["chartType"] = c.chart_type ? nlohmann::json(chart_type_name(*c.chart_type)) : nlohmann::json();
  return j;
}

ChartConfig load_chart_config_file(const std::string& path) {
  try {
    return chart_config_from_json(nlohmann::json::parse(read_file(path)));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, path + ": " + e.what());
  }
}

nlohmann::json chart_spec_to_json(const LayeredChartSpec& s) {
  nlohmann::json j;
  j["narrativeId"] = s.narrative_id;
  j["order"] = s.order;
  j["chartType"] = chart_type_name(s.chart_type);
  j["columns"] = s.columns;
  j["canvas"] = {{"width", s.canvas.width}, {"height", s.canvas.height}};
  j["overlays"] = nlohmann::json::array();
  for (const auto& o : s.overlays) j["overlays"].push_back(overlay_spec_to_json(o));
  if (s.title) j["title"] = *s.title;
  if (s.x_label) j["xLabel"] = *s.x_label;
  if (s.y_label) j["yLabel"] = *s.y_label;
  if (s.line_width) j["lineWidth"] = *s.line_width;
  j["seriesColors"] = s.series_colors;
  if (s.legend_position) j["legendPosition"] = {{"x", s.legend_position->x}, {"y", s.legend_position->y}};
  j["notes"] = s.notes;
  return j;
}

LayeredChartSpec chart_spec_from_json(const nlohmann::json& j) {
  try {
    LayeredChartSpec s;
    s.narrative_id = j.at("narrativeId").get<std::string>();
    s.order = j.at("order").get<size_t>();
    auto t = parse_chart_type(j.at("chartType").get<std::string>());
    if (!t) throw Error(ErrorCode::kParse, "unknown chart type " + j["chartType"].dump());
    s.chart_type = *t;
    s.columns = j.at("columns").get<std::vector<std::string>>();
    s.canvas = Canvas{j.at("canvas").at("width").get<int>(), j.at("canvas").at("height").get<int>()};
    for (const auto& o : j.at("overlays")) s.overlays.push_back(overlay_spec_from_json(o));
    if (j.contains("title")) s.title = j["title"].get<std::string>();
    if (j.contains("xLabel")) s.x_label = j["xLabel"].get<std::string>();
    if (j.contains("yLabel")) s.y_label = j["yLabel"].get<std::string>();
    if (j.contains("lineWidth")) s.line_width = j["lineWidth"].get<double>();
    s.series_colors = j.value("seriesColors", std::map<std::string, std::string>{});
    if (j.contains("legendPosition")) {
      s.legend_position = Point{j["legendPosition"].at("x").get<double>(),
                                j["legendPosition"].at("y").get<double>()};
    }
    s.notes = j.value("notes", std::vector<std::string>{});
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("chart spec: ") + e.what());
  }
}

std::vector<LayeredChartSpec> sequence_charts(const std::vector<NarrativeBinding>& bindings,
                                              const DataTable& table, const ChartConfig& config,
                                              const Lexicon& lexicon) {
  std::set<size_t> orders;
  for (const auto& b : bindings) {
    if (!orders.insert(b.order).second) {
      throw Error(ErrorCode::kInvalidArgument, "narrative order " + std::to_string(b.order) + " repeats");
    }
  }
  std::vector<std::string> columns = config.columns;
  if (columns.empty()) columns = table.numeric_column_names();
  for (const auto& c : columns) {
    if (!is_resolvable_column(table, c)) {
      throw Error(ErrorCode::kInvalidArgument, "column '" + c + "' is not in the table");
    }
  }
  for (const auto& b : bindings) {
    if (!b.result) continue;
    for (const auto& r : b.result->records) {
      if (is_resolvable_column(table, r.data_name) &&
          std::find(columns.begin(), columns.end(), r.data_name) == columns.end()) {
        columns.push_back(r.data_name);
      }
    }
  }
  ChartType type = choose_chart_type(table, columns, config.chart_type);

  std::vector<LayeredChartSpec> out;
  for (const auto& b : bindings) {
    LayeredChartSpec s;
    s.narrative_id = b.narrative_id;
    s.order = b.order;
    s.chart_type = type;
    s.columns = columns;
    s.canvas = config.canvas;
    if (b.result) {
      s.overlays = overlays_for_result(*b.result, lexicon);
    }
    if (!b.note.empty()) s.notes.push_back(b.note);
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(),
            [](const LayeredChartSpec& a, const LayeredChartSpec& b) { return a.order < b.order; });
  return out;
}

ComposedChart compose_chart(const LayeredChartSpec& spec, const DataTable& table, const Palette& palette) {
  ComposedChart c;
  c.layout = layout_base_chart(table, spec.columns, spec.chart_type, spec.canvas);
  if (spec.title) c.layout.title = *spec.title;
  if (spec.x_label) c.layout.x_label = *spec.x_label;
  if (spec.y_label) c.layout.y_label = *spec.y_label;
  if (spec.line_width) c.layout.line_width = *spec.line_width;
  if (spec.legend_position && c.layout.legend_box.w > 0) {
    auto& box = c.layout.legend_box;
    box.x = std::clamp(spec.legend_position->x, 0.0, std::max(0.0, spec.canvas.width - box.w));
    box.y = std::clamp(spec.legend_position->y, 0.0, std::max(0.0, spec.canvas.height - box.h));
  }
  c.overlays = place_overlays(spec.overlays, c.layout, placement_config(palette));
  apply_palette(c.layout, c.overlays, palette);
  for (size_t i = 0; i < c.layout.columns.size(); ++i) {
    auto it = spec.series_colors.find(c.layout.columns[i]);
    if (it != spec.series_colors.end()) c.layout.colors[i] = it->second;
  }
  return c;
}

std::string chart_svg(const LayeredChartSpec& spec, const DataTable& table, const Palette& palette) {
  auto c = compose_chart(spec, table, palette);
  return render_svg(c.layout, c.overlays);
}

Bytes chart_png(const LayeredChartSpec& spec, const DataTable& table, const Palette& palette, double scale) {
  auto c = compose_chart(spec, table, palette);
  return render_png(c.layout, c.overlays, scale);
}

Bytes sequence_gif(const std::vector<LayeredChartSpec>& specs, const DataTable& table,
                   const Palette& palette, int frame_duration_ms) {
  if (specs.empty()) throw Error(ErrorCode::kEmptyFrameList, "no charts to export");
  std::vector<Bytes> frames;
  for (const auto& s : specs) frames.push_back(chart_png(s, table, palette));
  return export_gif(frames, frame_duration_ms);
}

}  // namespace layerchart
