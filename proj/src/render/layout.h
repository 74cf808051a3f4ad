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

#ifndef LAYERCHART_RENDER_LAYOUT_H_
#define LAYERCHART_RENDER_LAYOUT_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "core/table.h"

namespace layerchart {

enum class ChartType { kSingleLine, kMultiLine, kSingleBar, kMultiBar };

const char* chart_type_name(ChartType type);
std::optional<ChartType> parse_chart_type(std::string_view name);
bool is_bar(ChartType type);

struct Canvas {
  int width = 800;
  int height = 450;

  bool operator==(const Canvas&) const = default;
};

struct Point {
  double x = 0;
  double y = 0;

  bool operator==(const Point&) const = default;
};

struct Rect {
  double x = 0;
  double y = 0;
  double w = 0;
  double h = 0;

  double right() const { return x + w; }
  double bottom() const { return y + h; }
  // Open-interior overlap: rectangles that only touch do not intersect.
  bool intersects(const Rect& o) const;
  bool contains(const Rect& o, double eps = 1e-9) const;
  bool contains(Point p, double eps = 1e-9) const;

  bool operator==(const Rect&) const = default;
};

// Linear value -> pixel mapping. Pixel y decreases as the value grows.
struct LinearScale {
  double d0 = 0, d1 = 1;  // value domain
  double r0 = 0, r1 = 1;  // pixel range; r0 is the pixel of d0

  double map(double v) const { return r0 + (v - d0) * (r1 - r0) / (d1 - d0); }
  double invert(double px) const { return d0 + (px - r0) * (d1 - d0) / (r1 - r0); }
};

// One drawn data point: a bar rectangle or a line vertex.
struct ChartElement {
  std::string column;
  size_t row = 1;  // 1-based
  double value = 0;
  bool bar = false;
  Rect rect;       // bars only
  Point vertex;    // lines: the vertex; bars: the centre of the value end

  // Where markers attach: top centre of a bar, or the line vertex.
  Point anchor() const { return vertex; }
};

struct Tick {
  double pos = 0;  // pixel x for the category axis, pixel y for the value axis
  std::string label;
};

struct BaseChartLayout {
  Canvas canvas;
  ChartType type = ChartType::kSingleLine;
  std::string title;
  std::string x_label;  // axis column name
  std::string y_label;  // shared unit of the plotted columns, if any
  Rect plot;
  Rect title_box;
  Rect legend_box;  // zero size for single-series charts
  std::vector<std::string> columns;
  size_t row_count = 0;
  std::vector<double> x_centers;  // per row, 0-based index
  double band_width = 0;
  LinearScale y;
  double baseline_y = 0;  // pixel of value 0
  std::vector<ChartElement> elements;
  std::vector<Tick> x_ticks;
  std::vector<Tick> y_ticks;
  // Series colors before and after styling. Styling always starts from
  // base_colors, which keeps it idempotent.
  std::vector<std::string> base_colors;
  std::vector<std::string> colors;
  std::string axis_color = "#333333";
  std::string grid_color = "#e6e6e6";
  std::string background = "#ffffff";
  double line_width = 2.0;

  const ChartElement* element(std::string_view column, size_t row1) const;
  std::optional<size_t> column_index(std::string_view column) const;
  // Pixel x of a 1-based row; throws TargetNotInLayout when out of range.
  double x_of_row(size_t row1) const;
};

// 1 column -> single, more -> multi. A temporal axis with more than eight
// rows gets lines; a categorical axis or at most eight rows gets bars.
ChartType choose_chart_type(const DataTable& table, const std::vector<std::string>& columns,
                            std::optional<ChartType> requested = std::nullopt);

// Columns may name derived "A + B" columns. The value domain spans
// [min(0, data min), max(0, data max)] padded by 5% on both ends.
BaseChartLayout layout_base_chart(const DataTable& table, const std::vector<std::string>& columns,
                                  ChartType type, Canvas canvas = {});

// Approximate text metrics for the 12 px sans-serif used in charts.
inline constexpr double kFontSize = 12.0;
inline constexpr double kCharWidth = 6.6;
inline constexpr double kLineHeight = 15.0;
double text_width(std::string_view text);

}  // namespace layerchart

#endif  // LAYERCHART_RENDER_LAYOUT_H_
