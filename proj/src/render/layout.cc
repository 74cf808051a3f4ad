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

#include "render/layout.h"

#include <algorithm>
#include <cmath>

#include "core/error.h"
#include "core/util.h"

namespace layerchart {

namespace {

constexpr double kMarginLeft = 52;
constexpr double kMarginRight = 16;
constexpr double kMarginTop = 34;
constexpr double kMarginBottom = 40;
constexpr double kBandGap = 0.2;

// 1, 2 or 5 times a power of ten, giving about `target` steps.
double nice_step(double span, int target) {
  double raw = span / target;
  double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double n = raw / mag;
  double step = n < 1.5 ? 1 : n < 3.5 ? 2 : n < 7.5 ? 5 : 10;
  return step * mag;
}

}  // namespace

const char* chart_type_name(ChartType type) {
  switch (type) {
    case ChartType::kSingleLine:
      return "single_line";
    case ChartType::kMultiLine:
      return "multi_line";
    case ChartType::kSingleBar:
      return "single_bar";
    case ChartType::kMultiBar:
      return "multi_bar";
  }
  return "single_line";
}

std::optional<ChartType> parse_chart_type(std::string_view name) {
  for (ChartType t : {ChartType::kSingleLine, ChartType::kMultiLine, ChartType::kSingleBar,
                      ChartType::kMultiBar}) {
    if (name == chart_type_name(t)) return t;
  }
  return std::nullopt;
}

bool is_bar(ChartType type) { return type == ChartType::kSingleBar || type == ChartType::kMultiBar; }

bool Rect::intersects(const Rect& o) const {
  return x < o.right() && o.x < right() && y < o.bottom() && o.y < bottom();
}

bool Rect::contains(const Rect& o, double eps) const {
  return o.x >= x - eps && o.y >= y - eps && o.right() <= right() + eps &&
         o.bottom() <= bottom() + eps;
}

bool Rect::contains(Point p, double eps) const {
  return p.x >= x - eps && p.y >= y - eps && p.x <= right() + eps && p.y <= bottom() + eps;
}

const ChartElement* BaseChartLayout::element(std::string_view column, size_t row1) const {
  for (const auto& e : elements) {
    if (e.row == row1 && e.column == column) return &e;
  }
  return nullptr;
}

std::optional<size_t> BaseChartLayout::column_index(std::string_view column) const {
  for (size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == column) return i;
  }
  return std::nullopt;
}

double BaseChartLayout::x_of_row(size_t row1) const {
  if (row1 < 1 || row1 > x_centers.size()) {
    throw Error(ErrorCode::kTargetNotInLayout, "row " + std::to_string(row1) + " is not in the chart");
  }
  return x_centers[row1 - 1];
}

double text_width(std::string_view text) { return kCharWidth * static_cast<double>(text.size()); }

ChartType choose_chart_type(const DataTable& table, const std::vector<std::string>& columns,
                            std::optional<ChartType> requested) {
  size_t numeric = 0;
  for (const auto& c : columns) {
    auto idx = table.column_index(c);
    if (idx ? table.columns[*idx].kind == ColumnKind::kNumeric : is_resolvable_column(table, c)) {
      ++numeric;
    }
  }
  if (numeric == 0) throw Error(ErrorCode::kNoNumericColumn, "no numeric column to plot");
  if (requested) return *requested;
  auto axis = table.axis_column();
  bool categorical = axis && table.columns[*axis].kind == ColumnKind::kCategorical;
  bool bar = categorical || table.row_count() <= 8;
  if (numeric == 1) return bar ? ChartType::kSingleBar : ChartType::kSingleLine;
  return bar ? ChartType::kMultiBar : ChartType::kMultiLine;
}

BaseChartLayout layout_base_chart(const DataTable& table, const std::vector<std::string>& columns,
                                  ChartType type, Canvas canvas) {
  if (canvas.width < 200 || canvas.height < 150) {
    throw Error(ErrorCode::kCanvasTooSmall, "canvas must be at least 200x150 px, got " +
                                                std::to_string(canvas.width) + "x" +
                                                std::to_string(canvas.height));
  }
  if (columns.empty()) throw Error(ErrorCode::kNoNumericColumn, "no column to plot");
  if (table.row_count() == 0) throw Error(ErrorCode::kValidation, "table has no rows");

  BaseChartLayout L;
  L.canvas = canvas;
  L.type = type;
  L.title = table.name;
  L.columns = columns;
  L.row_count = table.row_count();
  if (auto axis = table.axis_column()) L.x_label = table.columns[*axis].name;

  std::vector<std::vector<std::optional<double>>> series;
  double lo = 0, hi = 0;
  for (const auto& c : columns) {
    if (!is_resolvable_column(table, c)) {
      throw Error(ErrorCode::kTargetNotInLayout, "column '" + c + "' is not in the table");
    }
    series.push_back(resolve_series(table, c));
    auto idx = table.column_index(split_combined_column(c).front());
    std::string unit = idx ? table.columns[*idx].unit.value_or("") : "";
    if (&c == &columns.front()) {
      L.y_label = unit;
    } else if (L.y_label != unit) {
      L.y_label.clear();
    }
    for (const auto& v : series.back()) {
      if (v) {
        lo = std::min(lo, *v);
        hi = std::max(hi, *v);
      }
    }
  }
  if (hi - lo <= 0) hi = lo + 1;
  double pad = 0.05 * (hi - lo);

  double W = canvas.width, Hh = canvas.height;
  double legend_w = 0;
  if (columns.size() > 1) {
    size_t longest = 0;
    for (const auto& c : columns) longest = std::max(longest, c.size());
    legend_w = std::min(0.25 * W, 26 + text_width(std::string(longest, 'x')));
  }
  L.title_box = Rect{kMarginLeft, 8, W - kMarginLeft - kMarginRight, 18};
  L.plot = Rect{kMarginLeft, kMarginTop, W - kMarginLeft - kMarginRight - legend_w,
                Hh - kMarginTop - kMarginBottom};
  if (legend_w > 0) {
    L.legend_box = Rect{L.plot.right() + 8, L.plot.y, legend_w - 8,
                        std::min(L.plot.h, 6 + kLineHeight * columns.size())};
  }
  L.y = LinearScale{lo - pad, hi + pad, L.plot.bottom(), L.plot.y};
  L.baseline_y = L.y.map(0);

  size_t n = table.row_count();
  L.band_width = L.plot.w / static_cast<double>(n);
  for (size_t i = 0; i < n; ++i) {
    L.x_centers.push_back(L.plot.x + L.band_width * (static_cast<double>(i) + 0.5));
    L.x_ticks.push_back(Tick{L.x_centers.back(), table.row_label(i + 1)});
  }

  double step = nice_step(hi - lo, 5);
  for (double t = std::ceil((lo - pad) / step) * step; t <= hi + pad + 1e-9 * step; t += step) {
    double v = std::abs(t) < 1e-9 * step ? 0.0 : t;
    L.y_ticks.push_back(Tick{L.y.map(v), format_number(v)});
  }

  bool bars = is_bar(type);
  double inner = L.band_width * (1 - kBandGap);
  double sub = inner / static_cast<double>(columns.size());
  for (size_t c = 0; c < columns.size(); ++c) {
    for (size_t i = 0; i < n; ++i) {
      const auto& v = series[c][i];
      if (!v) continue;
      ChartElement e;
      e.column = columns[c];
      e.row = i + 1;
      e.value = *v;
      e.bar = bars;
      double vy = L.y.map(*v);
      if (bars) {
        double x0 = L.x_centers[i] - inner / 2 + sub * static_cast<double>(c);
        e.rect = Rect{x0, std::min(vy, L.baseline_y), sub, std::abs(L.baseline_y - vy)};
        e.vertex = Point{x0 + sub / 2, vy};
      } else {
        e.vertex = Point{L.x_centers[i], vy};
      }
      L.elements.push_back(std::move(e));
    }
  }
  return L;
}

}  // namespace layerchart
