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

#include "render/display.h"

#include <algorithm>
#include <cmath>

namespace layerchart {

namespace {

DrawOp rect_op(const std::string& layer, Rect r, std::string fill, std::string stroke = "none") {
  DrawOp op;
  op.shape = DrawOp::Shape::kRect;
  op.layer = layer;
  op.rect = r;
  op.fill = std::move(fill);
  op.stroke = std::move(stroke);
  return op;
}

DrawOp line_op(const std::string& layer, Point a, Point b, std::string stroke, double width) {
  DrawOp op;
  op.shape = DrawOp::Shape::kLine;
  op.layer = layer;
  op.points = {a, b};
  op.stroke = std::move(stroke);
  op.stroke_width = width;
  return op;
}

DrawOp text_op(const std::string& layer, Point at, std::string text, std::string anchor,
               std::string fill) {
  DrawOp op;
  op.shape = DrawOp::Shape::kText;
  op.layer = layer;
  op.points = {at};
  op.text = std::move(text);
  op.anchor = std::move(anchor);
  op.fill = std::move(fill);
  return op;
}

void add_text_box(std::vector<DrawOp>& ops, const PlacedOverlay& p, bool centred,
                  const std::string& box_fill) {
  const Geometry& g = p.geometry;
  const Rect& b = *g.text_box;
  auto box = rect_op("overlays", b, box_fill, p.style.stroke);
  box.opacity = 0.9;
  box.stroke_width = p.style.stroke_width;
  ops.push_back(box);
  for (size_t i = 0; i < g.text_lines.size(); ++i) {
    double baseline = b.y + 13 + kLineHeight * static_cast<double>(i);
    Point at = centred ? Point{b.x + b.w / 2, baseline} : Point{b.x + 4, baseline};
    ops.push_back(text_op("overlays", at, g.text_lines[i], centred ? "middle" : "start", p.style.fill));
  }
}

}  // namespace

std::vector<DrawOp> display_list(const BaseChartLayout& L, const std::vector<PlacedOverlay>& overlays) {
  std::vector<DrawOp> ops;
  const double W = L.canvas.width, H = L.canvas.height;
  auto color_of = [&](size_t i) {
    if (i < L.colors.size()) return L.colors[i];
    if (i < L.base_colors.size()) return L.base_colors[i];
    return std::string("#4e79a7");
  };

  ops.push_back(rect_op("background", Rect{0, 0, W, H}, L.background));

  for (const auto& t : L.y_ticks) {
    ops.push_back(line_op("grid", Point{L.plot.x, t.pos}, Point{L.plot.right(), t.pos}, L.grid_color, 1));
  }

  ops.push_back(line_op("axes", Point{L.plot.x, L.plot.bottom()}, Point{L.plot.right(), L.plot.bottom()},
                        L.axis_color, 1));
  ops.push_back(line_op("axes", Point{L.plot.x, L.plot.y}, Point{L.plot.x, L.plot.bottom()}, L.axis_color, 1));
  if (L.baseline_y > L.plot.y && L.baseline_y < L.plot.bottom()) {
    ops.push_back(line_op("axes", Point{L.plot.x, L.baseline_y}, Point{L.plot.right(), L.baseline_y},
                          L.axis_color, 0.5));
  }
  for (const auto& t : L.y_ticks) {
    ops.push_back(line_op("axes", Point{L.plot.x - 4, t.pos}, Point{L.plot.x, t.pos}, L.axis_color, 1));
    ops.push_back(text_op("axes", Point{L.plot.x - 6, t.pos + 4}, t.label, "end", L.axis_color));
  }
  double widest = 0;
  for (const auto& t : L.x_ticks) widest = std::max(widest, text_width(t.label) + 6);
  size_t every = L.band_width > 0 ? static_cast<size_t>(std::ceil(widest / L.band_width)) : 1;
  every = std::max<size_t>(every, 1);
  for (size_t i = 0; i < L.x_ticks.size(); ++i) {
    const auto& t = L.x_ticks[i];
    ops.push_back(line_op("axes", Point{t.pos, L.plot.bottom()}, Point{t.pos, L.plot.bottom() + 4},
                          L.axis_color, 1));
    if (i % every == 0) {
      ops.push_back(text_op("axes", Point{t.pos, L.plot.bottom() + 17}, t.label, "middle", L.axis_color));
    }
  }

  if (!L.x_label.empty()) {
    ops.push_back(text_op("axes", Point{L.plot.x + L.plot.w / 2, L.plot.bottom() + 33}, L.x_label, "middle",
                          L.axis_color));
  }
  if (!L.y_label.empty()) {
    ops.push_back(text_op("axes", Point{4, L.plot.y - 8}, L.y_label, "start", L.axis_color));
  }

  for (size_t c = 0; c < L.columns.size(); ++c) {
    std::string color = color_of(c);
    if (is_bar(L.type)) {
      for (const auto& e : L.elements) {
        if (e.column != L.columns[c]) continue;
        auto op = rect_op("series", e.rect, color);
        op.item = e.column;
        ops.push_back(op);
      }
      continue;
    }
    // Nulls split a line into separate runs.
    std::vector<Point> run;
    size_t last_row = 0;
    auto flush = [&] {
      if (run.empty()) return;
      DrawOp op;
      op.layer = "series";
      op.item = L.columns[c];
      op.stroke = color;
      op.stroke_width = L.line_width;
      if (run.size() == 1) {
        op.shape = DrawOp::Shape::kCircle;
        op.circle = Circle{run[0].x, run[0].y, L.line_width};
        op.fill = color;
        op.stroke = "none";
      } else {
        op.shape = DrawOp::Shape::kPolyline;
        op.points = run;
      }
      ops.push_back(op);
      run.clear();
    };
    for (const auto& e : L.elements) {
      if (e.column != L.columns[c]) continue;
      if (!run.empty() && e.row != last_row + 1) flush();
      run.push_back(e.vertex);
      last_row = e.row;
    }
    flush();
  }

  if (L.legend_box.w > 0) {
    for (size_t c = 0; c < L.columns.size(); ++c) {
      double y = L.legend_box.y + 4 + kLineHeight * static_cast<double>(c);
      if (y + 10 > L.legend_box.bottom()) break;
      ops.push_back(rect_op("legend", Rect{L.legend_box.x, y, 10, 10}, color_of(c)));
      ops.push_back(text_op("legend", Point{L.legend_box.x + 14, y + 9}, L.columns[c], "start", L.axis_color));
    }
  }

  if (!L.title.empty()) {
    auto t = text_op("title", Point{L.title_box.x + L.title_box.w / 2, L.title_box.y + 13}, L.title,
                     "middle", L.axis_color);
    t.bold = true;
    t.font_size = 14;
    ops.push_back(t);
  }

  for (const auto& p : overlays) {
    size_t first = ops.size();
    const Geometry& g = p.geometry;
    switch (p.spec.kind) {
      case OverlayKind::kHighlight:
        break;
      case OverlayKind::kBoundingBox: {
        auto op = rect_op("overlays", *g.rect, "none", p.style.stroke);
        op.stroke_width = p.style.stroke_width;
        ops.push_back(op);
        break;
      }
      case OverlayKind::kBackground: {
        auto op = rect_op("overlays", *g.rect, p.style.fill);
        op.opacity = p.style.opacity;
        ops.push_back(op);
        break;
      }
      case OverlayKind::kMarker: {
        DrawOp op;
        op.shape = DrawOp::Shape::kCircle;
        op.layer = "overlays";
        op.circle = *g.circle;
        op.fill = p.style.fill;
        op.stroke = p.style.stroke;
        op.stroke_width = p.style.stroke_width;
        ops.push_back(op);
        break;
      }
      case OverlayKind::kLabel:
        if (g.polyline.size() == 2) {
          ops.push_back(line_op("overlays", g.polyline[0], g.polyline[1], p.style.stroke, 0.75));
        }
        add_text_box(ops, p, true, L.background);
        break;
      case OverlayKind::kDescription:
        add_text_box(ops, p, false, L.background);
        break;
      case OverlayKind::kTrendLine: {
        ops.push_back(line_op("overlays", g.polyline[0], g.polyline[1], p.style.stroke, p.style.stroke_width));
        DrawOp head;
        head.shape = DrawOp::Shape::kPolygon;
        head.layer = "overlays";
        head.points = g.arrowhead;
        head.fill = p.style.fill;
        ops.push_back(head);
        break;
      }
      case OverlayKind::kOverallIndicator:
        ops.push_back(line_op("overlays", *g.line_from, *g.line_to, p.style.stroke, p.style.stroke_width));
        add_text_box(ops, p, true, L.background);
        break;
      case OverlayKind::kSpecialTimePoint: {
        auto op = line_op("overlays", *g.line_from, *g.line_to, p.style.stroke, p.style.stroke_width);
        op.dashed = true;
        ops.push_back(op);
        break;
      }
    }
    for (size_t i = first; i < ops.size(); ++i) {
      ops[i].item = p.spec.id;
      ops[i].item_kind = overlay_kind_name(p.spec.kind);
    }
  }
  return ops;
}

}  // namespace layerchart
