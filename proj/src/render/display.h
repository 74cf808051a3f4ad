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

#ifndef LAYERCHART_RENDER_DISPLAY_H_
#define LAYERCHART_RENDER_DISPLAY_H_

#include <string>
#include <vector>

#include "overlay/placement.h"
#include "render/layout.h"

namespace layerchart {

// One primitive in paint order. The SVG writer and the rasterizer both draw
// from this list, so the two outputs agree.
struct DrawOp {
  enum class Shape { kRect, kLine, kPolyline, kPolygon, kCircle, kText };

  Shape shape = Shape::kRect;
  std::vector<Point> points;  // line, polyline, polygon
  Rect rect;
  Circle circle;
  std::string text;           // baseline at points[0]
  std::string anchor = "start";
  double font_size = kFontSize;
  bool bold = false;
  std::string stroke = "none";
  std::string fill = "none";
  double stroke_width = 1;
  double opacity = 1;
  bool dashed = false;
  std::string layer;      // background, grid, axes, series, legend, title, overlays
  std::string item;       // overlay id, for ops of the overlay layer
  std::string item_kind;  // overlay kind name
};

inline constexpr const char* kLayers[] = {"background", "grid",  "axes",    "series",
                                          "legend",     "title", "overlays"};

std::vector<DrawOp> display_list(const BaseChartLayout& layout,
                                 const std::vector<PlacedOverlay>& overlays);

}  // namespace layerchart

#endif  // LAYERCHART_RENDER_DISPLAY_H_
