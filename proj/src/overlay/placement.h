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

#ifndef LAYERCHART_OVERLAY_PLACEMENT_H_
#define LAYERCHART_OVERLAY_PLACEMENT_H_

#include <optional>
#include <string>
#include <vector>

#include "overlay/overlay.h"
#include "overlay/palette.h"
#include "render/layout.h"

namespace layerchart {

struct Circle {
  double cx = 0, cy = 0, r = 0;

  bool operator==(const Circle&) const = default;
};

// Only the members relevant to the overlay kind are set.
struct Geometry {
  std::optional<Circle> circle;          // marker
  std::optional<Rect> rect;              // bounding box, background
  std::vector<Point> polyline;           // trend line; label leader
  std::vector<Point> arrowhead;          // trend line: three triangle corners
  std::optional<Point> line_from;        // overall indicator, special time point
  std::optional<Point> line_to;
  std::optional<Rect> text_box;          // label, description, indicator label
  std::vector<std::string> text_lines;

  bool operator==(const Geometry&) const = default;
};

struct Style {
  std::string stroke = "none";
  std::string fill = "none";
  double stroke_width = 1;
  double opacity = 1;
  bool dashed = false;

  bool operator==(const Style&) const = default;
};

struct PlacedOverlay {
  OverlaySpec spec;
  Geometry geometry;
  Style style;

  bool operator==(const PlacedOverlay&) const = default;
};

struct PlacementConfig {
  double nudge_step = 8;
  double marker_radius = 2;
  double arrow_size = 6;
  double description_width = 220;  // wrap width of description boxes
};

// Resolves every spec against the layout. Text boxes start at the top edge
// of the plot, above their target; a box that overlaps an earlier one or
// leaves the canvas moves down in nudge_step increments. Throws
// TargetNotInLayout for columns or rows the layout lacks, and kLayout when
// a text box finds no free position at all.
std::vector<PlacedOverlay> place_overlays(const std::vector<OverlaySpec>& specs,
                                          const BaseChartLayout& layout,
                                          const PlacementConfig& config = {});

// Every part of the overlay's geometry, for containment checks.
std::vector<Rect> geometry_bounds(const Geometry& g);

// Series targeted by a highlight keep their color; every other series is
// desaturated. Overlay strokes take accents, one per source record in
// order of first appearance. Styling restarts from the base colors, so
// applying it twice changes nothing.
void apply_palette(BaseChartLayout& layout, std::vector<PlacedOverlay>& placed,
                   const Palette& palette);

PlacementConfig placement_config(const Palette& palette);

// Greedy word wrap at the given pixel width; never splits words.
std::vector<std::string> wrap_text(std::string_view text, double max_width);

}  // namespace layerchart

#endif  // LAYERCHART_OVERLAY_PLACEMENT_H_
