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

#include "overlay/placement.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "core/error.h"
#include "core/table.h"
#include "core/util.h"

namespace layerchart {

namespace {

constexpr double kLabelHeight = 18;
constexpr double kTextPad = 4;

[[noreturn]] void not_in_layout(const std::string& what) {
  throw Error(ErrorCode::kTargetNotInLayout, what + " is not in the chart");
}

void check_target(const OverlaySpec& s, const BaseChartLayout& L) {
  if (s.target.columns.empty()) not_in_layout("overlay " + s.id + " without a column");
  for (const auto& c : s.target.columns) {
    if (!L.column_index(c)) not_in_layout("column '" + c + "'");
  }
  if (s.target.start_row < 1 || s.target.end_row < s.target.start_row ||
      s.target.end_row > L.row_count) {
    not_in_layout("rows " + std::to_string(s.target.start_row) + "-" +
                  std::to_string(s.target.end_row));
  }
}

// Anchors of the non-null elements of the first target column, in row order.
std::vector<const ChartElement*> span_elements(const OverlaySpec& s, const BaseChartLayout& L) {
  std::vector<const ChartElement*> out;
  for (size_t r = s.target.start_row; r <= s.target.end_row; ++r) {
    if (const auto* e = L.element(s.target.columns.front(), r)) out.push_back(e);
  }
  return out;
}

Point anchor_of(const OverlaySpec& s, const BaseChartLayout& L) {
  const auto* e = L.element(s.target.columns.front(), s.target.start_row);
  if (e) return e->anchor();
  // A null cell: the baseline at the row.
  return Point{L.x_of_row(s.target.start_row), std::clamp(L.baseline_y, L.plot.y, L.plot.bottom())};
}

double band_left(const BaseChartLayout& L, size_t row) { return L.x_of_row(row) - L.band_width / 2; }
double band_right(const BaseChartLayout& L, size_t row) { return L.x_of_row(row) + L.band_width / 2; }

std::string format_stat(double v) { return format_number(std::round(v * 100) / 100); }

class BoxPlacer {
 public:
  BoxPlacer(const BaseChartLayout& L, double step)
      : canvas_{0, 0, static_cast<double>(L.canvas.width), static_cast<double>(L.canvas.height)},
        step_(step) {}

  Rect place(Rect box) {
    box.w = std::min(box.w, canvas_.w);
    box.h = std::min(box.h, canvas_.h);
    box.x = std::clamp(box.x, 0.0, canvas_.w - box.w);
    double y0 = std::clamp(box.y, 0.0, canvas_.h - box.h);
    // Downward from the preferred spot first, then from the top edge, then
    // any column of the canvas.
    for (double y = y0; y + box.h <= canvas_.h + 1e-9; y += step_) {
      if (try_at(box, box.x, y)) return box;
    }
    for (double y = 0; y + box.h <= canvas_.h + 1e-9; y += step_) {
      if (try_at(box, box.x, y)) return box;
    }
    for (double x = 0; x + box.w <= canvas_.w + 1e-9; x += step_) {
      for (double y = 0; y + box.h <= canvas_.h + 1e-9; y += step_) {
        if (try_at(box, x, y)) return box;
      }
    }
    throw Error(ErrorCode::kLayout, "no free position for a text box");
  }

 private:
  bool try_at(Rect& box, double x, double y) {
    Rect r{x, y, box.w, box.h};
    for (const auto& t : taken_) {
      if (t.intersects(r)) return false;
    }
    taken_.push_back(r);
    box = r;
    return true;
  }

  Rect canvas_;
  double step_;
  std::vector<Rect> taken_;
};

void add_leader(Geometry& g, Point anchor, double gap) {
  const Rect& b = *g.text_box;
  double x = std::clamp(anchor.x, b.x, b.right());
  if (anchor.y - gap > b.bottom() + 1) {
    g.polyline = {Point{x, b.bottom()}, Point{x, anchor.y - gap}};
  }
}

}  // namespace

std::vector<std::string> wrap_text(std::string_view text, double max_width) {
  std::vector<std::string> lines;
  std::istringstream in{std::string(text)};
  std::string word, line;
  while (in >> word) {
    std::string candidate = line.empty() ? word : line + " " + word;
    if (!line.empty() && text_width(candidate) > max_width) {
      lines.push_back(line);
      line = word;
    } else {
      line = candidate;
    }
  }
  if (!line.empty()) lines.push_back(line);
  return lines;
}

PlacementConfig placement_config(const Palette& palette) {
  PlacementConfig c;
  c.nudge_step = palette.nudge_step;
  c.marker_radius = palette.marker_radius;
  return c;
}

std::vector<PlacedOverlay> place_overlays(const std::vector<OverlaySpec>& specs,
                                          const BaseChartLayout& L, const PlacementConfig& cfg) {
  std::vector<PlacedOverlay> out;
  BoxPlacer placer(L, cfg.nudge_step);
  const double W = L.canvas.width, H = L.canvas.height;
  for (const auto& spec : specs) {
    check_target(spec, L);
    PlacedOverlay p{spec, {}, {}};
    Geometry& g = p.geometry;
    const size_t a = spec.target.start_row, b = spec.target.end_row;
    switch (spec.kind) {
      case OverlayKind::kHighlight:
        break;
      case OverlayKind::kBoundingBox: {
        double x0 = band_right(L, b), x1 = band_left(L, a), y0 = L.plot.bottom(), y1 = L.plot.y;
        bool any = false;
        for (const auto& c : spec.target.columns) {
          for (size_t r = a; r <= b; ++r) {
            const auto* e = L.element(c, r);
            if (!e) continue;
            any = true;
            Rect er = e->bar ? e->rect : Rect{e->vertex.x, e->vertex.y, 0, 0};
            x0 = std::min(x0, er.x);
            x1 = std::max(x1, er.right());
            y0 = std::min(y0, er.y);
            y1 = std::max(y1, er.bottom());
          }
        }
        if (!any) {
          x0 = band_left(L, a);
          x1 = band_right(L, b);
          y0 = L.plot.y;
          y1 = L.plot.bottom();
        }
        x0 = std::max(L.plot.x, x0 - 4);
        x1 = std::min(L.plot.right(), x1 + 4);
        y0 = std::max(L.plot.y, y0 - 4);
        y1 = std::min(L.plot.bottom(), y1 + 4);
        g.rect = Rect{x0, y0, x1 - x0, y1 - y0};
        break;
      }
      case OverlayKind::kBackground:
        g.rect = Rect{band_left(L, a), L.plot.y, band_right(L, b) - band_left(L, a), L.plot.h};
        break;
      case OverlayKind::kMarker: {
        Point c = anchor_of(spec, L);
        double r = std::min(spec.radius.value_or(cfg.marker_radius), std::min(W, H) / 2);
        g.circle = Circle{std::clamp(c.x, r, W - r), std::clamp(c.y, r, H - r), r};
        break;
      }
      case OverlayKind::kLabel: {
        Point anchor = anchor_of(spec, L);
        std::string text = spec.text.value_or("");
        if (text.empty()) {
          if (const auto* e = L.element(spec.target.columns.front(), a)) text = format_number(e->value);
        }
        g.text_lines = wrap_text(text, W - 2 * kTextPad);
        if (g.text_lines.empty()) g.text_lines.push_back("");
        double w = 0;
        for (const auto& l : g.text_lines) w = std::max(w, text_width(l));
        Rect box{anchor.x - (w + 2 * kTextPad) / 2, L.plot.y + 2, w + 2 * kTextPad,
                 kLabelHeight + kLineHeight * static_cast<double>(g.text_lines.size() - 1)};
        if (spec.position) {
          box.x = spec.position->x;
          box.y = spec.position->y;
        }
        g.text_box = placer.place(box);
        add_leader(g, anchor, cfg.marker_radius + 1);
        break;
      }
      case OverlayKind::kDescription: {
        g.text_lines = wrap_text(spec.text.value_or(""), std::min(cfg.description_width, W - 2 * kTextPad));
        if (g.text_lines.empty()) g.text_lines.push_back("");
        double w = 0;
        for (const auto& l : g.text_lines) w = std::max(w, text_width(l));
        double cx = (L.x_of_row(a) + L.x_of_row(b)) / 2;
        Rect box{cx - (w + 2 * kTextPad) / 2, L.plot.y + 2, w + 2 * kTextPad,
                 kLineHeight * static_cast<double>(g.text_lines.size()) + 2 * kTextPad};
        if (spec.position) {
          box.x = spec.position->x;
          box.y = spec.position->y;
        }
        g.text_box = placer.place(box);
        break;
      }
      case OverlayKind::kTrendLine: {
        auto els = span_elements(spec, L);
        Point p0, p1;
        if (els.empty()) {
          p0 = p1 = anchor_of(spec, L);
        } else {
          p0 = els.front()->anchor();
          p1 = els.back()->anchor();
        }
        g.polyline = {p0, p1};
        double dx = p1.x - p0.x, dy = p1.y - p0.y, len = std::hypot(dx, dy);
        double ux = len > 0 ? dx / len : 1, uy = len > 0 ? dy / len : 0;
        double s = cfg.arrow_size;
        Point base{p1.x - ux * s, p1.y - uy * s};
        g.arrowhead = {p1, Point{base.x - uy * s / 2, base.y + ux * s / 2},
                       Point{base.x + uy * s / 2, base.y - ux * s / 2}};
        break;
      }
      case OverlayKind::kOverallIndicator: {
        Statistic st = spec.statistic.value_or(Statistic{"mean", std::nullopt});
        if (!st.value) {
          std::vector<double> vals;
          for (const auto& e : L.elements) {
            if (e.column == spec.target.columns.front()) vals.push_back(e.value);
          }
          if (vals.empty()) not_in_layout("data of column '" + spec.target.columns.front() + "'");
          if (st.kind == "max") {
            st.value = *std::max_element(vals.begin(), vals.end());
          } else if (st.kind == "min") {
            st.value = *std::min_element(vals.begin(), vals.end());
          } else {
            double sum = 0;
            for (double v : vals) sum += v;
            st.value = sum / static_cast<double>(vals.size());
          }
        }
        p.spec.statistic = st;
        double y = std::clamp(L.y.map(*st.value), L.plot.y, L.plot.bottom());
        g.line_from = Point{L.plot.x, y};
        g.line_to = Point{L.plot.right(), y};
        std::string text = spec.text.value_or(st.kind + " " + format_stat(*st.value));
        g.text_lines = {text};
        double w = text_width(text) + 2 * kTextPad;
        Rect box{W / 2 - w / 2, y - 2 - kLabelHeight, w, kLabelHeight};
        if (spec.position) {
          box.x = spec.position->x;
          box.y = spec.position->y;
        }
        g.text_box = placer.place(box);
        break;
      }
      case OverlayKind::kSpecialTimePoint: {
        double x = L.x_of_row(a);
        g.line_from = Point{x, L.plot.y};
        g.line_to = Point{x, L.plot.bottom()};
        break;
      }
    }
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<Rect> geometry_bounds(const Geometry& g) {
  std::vector<Rect> out;
  auto points = [&](const std::vector<Point>& ps) {
    if (ps.empty()) return;
    double x0 = ps[0].x, x1 = ps[0].x, y0 = ps[0].y, y1 = ps[0].y;
    for (const auto& p : ps) {
      x0 = std::min(x0, p.x);
      x1 = std::max(x1, p.x);
      y0 = std::min(y0, p.y);
      y1 = std::max(y1, p.y);
    }
    out.push_back(Rect{x0, y0, x1 - x0, y1 - y0});
  };
  if (g.circle) out.push_back(Rect{g.circle->cx - g.circle->r, g.circle->cy - g.circle->r, 2 * g.circle->r, 2 * g.circle->r});
  if (g.rect) out.push_back(*g.rect);
  points(g.polyline);
  points(g.arrowhead);
  if (g.line_from && g.line_to) points({*g.line_from, *g.line_to});
  if (g.text_box) out.push_back(*g.text_box);
  return out;
}

void apply_palette(BaseChartLayout& L, std::vector<PlacedOverlay>& placed, const Palette& palette) {
  std::vector<std::string> highlighted;
  for (const auto& p : placed) {
    if (p.spec.kind != OverlayKind::kHighlight) continue;
    for (const auto& c : p.spec.target.columns) {
      highlighted.push_back(c);
      for (const auto& part : split_combined_column(c)) highlighted.push_back(part);
    }
  }
  L.base_colors.clear();
  L.colors.clear();
  for (size_t i = 0; i < L.columns.size(); ++i) {
    const std::string& base = palette.base_colors[i % palette.base_colors.size()];
    L.base_colors.push_back(base);
    bool keep = highlighted.empty() ||
                std::find(highlighted.begin(), highlighted.end(), L.columns[i]) != highlighted.end();
    L.colors.push_back(keep ? base : desaturate(base, palette.desaturation));
  }
  L.axis_color = palette.axis;
  L.grid_color = palette.grid;
  L.background = palette.background;

  std::map<size_t, size_t> rank;  // record index -> accent slot
  size_t next = 0;
  for (auto& p : placed) {
    size_t slot;
    if (p.spec.record) {
      auto it = rank.find(*p.spec.record);
      if (it == rank.end()) it = rank.emplace(*p.spec.record, next++).first;
      slot = it->second;
    } else {
      slot = next++;
    }
    std::string accent = p.spec.color.value_or(palette.accents[slot % palette.accents.size()]);
    Style s;
    switch (p.spec.kind) {
      case OverlayKind::kHighlight:
        break;
      case OverlayKind::kBoundingBox:
        s.stroke = accent;
        s.stroke_width = 2;
        break;
      case OverlayKind::kBackground:
        s.fill = accent;
        s.opacity = 0.12;
        break;
      case OverlayKind::kMarker:
        s.stroke = accent;
        s.fill = accent;
        break;
      case OverlayKind::kLabel:
      case OverlayKind::kDescription:
        s.stroke = accent;
        s.fill = accent;
        s.stroke_width = 0.75;
        break;
      case OverlayKind::kTrendLine:
        s.stroke = accent;
        s.fill = accent;
        s.stroke_width = 2;
        break;
      case OverlayKind::kOverallIndicator:
        s.stroke = accent;
        s.fill = accent;
        s.stroke_width = 1.5;
        break;
      case OverlayKind::kSpecialTimePoint:
        s.stroke = accent;
        s.stroke_width = 1.5;
        s.dashed = true;
        break;
    }
    if (p.spec.stroke_width) s.stroke_width = *p.spec.stroke_width;
    p.style = s;
  }
}

}  // namespace layerchart
