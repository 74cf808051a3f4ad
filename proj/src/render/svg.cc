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

#include <cmath>
#include <cstdio>
#include <sstream>

#include "render/display.h"
#include "render/render.h"

namespace layerchart {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  std::string s = buf;
  while (s.back() == '0') s.pop_back();
  if (s.back() == '.') s.pop_back();
  if (s == "-0") s = "0";
  return s;
}

std::string esc(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

std::string paint(const DrawOp& op) {
  std::string s = " fill=\"" + op.fill + "\" stroke=\"" + op.stroke + "\"";
  if (op.stroke != "none") s += " stroke-width=\"" + num(op.stroke_width) + "\"";
  if (op.opacity < 1) s += " opacity=\"" + num(op.opacity) + "\"";
  if (op.dashed) s += " stroke-dasharray=\"6 4\"";
  return s;
}

std::string points_attr(const std::vector<Point>& pts) {
  std::string s;
  for (size_t i = 0; i < pts.size(); ++i) {
    if (i) s += ' ';
    s += num(pts[i].x) + "," + num(pts[i].y);
  }
  return s;
}

void write_op(std::ostringstream& out, const DrawOp& op, const char* indent) {
  out << indent;
  switch (op.shape) {
    case DrawOp::Shape::kRect:
      out << "<rect x=\"" << num(op.rect.x) << "\" y=\"" << num(op.rect.y) << "\" width=\""
          << num(op.rect.w) << "\" height=\"" << num(op.rect.h) << "\"" << paint(op) << "/>";
      break;
    case DrawOp::Shape::kLine:
      out << "<line x1=\"" << num(op.points[0].x) << "\" y1=\"" << num(op.points[0].y) << "\" x2=\""
          << num(op.points[1].x) << "\" y2=\"" << num(op.points[1].y) << "\"" << paint(op) << "/>";
      break;
    case DrawOp::Shape::kPolyline:
      out << "<polyline points=\"" << points_attr(op.points) << "\"" << paint(op)
          << " stroke-linejoin=\"round\"/>";
      break;
    case DrawOp::Shape::kPolygon:
      out << "<polygon points=\"" << points_attr(op.points) << "\"" << paint(op) << "/>";
      break;
    case DrawOp::Shape::kCircle:
      out << "<circle cx=\"" << num(op.circle.cx) << "\" cy=\"" << num(op.circle.cy) << "\" r=\""
          << num(op.circle.r) << "\"" << paint(op) << "/>";
      break;
    case DrawOp::Shape::kText:
      out << "<text x=\"" << num(op.points[0].x) << "\" y=\"" << num(op.points[0].y)
          << "\" font-size=\"" << num(op.font_size) << "\"";
      if (op.anchor != "start") out << " text-anchor=\"" << op.anchor << "\"";
      if (op.bold) out << " font-weight=\"bold\"";
      out << " fill=\"" << op.fill << "\">" << esc(op.text) << "</text>";
      break;
  }
  out << "\n";
}

}  // namespace

std::string render_svg(const BaseChartLayout& layout, const std::vector<PlacedOverlay>& overlays) {
  auto ops = display_list(layout, overlays);
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << layout.canvas.width
      << "\" height=\"" << layout.canvas.height << "\" viewBox=\"0 0 " << layout.canvas.width << " "
      << layout.canvas.height << "\" font-family=\"Helvetica, Arial, sans-serif\">\n";
  for (const char* layer : kLayers) {
    std::string name = layer;
    out << "  <g id=\"" << name << "\">\n";
    std::string open_item;
    for (const auto& op : ops) {
      if (op.layer != name) continue;
      if (name == "overlays" && op.item != open_item) {
        if (!open_item.empty()) out << "    </g>\n";
        out << "    <g class=\"overlay " << op.item_kind << "\" data-overlay-id=\"" << esc(op.item)
            << "\">\n";
        open_item = op.item;
      }
      write_op(out, op, name == "overlays" ? "      " : "    ");
    }
    if (!open_item.empty()) out << "    </g>\n";
    out << "  </g>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace layerchart
