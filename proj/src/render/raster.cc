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

#include <algorithm>
#include <cmath>

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>
#include <opencv2/imgproc.hpp>

#include "core/error.h"
#include "overlay/palette.h"
#include "render/display.h"
#include "render/render.h"

namespace layerchart {

namespace {

constexpr int kShift = 4;  // sub-pixel bits for OpenCV drawing
constexpr double kFix = 1 << kShift;

cv::Scalar bgra(const std::string& hex) {
  Rgb c = parse_color(hex);
  return cv::Scalar(std::lround(c.b * 255), std::lround(c.g * 255), std::lround(c.r * 255), 255);
}

cv::Point fx(Point p, double s) {
  return cv::Point(static_cast<int>(std::lround(p.x * s * kFix)),
                   static_cast<int>(std::lround(p.y * s * kFix)));
}

int thick(double w, double s) { return std::max(1, static_cast<int>(std::lround(w * s))); }

void dashed_line(cv::Mat& m, Point a, Point b, const cv::Scalar& c, int t, double s) {
  double len = std::hypot(b.x - a.x, b.y - a.y);
  if (len <= 0) return;
  double ux = (b.x - a.x) / len, uy = (b.y - a.y) / len;
  for (double d = 0; d < len; d += 10) {
    double e = std::min(d + 6, len);
    cv::line(m, fx(Point{a.x + ux * d, a.y + uy * d}, s), fx(Point{a.x + ux * e, a.y + uy * e}, s), c, t,
             cv::LINE_AA, kShift);
  }
}

void draw(cv::Mat& m, const DrawOp& op, double s) {
  bool has_fill = op.fill != "none";
  bool has_stroke = op.stroke != "none";
  switch (op.shape) {
    case DrawOp::Shape::kRect: {
      Point a{op.rect.x, op.rect.y}, b{op.rect.right(), op.rect.bottom()};
      if (has_fill) cv::rectangle(m, fx(a, s), fx(b, s), bgra(op.fill), cv::FILLED, cv::LINE_8, kShift);
      if (has_stroke) {
        cv::rectangle(m, fx(a, s), fx(b, s), bgra(op.stroke), thick(op.stroke_width, s), cv::LINE_AA, kShift);
      }
      break;
    }
    case DrawOp::Shape::kLine:
      if (!has_stroke) break;
      if (op.dashed) {
        dashed_line(m, op.points[0], op.points[1], bgra(op.stroke), thick(op.stroke_width, s), s);
      } else {
        cv::line(m, fx(op.points[0], s), fx(op.points[1], s), bgra(op.stroke), thick(op.stroke_width, s),
                 cv::LINE_AA, kShift);
      }
      break;
    case DrawOp::Shape::kPolyline:
    case DrawOp::Shape::kPolygon: {
      std::vector<cv::Point> pts;
      for (const auto& p : op.points) pts.push_back(fx(p, s));
      bool closed = op.shape == DrawOp::Shape::kPolygon;
      if (closed && has_fill) cv::fillPoly(m, std::vector<std::vector<cv::Point>>{pts}, bgra(op.fill), cv::LINE_AA, kShift);
      if (has_stroke) {
        cv::polylines(m, std::vector<std::vector<cv::Point>>{pts}, closed, bgra(op.stroke),
                      thick(op.stroke_width, s), cv::LINE_AA, kShift);
      }
      break;
    }
    case DrawOp::Shape::kCircle: {
      cv::Point c = fx(Point{op.circle.cx, op.circle.cy}, s);
      int r = static_cast<int>(std::lround(op.circle.r * s * kFix));
      if (has_fill) cv::circle(m, c, r, bgra(op.fill), cv::FILLED, cv::LINE_AA, kShift);
      if (has_stroke) cv::circle(m, c, r, bgra(op.stroke), thick(op.stroke_width, s), cv::LINE_AA, kShift);
      break;
    }
    case DrawOp::Shape::kText: {
      if (op.text.empty() || !has_fill) break;
      double font_scale = op.font_size * s / 30.0;
      int t = op.bold ? 2 : 1;
      int base = 0;
      cv::Size sz = cv::getTextSize(op.text, cv::FONT_HERSHEY_SIMPLEX, font_scale, t, &base);
      double x = op.points[0].x * s;
      if (op.anchor == "middle") x -= sz.width / 2.0;
      if (op.anchor == "end") x -= sz.width;
      cv::putText(m, op.text, cv::Point(static_cast<int>(std::lround(x)), static_cast<int>(std::lround(op.points[0].y * s))),
                  cv::FONT_HERSHEY_SIMPLEX, font_scale, bgra(op.fill), t, cv::LINE_AA);
      break;
    }
  }
}

}  // namespace

Bytes render_png(const BaseChartLayout& layout, const std::vector<PlacedOverlay>& overlays, double scale) {
  if (!(scale > 0) || scale > 8) throw Error(ErrorCode::kInvalidArgument, "scale must lie in (0, 8]");
  int w = static_cast<int>(std::lround(layout.canvas.width * scale));
  int h = static_cast<int>(std::lround(layout.canvas.height * scale));
  cv::Mat m(h, w, CV_8UC4, cv::Scalar(255, 255, 255, 255));
  for (const auto& op : display_list(layout, overlays)) {
    if (op.opacity < 1) {
      cv::Mat layer = m.clone();
      draw(layer, op, scale);
      cv::addWeighted(layer, op.opacity, m, 1 - op.opacity, 0, m);
    } else {
      draw(m, op, scale);
    }
  }
  std::vector<uint8_t> out;
  if (!cv::imencode(".png", m, out)) throw Error(ErrorCode::kIo, "PNG encoding failed");
  return out;
}

RgbaImage decode_png(const Bytes& png) {
  cv::Mat m = cv::imdecode(png, cv::IMREAD_UNCHANGED);
  if (m.empty()) throw Error(ErrorCode::kParse, "not a decodable PNG");
  cv::Mat rgba;
  if (m.channels() == 4) {
    cv::cvtColor(m, rgba, cv::COLOR_BGRA2RGBA);
  } else if (m.channels() == 3) {
    cv::cvtColor(m, rgba, cv::COLOR_BGR2RGBA);
  } else {
    cv::cvtColor(m, rgba, cv::COLOR_GRAY2RGBA);
  }
  if (rgba.depth() != CV_8U) rgba.convertTo(rgba, CV_8U, 1.0 / 257);
  RgbaImage img;
  img.width = rgba.cols;
  img.height = rgba.rows;
  img.pixels.assign(rgba.data, rgba.data + rgba.total() * 4);
  return img;
}

}  // namespace layerchart
