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

#include "overlay/palette.h"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "core/error.h"
#include "core/util.h"
#include "layerchart_data/palette_json.h"

namespace layerchart {

namespace {

int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

void check_color(const std::string& c) { parse_color(c); }

struct Hsl {
  double h = 0, s = 0, l = 0;
};

Hsl to_hsl(const Rgb& c) {
  double mx = std::max({c.r, c.g, c.b}), mn = std::min({c.r, c.g, c.b});
  Hsl out;
  out.l = (mx + mn) / 2;
  double d = mx - mn;
  if (d <= 0) return out;
  out.s = out.l > 0.5 ? d / (2 - mx - mn) : d / (mx + mn);
  if (mx == c.r) {
    out.h = (c.g - c.b) / d + (c.g < c.b ? 6 : 0);
  } else if (mx == c.g) {
    out.h = (c.b - c.r) / d + 2;
  } else {
    out.h = (c.r - c.g) / d + 4;
  }
  out.h /= 6;
  return out;
}

double hue_channel(double p, double q, double t) {
  if (t < 0) t += 1;
  if (t > 1) t -= 1;
  if (t < 1.0 / 6) return p + (q - p) * 6 * t;
  if (t < 0.5) return q;
  if (t < 2.0 / 3) return p + (q - p) * (2.0 / 3 - t) * 6;
  return p;
}

Rgb from_hsl(const Hsl& c) {
  if (c.s <= 0) return Rgb{c.l, c.l, c.l};
  double q = c.l < 0.5 ? c.l * (1 + c.s) : c.l + c.s - c.l * c.s;
  double p = 2 * c.l - q;
  return Rgb{hue_channel(p, q, c.h + 1.0 / 3), hue_channel(p, q, c.h), hue_channel(p, q, c.h - 1.0 / 3)};
}

}  // namespace

Rgb parse_color(std::string_view hex) {
  if (hex.size() != 7 || hex[0] != '#') {
    throw Error(ErrorCode::kValidation, "color must look like #rrggbb: '" + std::string(hex) + "'");
  }
  int v[6];
  for (int i = 0; i < 6; ++i) {
    v[i] = hex_digit(hex[static_cast<size_t>(i) + 1]);
    if (v[i] < 0) throw Error(ErrorCode::kValidation, "bad color '" + std::string(hex) + "'");
  }
  return Rgb{(v[0] * 16 + v[1]) / 255.0, (v[2] * 16 + v[3]) / 255.0, (v[4] * 16 + v[5]) / 255.0};
}

std::string format_color(const Rgb& c) {
  auto ch = [](double x) { return static_cast<int>(std::lround(std::clamp(x, 0.0, 1.0) * 255)); };
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", ch(c.r), ch(c.g), ch(c.b));
  return buf;
}

double saturation(const Rgb& c) { return to_hsl(c).s; }

std::string desaturate(std::string_view hex, double factor) {
  Hsl h = to_hsl(parse_color(hex));
  h.s *= factor;
  return format_color(from_hsl(h));
}

Palette palette_from_json(const nlohmann::json& j) {
  Palette p;
  try {
    if (!j.is_object()) throw Error(ErrorCode::kValidation, "palette must be an object");
    p.base_colors = j.value("base_colors", std::vector<std::string>{"#4e79a7"});
    p.accents = j.value("accents", std::vector<std::string>{"#d62728", "#000000"});
    p.desaturation = j.value("desaturation", 0.25);
    p.background = j.value("background", p.background);
    p.axis = j.value("axis", p.axis);
    p.grid = j.value("grid", p.grid);
    p.nudge_step = j.value("nudgeStep", 8.0);
    p.marker_radius = j.value("markerRadius", 2.0);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kValidation, std::string("palette: ") + e.what());
  }
  if (!(p.desaturation > 0 && p.desaturation <= 1)) {
    throw Error(ErrorCode::kValidation, "palette: desaturation must lie in (0, 1]");
  }
  if (p.base_colors.empty() || p.accents.empty()) {
    throw Error(ErrorCode::kValidation, "palette: base_colors and accents must be non-empty");
  }
  if (!(p.nudge_step > 0) || !(p.marker_radius > 0)) {
    throw Error(ErrorCode::kValidation, "palette: nudgeStep and markerRadius must be positive");
  }
  for (const auto& c : p.base_colors) check_color(c);
  for (const auto& c : p.accents) check_color(c);
  check_color(p.background);
  check_color(p.axis);
  check_color(p.grid);
  return p;
}

nlohmann::json palette_to_json(const Palette& p) {
  return {{"version", 1},          {"desaturation", p.desaturation}, {"base_colors", p.base_colors},
          {"accents", p.accents},  {"background", p.background},     {"axis", p.axis},
          {"grid", p.grid},        {"nudgeStep", p.nudge_step},      {"markerRadius", p.marker_radius}};
}

Palette default_palette() {
  static const Palette palette = palette_from_json(nlohmann::json::parse(kDefaultPaletteJson));
  return palette;
}

Palette load_palette_file(const std::string& path) {
  try {
    return palette_from_json(nlohmann::json::parse(read_file(path)));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, path + ": " + e.what());
  }
}

}  // namespace layerchart
