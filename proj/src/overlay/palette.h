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

#ifndef LAYERCHART_OVERLAY_PALETTE_H_
#define LAYERCHART_OVERLAY_PALETTE_H_

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace layerchart {

struct Palette {
  std::vector<std::string> base_colors;
  std::vector<std::string> accents;  // saturated, cycled per record
  double desaturation = 0.25;        // saturation factor for non-highlighted series
  std::string background = "#ffffff";
  std::string axis = "#333333";
  std::string grid = "#e6e6e6";
  double nudge_step = 8;
  double marker_radius = 2;

  bool operator==(const Palette&) const = default;
};

Palette default_palette();
// Missing keys keep their defaults. Throws Error(kValidation) on bad colors
// or a desaturation outside (0, 1].
Palette palette_from_json(const nlohmann::json& doc);
nlohmann::json palette_to_json(const Palette& palette);
Palette load_palette_file(const std::string& path);

struct Rgb {
  double r = 0, g = 0, b = 0;  // [0, 1]
};

Rgb parse_color(std::string_view hex);
std::string format_color(const Rgb& c);
double saturation(const Rgb& c);  // HSL saturation
// Scales HSL saturation by factor, keeping hue and lightness.
std::string desaturate(std::string_view hex, double factor);

}  // namespace layerchart

#endif  // LAYERCHART_OVERLAY_PALETTE_H_
