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

#ifndef LAYERCHART_RENDER_RENDER_H_
#define LAYERCHART_RENDER_RENDER_H_

#include <cstdint>
#include <string>
#include <vector>

#include "overlay/placement.h"
#include "render/layout.h"

namespace layerchart {

using Bytes = std::vector<uint8_t>;

// SVG 1.1 document: one group per base layer, then the overlay group. The
// output depends only on the inputs.
std::string render_svg(const BaseChartLayout& layout, const std::vector<PlacedOverlay>& overlays);

// 8-bit RGBA PNG of the same drawing, canvas size times scale.
Bytes render_png(const BaseChartLayout& layout, const std::vector<PlacedOverlay>& overlays,
                 double scale = 1.0);

struct RgbaImage {
  int width = 0;
  int height = 0;
  std::vector<uint8_t> pixels;  // row-major RGBA
};

RgbaImage decode_png(const Bytes& png);

// GIF89a with one frame per image, each with its own color table, the given
// delay, and an infinite loop. Throws EmptyFrameList or DimensionMismatch.
Bytes encode_gif(const std::vector<RgbaImage>& frames, int frame_duration_ms = 2000);
Bytes export_gif(const std::vector<Bytes>& png_frames, int frame_duration_ms = 2000);

}  // namespace layerchart

#endif  // LAYERCHART_RENDER_RENDER_H_
