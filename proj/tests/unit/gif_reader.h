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

#ifndef LAYERCHART_TESTS_UNIT_GIF_READER_H_
#define LAYERCHART_TESTS_UNIT_GIF_READER_H_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace layerchart::test {

// Minimal GIF reader written against the file format, independent of the
// encoder: frame count, delays, loop flag and decoded RGB pixels.
struct GifInfo {
  int width = 0, height = 0;
  bool loops_forever = false;
  std::vector<int> delays;  // hundredths of a second
  std::vector<std::vector<uint8_t>> rgb;
};

inline std::vector<uint8_t> lzw_decode(const std::vector<uint8_t>& data, int min_size, size_t count) {
  std::vector<std::vector<uint8_t>> table;
  const int clear = 1 << min_size, eoi = clear + 1;
  auto reset = [&] {
    table.assign(static_cast<size_t>(eoi + 1), {});
    for (int i = 0; i < clear; ++i) table[static_cast<size_t>(i)] = {static_cast<uint8_t>(i)};
  };
  reset();
  int width = min_size + 1;
  size_t bit = 0;
  std::vector<uint8_t> out;
  int prev = -1;
  while (bit + static_cast<size_t>(width) <= data.size() * 8) {
    int code = 0;
    for (int i = 0; i < width; ++i, ++bit) code |= ((data[bit / 8] >> (bit % 8)) & 1) << i;
    if (code == clear) {
      reset();
      width = min_size + 1;
      prev = -1;
      continue;
    }
    if (code == eoi) break;
    std::vector<uint8_t> entry;
    if (code < static_cast<int>(table.size())) {
      entry = table[static_cast<size_t>(code)];
      if (prev >= 0) {
        auto e = table[static_cast<size_t>(prev)];
        e.push_back(entry[0]);
        table.push_back(e);
      }
    } else {
      if (prev < 0) throw std::runtime_error("gif: code before any entry");
      entry = table[static_cast<size_t>(prev)];
      entry.push_back(entry[0]);
      table.push_back(entry);
    }
    out.insert(out.end(), entry.begin(), entry.end());
    prev = code;
    if (table.size() == (1u << width) && width < 12) ++width;
  }
  if (out.size() != count) throw std::runtime_error("gif: frame has the wrong pixel count");
  return out;
}

inline GifInfo read_gif(const std::vector<uint8_t>& b) {
  GifInfo g;
  if (b.size() <= 13 || std::string(b.begin(), b.begin() + 6) != "GIF89a") {
    throw std::runtime_error("gif: bad header");
  }
  auto u16 = [&](size_t i) { return b[i] | (b[i + 1] << 8); };
  g.width = u16(6);
  g.height = u16(8);
  size_t p = 13;
  if (b[10] & 0x80) p += 3u * (1u << ((b[10] & 7) + 1));
  int pending_delay = -1;
  while (p < b.size()) {
    uint8_t tag = b[p++];
    if (tag == 0x3B) break;
    if (tag == 0x21) {
      uint8_t label = b[p++];
      std::vector<uint8_t> body;
      while (b[p]) {
        body.insert(body.end(), b.begin() + static_cast<long>(p + 1), b.begin() + static_cast<long>(p + 1 + b[p]));
        p += 1 + b[p];
      }
      ++p;
      if (label == 0xF9) pending_delay = body[1] | (body[2] << 8);
      if (label == 0xFF && std::string(body.begin(), body.begin() + 11) == "NETSCAPE2.0") {
        g.loops_forever = body[11] == 1 && body[12] == 0 && body[13] == 0;
      }
      continue;
    }
    if (tag != 0x2C) throw std::runtime_error("gif: unexpected block");
    int w = u16(p + 4), h = u16(p + 6);
    uint8_t flags = b[p + 8];
    p += 9;
    if (!(flags & 0x80)) throw std::runtime_error("gif: frame without a local color table");
    size_t ncolors = 1u << ((flags & 7) + 1);
    std::vector<uint8_t> pal(b.begin() + static_cast<long>(p), b.begin() + static_cast<long>(p + 3 * ncolors));
    p += 3 * ncolors;
    int min_size = b[p++];
    std::vector<uint8_t> data;
    while (b[p]) {
      data.insert(data.end(), b.begin() + static_cast<long>(p + 1), b.begin() + static_cast<long>(p + 1 + b[p]));
      p += 1 + b[p];
    }
    ++p;
    auto idx = lzw_decode(data, min_size, static_cast<size_t>(w) * h);
    std::vector<uint8_t> rgb;
    for (uint8_t i : idx) rgb.insert(rgb.end(), pal.begin() + 3 * i, pal.begin() + 3 * i + 3);
    g.rgb.push_back(std::move(rgb));
    g.delays.push_back(pending_delay);
    pending_delay = -1;
  }
  return g;
}

}  // namespace layerchart::test

#endif  // LAYERCHART_TESTS_UNIT_GIF_READER_H_
