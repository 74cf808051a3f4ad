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
#include <array>
#include <cmath>
#include <unordered_map>

#include "core/error.h"
#include "render/render.h"

namespace layerchart {

namespace {

using Color = uint32_t;  // 0x00RRGGBB

Color pack(uint8_t r, uint8_t g, uint8_t b) {
  return (static_cast<Color>(r) << 16) | (static_cast<Color>(g) << 8) | b;
}
int ch(Color c, int i) { return static_cast<int>((c >> (16 - 8 * i)) & 0xff); }

// Pixels composited over white.
std::vector<Color> flatten(const RgbaImage& img) {
  std::vector<Color> out(static_cast<size_t>(img.width) * img.height);
  for (size_t i = 0; i < out.size(); ++i) {
    const uint8_t* p = &img.pixels[i * 4];
    int a = p[3];
    auto over = [a](int v) { return static_cast<uint8_t>((v * a + 255 * (255 - a) + 127) / 255); };
    out[i] = pack(over(p[0]), over(p[1]), over(p[2]));
  }
  return out;
}

struct Box {
  std::vector<std::pair<Color, size_t>> colors;
  int range(int c) const {
    int lo = 255, hi = 0;
    for (const auto& [col, n] : colors) {
      lo = std::min(lo, ch(col, c));
      hi = std::max(hi, ch(col, c));
    }
    return hi - lo;
  }
};

// Median cut over the color histogram, at most 256 entries.
std::vector<Color> build_palette(const std::vector<Color>& pixels) {
  std::unordered_map<Color, size_t> hist;
  for (Color c : pixels) ++hist[c];
  std::vector<std::pair<Color, size_t>> all(hist.begin(), hist.end());
  std::sort(all.begin(), all.end());
  if (all.size() <= 256) {
    std::vector<Color> pal;
    for (const auto& [c, n] : all) pal.push_back(c);
    return pal;
  }
  std::vector<Box> boxes{Box{all}};
  while (boxes.size() < 256) {
    size_t best = boxes.size();
    int best_range = 0, best_ch = 0;
    for (size_t i = 0; i < boxes.size(); ++i) {
      if (boxes[i].colors.size() < 2) continue;
      for (int c = 0; c < 3; ++c) {
        int r = boxes[i].range(c);
        if (r > best_range) {
          best_range = r;
          best = i;
          best_ch = c;
        }
      }
    }
    if (best == boxes.size()) break;
    auto& cs = boxes[best].colors;
    std::sort(cs.begin(), cs.end(), [best_ch](const auto& a, const auto& b) {
      int va = ch(a.first, best_ch), vb = ch(b.first, best_ch);
      return va != vb ? va < vb : a.first < b.first;
    });
    size_t total = 0;
    for (const auto& e : cs) total += e.second;
    size_t acc = 0, cut = 1;
    for (size_t i = 0; i + 1 < cs.size(); ++i) {
      acc += cs[i].second;
      cut = i + 1;
      if (acc * 2 >= total) break;
    }
    Box hi{{cs.begin() + static_cast<long>(cut), cs.end()}};
    cs.resize(cut);
    boxes.push_back(std::move(hi));
  }
  std::vector<Color> pal;
  for (const auto& b : boxes) {
    double sum[3] = {0, 0, 0}, n = 0;
    for (const auto& [c, k] : b.colors) {
      for (int i = 0; i < 3; ++i) sum[i] += static_cast<double>(ch(c, i)) * static_cast<double>(k);
      n += static_cast<double>(k);
    }
    auto avg = [&](int i) { return static_cast<uint8_t>(std::lround(sum[i] / n)); };
    pal.push_back(pack(avg(0), avg(1), avg(2)));
  }
  return pal;
}

std::vector<uint8_t> index_pixels(const std::vector<Color>& pixels, const std::vector<Color>& pal) {
  std::unordered_map<Color, uint8_t> cache;
  std::vector<uint8_t> out(pixels.size());
  for (size_t i = 0; i < pixels.size(); ++i) {
    Color c = pixels[i];
    auto it = cache.find(c);
    if (it == cache.end()) {
      int best = 0;
      long best_d = -1;
      for (size_t k = 0; k < pal.size(); ++k) {
        long d = 0;
        for (int j = 0; j < 3; ++j) {
          long e = ch(c, j) - ch(pal[k], j);
          d += e * e;
        }
        if (best_d < 0 || d < best_d) {
          best_d = d;
          best = static_cast<int>(k);
        }
      }
      it = cache.emplace(c, static_cast<uint8_t>(best)).first;
    }
    out[i] = it->second;
  }
  return out;
}

class BitWriter {
 public:
  void put(uint32_t code, int width) {
    acc_ |= static_cast<uint64_t>(code) << nbits_;
    nbits_ += width;
    while (nbits_ >= 8) {
      bytes.push_back(static_cast<uint8_t>(acc_ & 0xff));
      acc_ >>= 8;
      nbits_ -= 8;
    }
  }
  void flush() {
    if (nbits_ > 0) bytes.push_back(static_cast<uint8_t>(acc_ & 0xff));
    acc_ = 0;
    nbits_ = 0;
  }
  std::vector<uint8_t> bytes;

 private:
  uint64_t acc_ = 0;
  int nbits_ = 0;
};

std::vector<uint8_t> lzw(const std::vector<uint8_t>& idx, int min_size) {
  const uint32_t clear = 1u << min_size, eoi = clear + 1;
  std::unordered_map<uint32_t, uint32_t> dict;
  uint32_t next = eoi + 1;
  int width = min_size + 1;
  BitWriter w;
  w.put(clear, width);
  uint32_t prefix = idx[0];
  for (size_t i = 1; i < idx.size(); ++i) {
    uint32_t key = (prefix << 8) | idx[i];
    auto it = dict.find(key);
    if (it != dict.end()) {
      prefix = it->second;
      continue;
    }
    w.put(prefix, width);
    if (next < 4096) {
      dict.emplace(key, next++);
      if (next > (1u << width) && width < 12) ++width;
    } else {
      w.put(clear, width);
      dict.clear();
      next = eoi + 1;
      width = min_size + 1;
    }
    prefix = idx[i];
  }
  w.put(prefix, width);
  w.put(eoi, width);
  w.flush();
  return std::move(w.bytes);
}

void put16(Bytes& out, int v) {
  out.push_back(static_cast<uint8_t>(v & 0xff));
  out.push_back(static_cast<uint8_t>((v >> 8) & 0xff));
}

}  // namespace

Bytes encode_gif(const std::vector<RgbaImage>& frames, int frame_duration_ms) {
  if (frames.empty()) throw Error(ErrorCode::kEmptyFrameList, "no frames to encode");
  const int w = frames[0].width, h = frames[0].height;
  if (w <= 0 || h <= 0 || w > 65535 || h > 65535) {
    throw Error(ErrorCode::kInvalidArgument, "frame size out of range");
  }
  for (size_t i = 0; i < frames.size(); ++i) {
    if (frames[i].width != w || frames[i].height != h) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "frame " + std::to_string(i + 1) + " is " + std::to_string(frames[i].width) + "x" +
                      std::to_string(frames[i].height) + ", expected " + std::to_string(w) + "x" +
                      std::to_string(h));
    }
    if (frames[i].pixels.size() != static_cast<size_t>(w) * h * 4) {
      throw Error(ErrorCode::kInvalidArgument, "frame " + std::to_string(i + 1) + " has the wrong pixel count");
    }
  }
  if (frame_duration_ms < 0) throw Error(ErrorCode::kInvalidArgument, "negative frame duration");
  const int delay = std::min(65535, static_cast<int>(std::lround(frame_duration_ms / 10.0)));

  Bytes out = {'G', 'I', 'F', '8', '9', 'a'};
  put16(out, w);
  put16(out, h);
  out.insert(out.end(), {0x70, 0x00, 0x00});  // no global table
  static const char kLoop[] = "NETSCAPE2.0";
  out.insert(out.end(), {0x21, 0xFF, 0x0B});
  out.insert(out.end(), kLoop, kLoop + 11);
  out.insert(out.end(), {0x03, 0x01, 0x00, 0x00, 0x00});

  for (const auto& f : frames) {
    auto pixels = flatten(f);
    auto pal = build_palette(pixels);
    int bits = 1;
    while ((1 << bits) < static_cast<int>(pal.size())) ++bits;
    pal.resize(static_cast<size_t>(1) << bits, 0);
    auto idx = index_pixels(pixels, pal);

    out.insert(out.end(), {0x21, 0xF9, 0x04, 0x04});  // disposal: leave in place
    put16(out, delay);
    out.insert(out.end(), {0x00, 0x00});
    out.push_back(0x2C);
    put16(out, 0);
    put16(out, 0);
    put16(out, w);
    put16(out, h);
    out.push_back(static_cast<uint8_t>(0x80 | (bits - 1)));
    for (Color c : pal) {
      for (int i = 0; i < 3; ++i) out.push_back(static_cast<uint8_t>(ch(c, i)));
    }
    int min_size = std::max(2, bits);
    out.push_back(static_cast<uint8_t>(min_size));
    auto data = lzw(idx, min_size);
    for (size_t i = 0; i < data.size(); i += 255) {
      size_t n = std::min<size_t>(255, data.size() - i);
      out.push_back(static_cast<uint8_t>(n));
      out.insert(out.end(), data.begin() + static_cast<long>(i), data.begin() + static_cast<long>(i + n));
    }
    out.push_back(0x00);
  }
  out.push_back(0x3B);
  return out;
}

Bytes export_gif(const std::vector<Bytes>& png_frames, int frame_duration_ms) {
  if (png_frames.empty()) throw Error(ErrorCode::kEmptyFrameList, "no frames to export");
  std::vector<RgbaImage> frames;
  for (const auto& p : png_frames) frames.push_back(decode_png(p));
  return encode_gif(frames, frame_duration_ms);
}

}  // namespace layerchart
