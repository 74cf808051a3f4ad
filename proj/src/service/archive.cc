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

#include "service/archive.h"

#include <cstdio>
#include <cstring>

#include "core/error.h"

namespace layerchart {

namespace {

void put_octal(uint8_t* field, size_t width, uint64_t value) {
  std::snprintf(reinterpret_cast<char*>(field), width, "%0*llo", static_cast<int>(width - 1),
                static_cast<unsigned long long>(value));
}

}  // namespace

Bytes tar_archive(const std::vector<ArchiveFile>& files) {
  Bytes out;
  for (const auto& f : files) {
    if (f.name.empty() || f.name.size() > 100) {
      throw Error(ErrorCode::kInvalidArgument, "archive member name must be 1 to 100 bytes");
    }
    uint8_t h[512] = {};
    std::memcpy(h, f.name.data(), f.name.size());
    put_octal(h + 100, 8, 0644);
    put_octal(h + 108, 8, 0);
    put_octal(h + 116, 8, 0);
    put_octal(h + 124, 12, f.data.size());
    put_octal(h + 136, 12, 0);
    std::memset(h + 148, ' ', 8);
    h[156] = '0';
    std::memcpy(h + 257, "ustar", 6);
    std::memcpy(h + 263, "00", 2);
    unsigned sum = 0;
    for (uint8_t b : h) sum += b;
    std::snprintf(reinterpret_cast<char*>(h + 148), 8, "%06o", sum);
    h[155] = ' ';
    out.insert(out.end(), h, h + 512);
    out.insert(out.end(), f.data.begin(), f.data.end());
    out.resize(out.size() + (512 - f.data.size() % 512) % 512, 0);
  }
  out.resize(out.size() + 1024, 0);
  return out;
}

}  // namespace layerchart
