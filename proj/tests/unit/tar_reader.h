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

#ifndef LAYERCHART_TESTS_UNIT_TAR_READER_H_
#define LAYERCHART_TESTS_UNIT_TAR_READER_H_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace layerchart::test {

struct TarMember {
  std::string name;
  std::vector<uint8_t> data;
};

// Reads a ustar stream and verifies every header checksum.
inline std::vector<TarMember> read_tar(const std::vector<uint8_t>& b) {
  std::vector<TarMember> out;
  size_t p = 0;
  auto octal = [&](size_t at, size_t len) {
    uint64_t v = 0;
    for (size_t i = 0; i < len && b[at + i] >= '0' && b[at + i] <= '7'; ++i) v = v * 8 + (b[at + i] - '0');
    return v;
  };
  while (p + 512 <= b.size()) {
    bool zero = true;
    for (size_t i = 0; i < 512; ++i) zero = zero && b[p + i] == 0;
    if (zero) return out;
    uint64_t sum = 0;
    for (size_t i = 0; i < 512; ++i) sum += (i >= 148 && i < 156) ? ' ' : b[p + i];
    if (sum != octal(p + 148, 8)) throw std::runtime_error("tar: checksum mismatch");
    if (std::string(b.begin() + static_cast<long>(p + 257), b.begin() + static_cast<long>(p + 262)) != "ustar") {
      throw std::runtime_error("tar: not ustar");
    }
    TarMember m;
    for (size_t i = 0; i < 100 && b[p + i]; ++i) m.name.push_back(static_cast<char>(b[p + i]));
    size_t size = octal(p + 124, 12);
    p += 512;
    if (p + size > b.size()) throw std::runtime_error("tar: truncated member");
    m.data.assign(b.begin() + static_cast<long>(p), b.begin() + static_cast<long>(p + size));
    p += (size + 511) / 512 * 512;
    out.push_back(std::move(m));
  }
  throw std::runtime_error("tar: missing end blocks");
}

}  // namespace layerchart::test

#endif  // LAYERCHART_TESTS_UNIT_TAR_READER_H_
