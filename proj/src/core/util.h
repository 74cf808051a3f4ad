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

#ifndef LAYERCHART_CORE_UTIL_H_
#define LAYERCHART_CORE_UTIL_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace layerchart {

// Shortest decimal text that reads back to the same double ("669", "3.05").
std::string format_number(double value);

// Strict full-string number parse; accepts "1,234.5" style grouping.
std::optional<double> parse_number(std::string_view text);

std::string to_lower(std::string_view text);
std::string_view trim(std::string_view text);
std::vector<std::string> split(std::string_view text, char sep);
bool iequals(std::string_view a, std::string_view b);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view data);
void append_file(const std::string& path, std::string_view data);
bool file_exists(const std::string& path);

uint64_t fnv1a64(std::string_view data);
std::string hex64(uint64_t value);

// Current UTC time as ISO-8601 with millisecond precision.
std::string utc_timestamp();

}  // namespace layerchart

#endif  // LAYERCHART_CORE_UTIL_H_
