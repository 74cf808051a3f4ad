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

#ifndef LAYERCHART_CORE_BINDING_H_
#define LAYERCHART_CORE_BINDING_H_

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "core/table.h"

namespace layerchart {

struct CellRef {
  std::string column;
  size_t row = 1;  // 1-based

  bool operator==(const CellRef&) const = default;
};

// One (subject, trend-or-number) claim. Exactly one of trend / num is set.
struct BindingRecord {
  std::string object_name;
  std::string data_name;
  std::array<CellRef, 2> position;
  std::optional<std::string> trend;
  std::optional<std::vector<double>> num;
  std::string text;

  bool operator==(const BindingRecord&) const = default;
};

struct BindingResult {
  std::vector<BindingRecord> records;
  std::string reason;

  bool operator==(const BindingResult&) const = default;
};

enum class VocabKind { kSubject, kTrend, kNumerical };

const char* vocab_kind_name(VocabKind kind);
std::optional<VocabKind> parse_vocab_kind(std::string_view name);

struct VocabSpan {
  VocabKind kind = VocabKind::kSubject;
  std::string text;
  size_t char_start = 0;
  size_t char_end = 0;

  bool operator==(const VocabSpan&) const = default;
};

// Every record checked against the table; messages are prefixed with the
// 1-based record number. Never throws on parseable input.
std::vector<std::string> validate_binding(const BindingResult& result,
                                          const DataTable& table);

// Wire form: records as fielded objects after "Result:", then the
// "Reason:" string. Absent trend is written "None" and absent num [Null].
std::string serialize_binding(const BindingResult& result);

// Tolerant reader for the wire form. Accepts surrounding prose, code
// fences, Null/null/None spellings, single-pair positions and the stray
// closing braces seen in hand-written documents. Throws
// Error(kMalformedResponse) naming the missing or unreadable field.
BindingResult parse_binding_document(std::string_view raw);

}  // namespace layerchart

#endif  // LAYERCHART_CORE_BINDING_H_
