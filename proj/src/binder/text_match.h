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

#ifndef LAYERCHART_BINDER_TEXT_MATCH_H_
#define LAYERCHART_BINDER_TEXT_MATCH_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "core/table.h"

namespace layerchart {

// Byte range [start, end) of a sentence, including its trailing whitespace
// so that concatenating all sentences reproduces the input.
struct TextRange {
  size_t start = 0;
  size_t end = 0;
};

std::vector<TextRange> split_sentences(std::string_view text);

// Clause around [start, end): the enclosing sentence cut at commas,
// semicolons and the connectives "then", "while", "whereas", "but".
TextRange clause_around(std::string_view text, size_t start, size_t end);

std::string stem_token(std::string_view token);
bool tokens_match(std::string_view a, std::string_view b);
// Column-name tokens used for matching: lowercased, stop words removed.
std::vector<std::string> column_tokens(std::string_view column);

// A place where the text refers to a table column.
struct ColumnMention {
  std::string column;        // column name, or "A + B" for a combined subject
  std::vector<std::string> parts;  // component columns of a combined subject
  size_t start = 0;
  size_t end = 0;
  std::string text;
  double score = 0.0;        // matched column tokens / column tokens
  size_t matched_tokens = 0;
};

// Mentions of numeric columns scoring at least threshold, non-overlapping,
// in text order. Two mentions joined only by "and"/"&"/"both"/... merge into
// one combined mention.
std::vector<ColumnMention> find_column_mentions(std::string_view text, const DataTable& table,
                                                double threshold = 0.5);

// Best mention: highest score, then most matched tokens, then earliest.
const ColumnMention* primary_mention(const std::vector<ColumnMention>& mentions);

struct NumberMention {
  double value = 0.0;       // as written, before scale words
  double scale = 1.0;       // trillion -> 1e12 ...
  bool percent = false;
  bool bps = false;
  bool word = false;        // spelled out ("five")
  bool year_like = false;
  size_t start = 0;         // surface: the literal plus any unit or scale word
  size_t end = 0;
  std::string surface;
};

std::vector<NumberMention> find_numbers(std::string_view text);

// Power of ten named by a unit string ("CNY Billion" -> 1e9), 1 if none.
double unit_scale(std::string_view unit);

// Values the mention may take in a column with the given unit, most
// plausible first.
std::vector<double> candidate_values(const NumberMention& n,
                                     const std::optional<std::string>& column_unit);

bool values_equal(double a, double b);
bool values_close(double a, double b);

}  // namespace layerchart

#endif  // LAYERCHART_BINDER_TEXT_MATCH_H_
