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

#ifndef LAYERCHART_BINDER_SEGMENT_H_
#define LAYERCHART_BINDER_SEGMENT_H_

#include <chrono>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "core/table.h"

namespace layerchart {

class Provider;

// A run of consecutive sentences about one subject. Concatenating all
// narrative texts in order reproduces the article.
struct Narrative {
  std::string id;
  size_t order = 0;
  std::string text;
  std::optional<std::string> subject_hint;
};

std::string narrative_id(size_t order);

// Deterministic segmentation: sentences are assigned the column they
// mention, consecutive sentences with the same subject merge, and sentences
// without one join the narrative before them.
std::vector<Narrative> segment_deterministic(std::string_view article, const DataTable& table);

// Maps verbatim pieces back onto the article; nullopt unless they appear in
// order separated only by whitespace and cover all non-space text.
std::optional<std::vector<Narrative>> align_segments(std::string_view article,
                                                     const std::vector<std::string>& pieces);

// Asks the provider when one is given and falls back to the deterministic
// path on any failure. Throws Error(kEmptyArticle) for blank input.
std::vector<Narrative> segment_narratives(std::string_view article, const DataTable& table,
                                          Provider* provider = nullptr,
                                          std::chrono::milliseconds timeout =
                                              std::chrono::milliseconds(60000));

}  // namespace layerchart

#endif  // LAYERCHART_BINDER_SEGMENT_H_
