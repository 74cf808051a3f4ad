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

#ifndef LAYERCHART_OVERLAY_OVERLAY_H_
#define LAYERCHART_OVERLAY_OVERLAY_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "core/binding.h"
#include "json.hpp"
#include "render/layout.h"
#include "trendlex/lexicon.h"

namespace layerchart {

enum class OverlayKind {
  kHighlight,
  kBoundingBox,
  kBackground,
  kMarker,
  kLabel,
  kDescription,
  kTrendLine,
  kOverallIndicator,
  kSpecialTimePoint,
};

inline constexpr OverlayKind kAllOverlayKinds[] = {
    OverlayKind::kHighlight,   OverlayKind::kBoundingBox,      OverlayKind::kBackground,
    OverlayKind::kMarker,      OverlayKind::kLabel,            OverlayKind::kDescription,
    OverlayKind::kTrendLine,   OverlayKind::kOverallIndicator, OverlayKind::kSpecialTimePoint,
};

const char* overlay_kind_name(OverlayKind kind);
std::optional<OverlayKind> parse_overlay_kind(std::string_view name);
bool is_text_overlay(OverlayKind kind);

struct OverlayTarget {
  std::vector<std::string> columns;
  size_t start_row = 1;  // 1-based, inclusive
  size_t end_row = 1;

  bool operator==(const OverlayTarget&) const = default;
};

struct Statistic {
  std::string kind;  // mean | max | min
  std::optional<double> value;

  bool operator==(const Statistic&) const = default;
};

struct OverlaySpec {
  std::string id;
  OverlayKind kind = OverlayKind::kHighlight;
  OverlayTarget target;
  std::optional<std::string> text;
  std::optional<Statistic> statistic;
  std::optional<size_t> record;  // index of the source record

  // Set by user edits; placement honours them.
  std::optional<Point> position;  // top-left of a text box
  std::optional<double> radius;
  std::optional<double> stroke_width;
  std::optional<std::string> color;

  bool operator==(const OverlaySpec&) const = default;
};

nlohmann::json overlay_spec_to_json(const OverlaySpec& spec);
OverlaySpec overlay_spec_from_json(const nlohmann::json& doc);

// Words in an overlay text, counting numbers as words.
size_t word_count(std::string_view text);
// Labels hold at most three words; descriptions more than three words or a
// full sentence.
bool valid_overlay_text(OverlayKind kind, std::string_view text);

// Vocabulary classes in the default overlay correspondence.
enum class CorrespondenceRow { kSubject, kNumerical, kChangePattern, kSummaryIndicator, kSpecialEvent };

// The overlays each vocabulary class adds on top of the subject highlight
// (the subject row lists the highlight itself).
const std::vector<OverlayKind>& correspondence(CorrespondenceRow row);

// Default overlays for one record. The subject highlight comes first, then
// the overlays of the record's numbers or trend. A record carrying neither
// yields the highlight alone. An unclassified trend is drawn as a change
// pattern.
std::vector<OverlaySpec> overlays_for(const BindingRecord& record,
                                      std::optional<TrendMatch> trend,
                                      std::optional<size_t> record_index = std::nullopt);

// overlays_for over a whole result, classifying trends with the lexicon.
// Highlights repeat per column only once; ids are "o1", "o2", ...
std::vector<OverlaySpec> overlays_for_result(const BindingResult& result, const Lexicon& lexicon);

}  // namespace layerchart

#endif  // LAYERCHART_OVERLAY_OVERLAY_H_
