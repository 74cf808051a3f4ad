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

#include "overlay/overlay.h"

#include <cctype>

#include "core/error.h"
#include "core/util.h"

namespace layerchart {

namespace {

OverlaySpec make_spec(OverlayKind kind, OverlayTarget target, std::optional<size_t> record) {
  OverlaySpec s;
  s.kind = kind;
  s.target = std::move(target);
  s.record = record;
  return s;
}

bool ends_sentence(std::string_view text) {
  text = trim(text);
  return !text.empty() && (text.back() == '.' || text.back() == '!' || text.back() == '?');
}

std::string description_text(const BindingRecord& r) {
  std::string text(trim(r.text));
  if (text.empty()) text = r.object_name + " shows " + r.trend.value_or("a change");
  if (!valid_overlay_text(OverlayKind::kDescription, text)) text += ".";
  return text;
}

std::string statistic_kind(std::optional<TrendMatch> trend) {
  if (trend && trend->pattern == PatternId::kGlobalMax) return "max";
  if (trend && trend->pattern == PatternId::kGlobalMin) return "min";
  return "mean";
}

}  // namespace

const char* overlay_kind_name(OverlayKind kind) {
  switch (kind) {
    case OverlayKind::kHighlight:
      return "highlight";
    case OverlayKind::kBoundingBox:
      return "bounding_box";
    case OverlayKind::kBackground:
      return "background";
    case OverlayKind::kMarker:
      return "marker";
    case OverlayKind::kLabel:
      return "label";
    case OverlayKind::kDescription:
      return "description";
    case OverlayKind::kTrendLine:
      return "trend_line";
    case OverlayKind::kOverallIndicator:
      return "overall_indicator";
    case OverlayKind::kSpecialTimePoint:
      return "special_time_point";
  }
  return "highlight";
}

std::optional<OverlayKind> parse_overlay_kind(std::string_view name) {
  for (OverlayKind k : kAllOverlayKinds) {
    if (name == overlay_kind_name(k)) return k;
  }
  return std::nullopt;
}

bool is_text_overlay(OverlayKind kind) {
  return kind == OverlayKind::kLabel || kind == OverlayKind::kDescription;
}

size_t word_count(std::string_view text) {
  size_t n = 0;
  bool in_word = false;
  for (unsigned char c : text) {
    bool space = std::isspace(c) != 0;
    if (!space && !in_word) ++n;
    in_word = !space;
  }
  return n;
}

bool valid_overlay_text(OverlayKind kind, std::string_view text) {
  size_t n = word_count(text);
  if (kind == OverlayKind::kLabel) return n >= 1 && n <= 3;
  if (kind == OverlayKind::kDescription) return n > 3 || (n >= 1 && ends_sentence(text));
  return true;
}

const std::vector<OverlayKind>& correspondence(CorrespondenceRow row) {
  static const std::vector<OverlayKind> kSubject = {OverlayKind::kHighlight};
  static const std::vector<OverlayKind> kNumerical = {OverlayKind::kMarker, OverlayKind::kLabel};
  static const std::vector<OverlayKind> kChange = {OverlayKind::kTrendLine, OverlayKind::kDescription};
  static const std::vector<OverlayKind> kSummary = {OverlayKind::kOverallIndicator};
  static const std::vector<OverlayKind> kEvent = {OverlayKind::kSpecialTimePoint};
  switch (row) {
    case CorrespondenceRow::kSubject:
      return kSubject;
    case CorrespondenceRow::kNumerical:
      return kNumerical;
    case CorrespondenceRow::kChangePattern:
      return kChange;
    case CorrespondenceRow::kSummaryIndicator:
      return kSummary;
    case CorrespondenceRow::kSpecialEvent:
      return kEvent;
  }
  return kSubject;
}

std::vector<OverlaySpec> overlays_for(const BindingRecord& record, std::optional<TrendMatch> trend,
                                      std::optional<size_t> record_index) {
  std::vector<OverlaySpec> out;
  size_t a = record.position[0].row, b = record.position[1].row;
  OverlayTarget span{{record.data_name}, a, b};
  out.push_back(make_spec(OverlayKind::kHighlight, span, record_index));

  if (record.num) {
    const auto& nums = *record.num;
    size_t cells = b >= a ? b - a + 1 : 1;
    for (size_t row = a; row <= b; ++row) {
      out.push_back(make_spec(OverlayKind::kMarker, {{record.data_name}, row, row}, record_index));
    }
    if (nums.size() == cells) {
      for (size_t i = 0; i < cells; ++i) {
        auto s = make_spec(OverlayKind::kLabel, {{record.data_name}, a + i, a + i}, record_index);
        s.text = format_number(nums[i]);
        out.push_back(std::move(s));
      }
    } else if (!nums.empty()) {
      std::string text;
      for (size_t i = 0; i < nums.size() && i < 3; ++i) {
        if (i) text += " ";
        text += format_number(nums[i]);
      }
      auto s = make_spec(OverlayKind::kLabel, {{record.data_name}, b, b}, record_index);
      s.text = text;
      out.push_back(std::move(s));
    }
    return out;
  }
  if (!record.trend) return out;

  TrendKind kind = trend ? trend->kind : TrendKind::kChangePattern;
  switch (kind) {
    case TrendKind::kChangePattern: {
      out.push_back(make_spec(OverlayKind::kTrendLine, span, record_index));
      auto d = make_spec(OverlayKind::kDescription, span, record_index);
      d.text = description_text(record);
      out.push_back(std::move(d));
      break;
    }
    case TrendKind::kSummaryIndicator: {
      auto s = make_spec(OverlayKind::kOverallIndicator, span, record_index);
      s.statistic = Statistic{statistic_kind(trend), std::nullopt};
      out.push_back(std::move(s));
      break;
    }
    case TrendKind::kSpecialEvent:
      out.push_back(make_spec(OverlayKind::kSpecialTimePoint, {{record.data_name}, a, a}, record_index));
      break;
  }
  return out;
}

std::vector<OverlaySpec> overlays_for_result(const BindingResult& result, const Lexicon& lexicon) {
  std::vector<OverlaySpec> out;
  std::vector<std::vector<std::string>> highlighted;
  for (size_t i = 0; i < result.records.size(); ++i) {
    const auto& r = result.records[i];
    std::optional<TrendMatch> trend;
    if (r.trend) trend = lexicon.classify(*r.trend);
    for (auto& s : overlays_for(r, trend, i)) {
      if (s.kind == OverlayKind::kHighlight) {
        bool seen = false;
        for (const auto& h : highlighted) seen = seen || h == s.target.columns;
        if (seen) continue;
        highlighted.push_back(s.target.columns);
      }
      s.id = "o" + std::to_string(out.size() + 1);
      out.push_back(std::move(s));
    }
  }
  return out;
}

nlohmann::json overlay_spec_to_json(const OverlaySpec& s) {
  nlohmann::json j;
  j["id"] = s.id;
  j["kind"] = overlay_kind_name(s.kind);
  j["target"] = {{"columns", s.target.columns},
                 {"startRow", s.target.start_row},
                 {"endRow", s.target.end_row}};
  if (s.text) j["text"] = *s.text;
  if (s.statistic) {
    j["statistic"] = {{"kind", s.statistic->kind}};
    if (s.statistic->value) j["statistic"]["value"] = *s.statistic->value;
  }
  if (s.record) j["record"] = *s.record;
  if (s.position) j["position"] = {{"x", s.position->x}, {"y", s.position->y}};
  if (s.radius) j["radius"] = *s.radius;
  if (s.stroke_width) j["strokeWidth"] = *s.stroke_width;
  if (s.color) j["color"] = *s.color;
  return j;
}

OverlaySpec overlay_spec_from_json(const nlohmann::json& j) {
  try {
    OverlaySpec s;
    s.id = j.value("id", "");
    auto kind = parse_overlay_kind(j.at("kind").get<std::string>());
    if (!kind) throw Error(ErrorCode::kParse, "unknown overlay kind " + j.at("kind").dump());
    s.kind = *kind;
    const auto& t = j.at("target");
    s.target.columns = t.at("columns").get<std::vector<std::string>>();
    s.target.start_row = t.at("startRow").get<size_t>();
    s.target.end_row = t.value("endRow", s.target.start_row);
    if (j.contains("text")) s.text = j["text"].get<std::string>();
    if (j.contains("statistic")) {
      Statistic st;
      st.kind = j["statistic"].value("kind", "mean");
      if (j["statistic"].contains("value")) st.value = j["statistic"]["value"].get<double>();
      s.statistic = st;
    }
    if (j.contains("record")) s.record = j["record"].get<size_t>();
    if (j.contains("position")) {
      s.position = Point{j["position"].at("x").get<double>(), j["position"].at("y").get<double>()};
    }
    if (j.contains("radius")) s.radius = j["radius"].get<double>();
    if (j.contains("strokeWidth")) s.stroke_width = j["strokeWidth"].get<double>();
    if (j.contains("color")) s.color = j["color"].get<std::string>();
    if (s.target.columns.empty()) throw Error(ErrorCode::kParse, "overlay target has no column");
    if (s.target.start_row < 1 || s.target.end_row < s.target.start_row) {
      throw Error(ErrorCode::kParse, "overlay target rows out of order");
    }
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("overlay: ") + e.what());
  }
}

}  // namespace layerchart
