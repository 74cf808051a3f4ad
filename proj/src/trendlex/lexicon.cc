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

#include "trendlex/lexicon.h"

#include <algorithm>
#include <cctype>

#include "core/error.h"
#include "core/util.h"
#include "layerchart_data/lexicon_json.h"

namespace layerchart {
namespace {

struct PatternInfo {
  PatternId id;
  const char* name;
  TrendKind kind;
};

constexpr PatternInfo kPatternInfo[] = {
    {PatternId::kMonotoneRise, "monotone_rise", TrendKind::kChangePattern},
    {PatternId::kMonotoneDecline, "monotone_decline", TrendKind::kChangePattern},
    {PatternId::kSteadyRise, "steady_rise", TrendKind::kChangePattern},
    {PatternId::kSteadyDecline, "steady_decline", TrendKind::kChangePattern},
    {PatternId::kSharpIncrease, "sharp_increase", TrendKind::kChangePattern},
    {PatternId::kSharpDecrease, "sharp_decrease", TrendKind::kChangePattern},
    {PatternId::kFluctuation, "fluctuation", TrendKind::kChangePattern},
    {PatternId::kPeak, "peak", TrendKind::kChangePattern},
    {PatternId::kTrough, "trough", TrendKind::kChangePattern},
    {PatternId::kDoubleBottom, "double_bottom", TrendKind::kChangePattern},
    {PatternId::kDoubleTop, "double_top", TrendKind::kChangePattern},
    {PatternId::kTripleTop, "triple_top", TrendKind::kChangePattern},
    {PatternId::kHeadAndShoulders, "head_and_shoulders", TrendKind::kChangePattern},
    {PatternId::kGlobalMax, "global_max", TrendKind::kSummaryIndicator},
    {PatternId::kGlobalMin, "global_min", TrendKind::kSummaryIndicator},
    {PatternId::kMeanLevel, "mean_level", TrendKind::kSummaryIndicator},
    {PatternId::kEventPoint, "event_point", TrendKind::kSpecialEvent},
};

const PatternInfo& info(PatternId id) {
  for (const auto& p : kPatternInfo) {
    if (p.id == id) return p;
  }
  return kPatternInfo[0];
}

std::string normalize_phrase(std::string_view phrase) {
  std::string out;
  for (const auto& t : word_tokens(phrase)) {
    if (!out.empty()) out.push_back(' ');
    out += t.norm;
  }
  return out;
}

}  // namespace

const char* pattern_name(PatternId id) { return info(id).name; }

std::optional<PatternId> parse_pattern(std::string_view name) {
  for (const auto& p : kPatternInfo) {
    if (name == p.name) return p.id;
  }
  return std::nullopt;
}

TrendKind default_kind(PatternId id) { return info(id).kind; }

const char* trend_kind_name(TrendKind kind) {
  switch (kind) {
    case TrendKind::kChangePattern: return "change_pattern";
    case TrendKind::kSummaryIndicator: return "summary_indicator";
    case TrendKind::kSpecialEvent: return "special_event";
  }
  return "change_pattern";
}

std::optional<TrendKind> parse_trend_kind(std::string_view name) {
  if (name == "change_pattern") return TrendKind::kChangePattern;
  if (name == "summary_indicator") return TrendKind::kSummaryIndicator;
  if (name == "special_event") return TrendKind::kSpecialEvent;
  return std::nullopt;
}

std::vector<WordToken> word_tokens(std::string_view text) {
  std::vector<WordToken> out;
  size_t i = 0;
  while (i < text.size()) {
    unsigned char c = static_cast<unsigned char>(text[i]);
    if (!std::isalnum(c)) {
      ++i;
      continue;
    }
    WordToken tok{"", i, i};
    while (i < text.size()) {
      unsigned char d = static_cast<unsigned char>(text[i]);
      if (std::isalnum(d)) {
        tok.norm.push_back(static_cast<char>(std::tolower(d)));
        ++i;
      } else if (d == '\'' && i + 1 < text.size() &&
                 std::isalpha(static_cast<unsigned char>(text[i + 1])) && !tok.norm.empty()) {
        ++i;  // possessive / contraction
      } else {
        break;
      }
    }
    tok.end = i;
    out.push_back(std::move(tok));
  }
  return out;
}

Lexicon::Lexicon(std::vector<TrendPattern> patterns) : patterns_(std::move(patterns)) {
  if (patterns_.empty()) throw Error(ErrorCode::kValidation, "lexicon has no patterns");
  for (size_t i = 0; i < patterns_.size(); ++i) {
    for (const auto& alias : patterns_[i].aliases) {
      std::string norm = normalize_phrase(alias);
      if (norm.empty()) continue;
      auto [it, inserted] = alias_index_.emplace(norm, i);
      if (!inserted && it->second != i) {
        throw Error(ErrorCode::kValidation,
                    "lexicon alias '" + alias + "' maps to both " +
                        pattern_name(patterns_[it->second].id) + " and " +
                        pattern_name(patterns_[i].id));
      }
      size_t ntok = static_cast<size_t>(std::count(norm.begin(), norm.end(), ' ')) + 1;
      max_alias_tokens_ = std::max(max_alias_tokens_, ntok);
    }
  }
}

std::optional<TrendMatch> Lexicon::classify(std::string_view phrase) const {
  auto toks = word_tokens(phrase);
  size_t best_len = 0;
  std::optional<TrendMatch> best;
  for (size_t start = 0; start < toks.size(); ++start) {
    std::string key;
    for (size_t len = 1; len <= max_alias_tokens_ && start + len <= toks.size(); ++len) {
      if (len > 1) key.push_back(' ');
      key += toks[start + len - 1].norm;
      auto it = alias_index_.find(key);
      if (it != alias_index_.end() && len > best_len) {
        best_len = len;
        best = TrendMatch{patterns_[it->second].id, patterns_[it->second].kind};
      }
    }
  }
  return best;
}

std::vector<PhraseMatch> Lexicon::find_phrases(std::string_view text) const {
  auto toks = word_tokens(text);
  std::vector<PhraseMatch> out;
  size_t start = 0;
  while (start < toks.size()) {
    size_t best_len = 0;
    size_t best_index = 0;
    std::string key;
    for (size_t len = 1; len <= max_alias_tokens_ && start + len <= toks.size(); ++len) {
      if (len > 1) key.push_back(' ');
      key += toks[start + len - 1].norm;
      auto it = alias_index_.find(key);
      if (it != alias_index_.end()) {
        best_len = len;
        best_index = it->second;
      }
    }
    if (best_len == 0) {
      ++start;
      continue;
    }
    size_t b = toks[start].start;
    size_t e = toks[start + best_len - 1].end;
    out.push_back(PhraseMatch{patterns_[best_index].id, patterns_[best_index].kind, b, e,
                              std::string(text.substr(b, e - b))});
    start += best_len;
  }
  return out;
}

nlohmann::json Lexicon::to_json() const {
  nlohmann::json doc;
  doc["version"] = 1;
  doc["patterns"] = nlohmann::json::array();
  for (const auto& p : patterns_) {
    doc["patterns"].push_back(
        {{"id", pattern_name(p.id)}, {"kind", trend_kind_name(p.kind)}, {"aliases", p.aliases}});
  }
  return doc;
}

Lexicon lexicon_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("patterns") || !doc["patterns"].is_array()) {
    throw Error(ErrorCode::kParse, "lexicon document needs a 'patterns' array");
  }
  std::vector<TrendPattern> patterns;
  for (const auto& entry : doc["patterns"]) {
    std::string id = entry.value("id", std::string());
    auto pid = parse_pattern(id);
    if (!pid) throw Error(ErrorCode::kParse, "lexicon: unknown pattern id '" + id + "'");
    TrendKind kind = default_kind(*pid);
    if (entry.contains("kind")) {
      auto k = parse_trend_kind(entry["kind"].get<std::string>());
      if (!k) throw Error(ErrorCode::kParse, "lexicon: unknown kind for '" + id + "'");
      kind = *k;
    }
    TrendPattern p{*pid, kind, {}};
    for (const auto& a : entry.value("aliases", nlohmann::json::array())) {
      p.aliases.push_back(a.get<std::string>());
    }
    patterns.push_back(std::move(p));
  }
  return Lexicon(std::move(patterns));
}

Lexicon default_lexicon() {
  static const Lexicon lexicon = lexicon_from_json(nlohmann::json::parse(kDefaultLexiconJson));
  return lexicon;
}

Lexicon load_lexicon_file(const std::string& path) {
  try {
    return lexicon_from_json(nlohmann::json::parse(read_file(path)));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, "lexicon " + path + ": " + e.what());
  }
}

std::optional<TrendMatch> classify_trend(std::string_view phrase, const Lexicon& lexicon) {
  return lexicon.classify(phrase);
}

}  // namespace layerchart
