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

#ifndef LAYERCHART_TRENDLEX_LEXICON_H_
#define LAYERCHART_TRENDLEX_LEXICON_H_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace layerchart {

enum class TrendKind { kChangePattern, kSummaryIndicator, kSpecialEvent };

enum class PatternId {
  kMonotoneRise,
  kMonotoneDecline,
  kSteadyRise,
  kSteadyDecline,
  kSharpIncrease,
  kSharpDecrease,
  kFluctuation,
  kPeak,
  kTrough,
  kDoubleBottom,
  kDoubleTop,
  kTripleTop,
  kHeadAndShoulders,
  kGlobalMax,
  kGlobalMin,
  kMeanLevel,
  kEventPoint,
};

inline constexpr PatternId kAllPatterns[] = {
    PatternId::kMonotoneRise,  PatternId::kMonotoneDecline, PatternId::kSteadyRise,
    PatternId::kSteadyDecline, PatternId::kSharpIncrease,   PatternId::kSharpDecrease,
    PatternId::kFluctuation,   PatternId::kPeak,            PatternId::kTrough,
    PatternId::kDoubleBottom,  PatternId::kDoubleTop,       PatternId::kTripleTop,
    PatternId::kHeadAndShoulders, PatternId::kGlobalMax,    PatternId::kGlobalMin,
    PatternId::kMeanLevel,     PatternId::kEventPoint,
};

const char* pattern_name(PatternId id);
std::optional<PatternId> parse_pattern(std::string_view name);
const char* trend_kind_name(TrendKind kind);
std::optional<TrendKind> parse_trend_kind(std::string_view name);
// The kind every pattern belongs to in the built-in vocabulary.
TrendKind default_kind(PatternId id);

struct TrendPattern {
  PatternId id;
  TrendKind kind;
  std::vector<std::string> aliases;
};

struct TrendMatch {
  PatternId pattern;
  TrendKind kind;
};

// A trend phrase found in running text; offsets are byte offsets.
struct PhraseMatch {
  PatternId pattern;
  TrendKind kind;
  size_t char_start;
  size_t char_end;
  std::string surface;
};

// Trend vocabulary: surface phrases mapped to change patterns. Lookup is
// case-insensitive and treats hyphens like spaces.
class Lexicon {
 public:
  // Throws Error(kValidation) when one alias names two patterns.
  explicit Lexicon(std::vector<TrendPattern> patterns);

  const std::vector<TrendPattern>& patterns() const { return patterns_; }

  // Longest alias contained in the phrase (on word boundaries) wins.
  std::optional<TrendMatch> classify(std::string_view phrase) const;

  // Left-to-right, longest-first, non-overlapping alias occurrences.
  std::vector<PhraseMatch> find_phrases(std::string_view text) const;

  nlohmann::json to_json() const;

 private:
  std::vector<TrendPattern> patterns_;
  // Normalized alias tokens joined by single spaces -> pattern index.
  std::map<std::string, size_t> alias_index_;
  size_t max_alias_tokens_ = 1;
};

Lexicon default_lexicon();
Lexicon lexicon_from_json(const nlohmann::json& doc);
Lexicon load_lexicon_file(const std::string& path);

std::optional<TrendMatch> classify_trend(std::string_view phrase, const Lexicon& lexicon);

// Lowercased word tokens with byte offsets; hyphens, slashes and
// punctuation separate words, apostrophes are dropped.
struct WordToken {
  std::string norm;
  size_t start;
  size_t end;
};
std::vector<WordToken> word_tokens(std::string_view text);

}  // namespace layerchart

#endif  // LAYERCHART_TRENDLEX_LEXICON_H_
