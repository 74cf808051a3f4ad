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

#ifndef LAYERCHART_TRENDLEX_DETECTORS_H_
#define LAYERCHART_TRENDLEX_DETECTORS_H_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "trendlex/lexicon.h"

namespace layerchart {

// Row interval where a pattern holds. Rows are 1-based and inclusive.
struct Span {
  size_t start_row = 1;
  size_t end_row = 1;
  double score = 0.0;  // in [0, 1]

  bool same_rows(const Span& o) const { return start_row == o.start_row && end_row == o.end_row; }
};

// Thresholds for the pattern predicates. All are relative to the whole
// series, so predicates are invariant under x -> a*x + b with a > 0.
struct DetectorParams {
  // A rise/decline is sharp when its mean step exceeds this multiple of the
  // series' mean absolute step.
  double sharp_slope_factor = 2.0;
  // Upper bound on the coefficient of variation of the steps of a steady
  // rise/decline.
  double steady_cv = 0.5;
  // Minimum prominence of an extremum, as a fraction of the series range.
  double extremum_prominence = 0.1;
  // Minimum number of points in a rise/decline/steady/sharp window.
  size_t min_span_len = 3;
};

// Fewest non-null points a pattern needs; fewer raises SeriesTooShort.
size_t min_points(PatternId pattern);

using Series = std::vector<std::optional<double>>;

Series to_series(std::span<const double> values);

// All maximal, pairwise non-overlapping windows where the pattern holds,
// best score first (ties: earliest start). Null points are skipped but the
// reported rows refer to the original series.
//
// Window predicates, over the non-null values v[s..e] with steps
// d[k] = v[k+1] - v[k], series range R, mean absolute step M and
// prominence P = extremum_prominence * R:
//   monotone rise/decline  len >= min_span_len, every d > 0 (< 0)
//   steady rise/decline    monotone, and stddev(|d|) / mean(|d|) <= steady_cv
//   sharp increase/decrease monotone, and mean(|d|) > sharp_slope_factor * M
//   fluctuation            len >= max(4, min_span_len), steps alternate in
//                          sign and every |d| >= P
//   peak (trough)          one ascending then one descending run (mirror),
//                          apex - max(endpoints) >= P
//   double bottom          runs down/up/down/up; middle top below both
//                          endpoints and >= P above the higher bottom
//   double top             mirror of double bottom
//   triple top             runs up/down x3; both troughs above both
//                          endpoints; min peak - max trough >= P; the three
//                          peaks differ by less than P
//   head and shoulders     runs up/down x3; troughs above endpoints;
//                          min shoulder - max trough >= P; head - max
//                          shoulder >= P
//   global max/min         single points attaining the extreme value
//   mean level             the whole series
//   event point            single point whose incoming |d| > sharp_slope_factor * M
// Any P, R or M of zero makes every predicate that needs it false.
std::vector<Span> detect_pattern(const Series& series, PatternId pattern,
                                 const DetectorParams& params = {});

struct SummaryValue {
  double value = 0.0;
  std::vector<size_t> rows;  // 1-based rows attaining the value; empty for mean
};

// pattern must be global_max, global_min or mean_level.
SummaryValue summary_statistic(const Series& series, PatternId pattern);

// True iff the predicate holds on exactly this window. Both span ends must
// land on non-null rows.
bool verify_span(const Series& series, PatternId pattern, const Span& span,
                 const DetectorParams& params = {});

}  // namespace layerchart

#endif  // LAYERCHART_TRENDLEX_DETECTORS_H_
