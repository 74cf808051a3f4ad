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

#include "trendlex/detectors.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "core/error.h"

namespace layerchart {
namespace {

// Non-null values with their original 0-based rows plus whole-series
// statistics every predicate is measured against.
struct Context {
  std::vector<double> v;
  std::vector<size_t> rows;
  double range = 0.0;
  double mean_abs_step = 0.0;
  double prominence = 0.0;
  DetectorParams params;

  double step(size_t k) const { return v[k + 1] - v[k]; }
  int sign(size_t k) const {
    double d = step(k);
    return d > 0 ? 1 : (d < 0 ? -1 : 0);
  }
};

Context make_context(const Series& series, const DetectorParams& params) {
  Context ctx;
  ctx.params = params;
  for (size_t i = 0; i < series.size(); ++i) {
    if (series[i]) {
      ctx.v.push_back(*series[i]);
      ctx.rows.push_back(i);
    }
  }
  if (!ctx.v.empty()) {
    auto [lo, hi] = std::minmax_element(ctx.v.begin(), ctx.v.end());
    ctx.range = *hi - *lo;
  }
  if (ctx.v.size() >= 2) {
    double sum = 0.0;
    for (size_t k = 0; k + 1 < ctx.v.size(); ++k) sum += std::fabs(ctx.step(k));
    ctx.mean_abs_step = sum / static_cast<double>(ctx.v.size() - 1);
  }
  ctx.prominence = params.extremum_prominence * ctx.range;
  return ctx;
}

bool all_steps(const Context& c, size_t s, size_t e, int sign) {
  for (size_t k = s; k < e; ++k) {
    if (c.sign(k) != sign) return false;
  }
  return true;
}

double mean_abs(const Context& c, size_t s, size_t e) {
  double sum = 0.0;
  for (size_t k = s; k < e; ++k) sum += std::fabs(c.step(k));
  return sum / static_cast<double>(e - s);
}

bool steady(const Context& c, size_t s, size_t e) {
  double mean = mean_abs(c, s, e);
  if (!(mean > 0.0)) return false;
  double var = 0.0;
  for (size_t k = s; k < e; ++k) {
    double dev = std::fabs(c.step(k)) - mean;
    var += dev * dev;
  }
  var /= static_cast<double>(e - s);
  return std::sqrt(var) / mean <= c.params.steady_cv;
}

bool sharp(const Context& c, size_t s, size_t e) {
  return c.mean_abs_step > 0.0 &&
         mean_abs(c, s, e) > c.params.sharp_slope_factor * c.mean_abs_step;
}

// Turning points of a window whose steps form exactly nruns alternating
// sign runs, the first with first_sign. Returns the run-boundary indices.
std::optional<std::vector<size_t>> turning_points(const Context& c, size_t s, size_t e,
                                                  int first_sign, size_t nruns) {
  if (e <= s) return std::nullopt;
  std::vector<size_t> turns;
  int expected = first_sign;
  if (c.sign(s) != expected) return std::nullopt;
  for (size_t k = s; k < e; ++k) {
    int sg = c.sign(k);
    if (sg == 0) return std::nullopt;
    if (sg != expected) {
      turns.push_back(k);  // point k ends the previous run
      expected = sg;
    }
  }
  if (turns.size() + 1 != nruns) return std::nullopt;
  return turns;
}

bool holds(const Context& c, PatternId p, size_t s, size_t e) {
  if (e >= c.v.size() || s > e) return false;
  const size_t len = e - s + 1;
  const double P = c.prominence;
  const auto& v = c.v;
  switch (p) {
    case PatternId::kMonotoneRise:
      return len >= std::max<size_t>(2, c.params.min_span_len) && all_steps(c, s, e, 1);
    case PatternId::kMonotoneDecline:
      return len >= std::max<size_t>(2, c.params.min_span_len) && all_steps(c, s, e, -1);
    case PatternId::kSteadyRise:
      return len >= std::max<size_t>(2, c.params.min_span_len) && all_steps(c, s, e, 1) && steady(c, s, e);
    case PatternId::kSteadyDecline:
      return len >= std::max<size_t>(2, c.params.min_span_len) && all_steps(c, s, e, -1) && steady(c, s, e);
    case PatternId::kSharpIncrease:
      return len >= std::max<size_t>(2, c.params.min_span_len) && all_steps(c, s, e, 1) && sharp(c, s, e);
    case PatternId::kSharpDecrease:
      return len >= std::max<size_t>(2, c.params.min_span_len) && all_steps(c, s, e, -1) && sharp(c, s, e);
    case PatternId::kFluctuation: {
      if (len < std::max<size_t>(4, c.params.min_span_len) || !(P > 0.0)) return false;
      for (size_t k = s; k < e; ++k) {
        if (c.sign(k) == 0 || std::fabs(c.step(k)) < P) return false;
        if (k > s && c.sign(k) == c.sign(k - 1)) return false;
      }
      return true;
    }
    case PatternId::kPeak: {
      auto t = turning_points(c, s, e, 1, 2);
      if (!t || !(P > 0.0)) return false;
      return v[(*t)[0]] - std::max(v[s], v[e]) >= P;
    }
    case PatternId::kTrough: {
      auto t = turning_points(c, s, e, -1, 2);
      if (!t || !(P > 0.0)) return false;
      return std::min(v[s], v[e]) - v[(*t)[0]] >= P;
    }
    case PatternId::kDoubleBottom: {
      auto t = turning_points(c, s, e, -1, 4);
      if (!t || !(P > 0.0)) return false;
      double m1 = v[(*t)[0]], top = v[(*t)[1]], m2 = v[(*t)[2]];
      return top < std::min(v[s], v[e]) && top - std::max(m1, m2) >= P;
    }
    case PatternId::kDoubleTop: {
      auto t = turning_points(c, s, e, 1, 4);
      if (!t || !(P > 0.0)) return false;
      double p1 = v[(*t)[0]], low = v[(*t)[1]], p2 = v[(*t)[2]];
      return low > std::max(v[s], v[e]) && std::min(p1, p2) - low >= P;
    }
    case PatternId::kTripleTop:
    case PatternId::kHeadAndShoulders: {
      auto t = turning_points(c, s, e, 1, 6);
      if (!t || !(P > 0.0)) return false;
      double p1 = v[(*t)[0]], t1 = v[(*t)[1]], p2 = v[(*t)[2]], t2 = v[(*t)[3]],
             p3 = v[(*t)[4]];
      if (!(std::min(t1, t2) > std::max(v[s], v[e]))) return false;
      double max_trough = std::max(t1, t2);
      if (p == PatternId::kTripleTop) {
        double lo = std::min({p1, p2, p3});
        double hi = std::max({p1, p2, p3});
        return lo - max_trough >= P && hi - lo < P;
      }
      return std::min(p1, p3) - max_trough >= P && p2 - std::max(p1, p3) >= P;
    }
    case PatternId::kGlobalMax:
      return len == 1 && v[s] == *std::max_element(v.begin(), v.end());
    case PatternId::kGlobalMin:
      return len == 1 && v[s] == *std::min_element(v.begin(), v.end());
    case PatternId::kMeanLevel:
      return s == 0 && e + 1 == v.size();
    case PatternId::kEventPoint:
      return len == 1 && s >= 1 && c.mean_abs_step > 0.0 &&
             std::fabs(c.step(s - 1)) > c.params.sharp_slope_factor * c.mean_abs_step;
  }
  return false;
}

double raw_score(const Context& c, PatternId p, size_t s, size_t e) {
  const auto& v = c.v;
  switch (p) {
    case PatternId::kMonotoneRise:
    case PatternId::kSteadyRise:
    case PatternId::kSharpIncrease:
      return v[e] - v[s];
    case PatternId::kMonotoneDecline:
    case PatternId::kSteadyDecline:
    case PatternId::kSharpDecrease:
      return v[s] - v[e];
    case PatternId::kFluctuation:
      return mean_abs(c, s, e);
    case PatternId::kPeak: {
      auto t = turning_points(c, s, e, 1, 2);
      return v[(*t)[0]] - std::max(v[s], v[e]);
    }
    case PatternId::kTrough: {
      auto t = turning_points(c, s, e, -1, 2);
      return std::min(v[s], v[e]) - v[(*t)[0]];
    }
    case PatternId::kDoubleBottom: {
      auto t = turning_points(c, s, e, -1, 4);
      return v[(*t)[1]] - std::max(v[(*t)[0]], v[(*t)[2]]);
    }
    case PatternId::kDoubleTop: {
      auto t = turning_points(c, s, e, 1, 4);
      return std::min(v[(*t)[0]], v[(*t)[2]]) - v[(*t)[1]];
    }
    case PatternId::kTripleTop: {
      auto t = turning_points(c, s, e, 1, 6);
      return std::min({v[(*t)[0]], v[(*t)[2]], v[(*t)[4]]}) - std::max(v[(*t)[1]], v[(*t)[3]]);
    }
    case PatternId::kHeadAndShoulders: {
      auto t = turning_points(c, s, e, 1, 6);
      return v[(*t)[2]] - std::max(v[(*t)[0]], v[(*t)[4]]);
    }
    case PatternId::kGlobalMax:
    case PatternId::kGlobalMin:
    case PatternId::kMeanLevel:
      return c.range > 0.0 ? c.range : 1.0;
    case PatternId::kEventPoint:
      return std::fabs(c.step(s - 1));
  }
  return 0.0;
}

double score(const Context& c, PatternId p, size_t s, size_t e) {
  double denom = c.range > 0.0 ? c.range : 1.0;
  return std::clamp(raw_score(c, p, s, e) / denom, 0.0, 1.0);
}

struct Run {
  int sign;
  size_t first;  // first step index
  size_t last;   // last step index
};

std::vector<Run> sign_runs(const Context& c) {
  std::vector<Run> runs;
  for (size_t k = 0; k + 1 < c.v.size(); ++k) {
    int sg = c.sign(k);
    if (!runs.empty() && runs.back().sign == sg) {
      runs.back().last = k;
    } else {
      runs.push_back({sg, k, k});
    }
  }
  return runs;
}

using Window = std::pair<size_t, size_t>;

// Windows inside [lo, hi] that satisfy the predicate and are not contained
// in another satisfying window of the same range.
std::vector<Window> maximal_within(const Context& c, PatternId p, size_t lo, size_t hi) {
  std::vector<Window> sat;
  for (size_t s = lo; s <= hi; ++s) {
    for (size_t e = s; e <= hi; ++e) {
      if (holds(c, p, s, e)) sat.emplace_back(s, e);
    }
  }
  std::vector<Window> out;
  for (const auto& w : sat) {
    bool contained = false;
    for (const auto& o : sat) {
      if (o != w && o.first <= w.first && w.second <= o.second) {
        contained = true;
        break;
      }
    }
    if (!contained) out.push_back(w);
  }
  return out;
}

// Adjacent runs matching the alternating sign sequence starting at sign0.
std::vector<Window> run_groups(const Context& c, const std::vector<Run>& runs, int sign0,
                               size_t count) {
  std::vector<Window> out;
  for (size_t i = 0; i + count <= runs.size(); ++i) {
    bool ok = true;
    int expected = sign0;
    for (size_t j = 0; j < count && ok; ++j) {
      ok = runs[i + j].sign == expected;
      expected = -expected;
    }
    if (!ok) continue;
    Window w{runs[i].first, runs[i + count - 1].last + 1};
    (void)c;
    out.push_back(w);
  }
  return out;
}

std::vector<Window> candidates(const Context& c, PatternId p) {
  std::vector<Window> out;
  const size_t n = c.v.size();
  const auto runs = sign_runs(c);
  auto keep_if_holds = [&](const std::vector<Window>& ws) {
    for (const auto& w : ws) {
      if (holds(c, p, w.first, w.second)) out.push_back(w);
    }
  };
  switch (p) {
    case PatternId::kMonotoneRise:
    case PatternId::kMonotoneDecline: {
      int want = p == PatternId::kMonotoneRise ? 1 : -1;
      for (const auto& r : runs) {
        if (r.sign == want && r.last + 2 - r.first >= c.params.min_span_len) {
          out.emplace_back(r.first, r.last + 1);
        }
      }
      break;
    }
    case PatternId::kSteadyRise:
    case PatternId::kSharpIncrease:
    case PatternId::kSteadyDecline:
    case PatternId::kSharpDecrease: {
      int want = (p == PatternId::kSteadyRise || p == PatternId::kSharpIncrease) ? 1 : -1;
      for (const auto& r : runs) {
        if (r.sign != want) continue;
        auto ws = maximal_within(c, p, r.first, r.last + 1);
        out.insert(out.end(), ws.begin(), ws.end());
      }
      break;
    }
    case PatternId::kFluctuation: {
      size_t k = 0;
      while (k + 1 < n) {
        if (c.sign(k) == 0 || std::fabs(c.step(k)) < c.prominence) {
          ++k;
          continue;
        }
        size_t j = k;
        while (j + 2 < n && c.sign(j + 1) != 0 && c.sign(j + 1) != c.sign(j) &&
               std::fabs(c.step(j + 1)) >= c.prominence) {
          ++j;
        }
        if (holds(c, p, k, j + 1)) out.emplace_back(k, j + 1);
        k = j + 1;
      }
      break;
    }
    case PatternId::kPeak: keep_if_holds(run_groups(c, runs, 1, 2)); break;
    case PatternId::kTrough: keep_if_holds(run_groups(c, runs, -1, 2)); break;
    case PatternId::kDoubleBottom: keep_if_holds(run_groups(c, runs, -1, 4)); break;
    case PatternId::kDoubleTop: keep_if_holds(run_groups(c, runs, 1, 4)); break;
    case PatternId::kTripleTop:
    case PatternId::kHeadAndShoulders: keep_if_holds(run_groups(c, runs, 1, 6)); break;
    case PatternId::kGlobalMax:
    case PatternId::kGlobalMin: {
      double target = p == PatternId::kGlobalMax ? *std::max_element(c.v.begin(), c.v.end())
                                                 : *std::min_element(c.v.begin(), c.v.end());
      for (size_t i = 0; i < n; ++i) {
        if (c.v[i] == target) out.emplace_back(i, i);
      }
      break;
    }
    case PatternId::kMeanLevel:
      out.emplace_back(0, n - 1);
      break;
    case PatternId::kEventPoint:
      for (size_t i = 1; i < n; ++i) {
        if (holds(c, p, i, i)) out.emplace_back(i, i);
      }
      break;
  }
  return out;
}

}  // namespace

size_t min_points(PatternId pattern) {
  switch (pattern) {
    case PatternId::kGlobalMax:
    case PatternId::kGlobalMin:
    case PatternId::kMeanLevel:
      return 1;
    case PatternId::kPeak:
    case PatternId::kTrough:
      return 3;
    case PatternId::kFluctuation:
      return 4;
    case PatternId::kDoubleBottom:
    case PatternId::kDoubleTop:
      return 5;
    case PatternId::kTripleTop:
    case PatternId::kHeadAndShoulders:
      return 7;
    default:
      return 2;
  }
}

Series to_series(std::span<const double> values) {
  return Series(values.begin(), values.end());
}

std::vector<Span> detect_pattern(const Series& series, PatternId pattern,
                                 const DetectorParams& params) {
  Context ctx = make_context(series, params);
  if (ctx.v.size() < min_points(pattern)) {
    throw Error(ErrorCode::kSeriesTooShort,
                std::string(pattern_name(pattern)) + " needs at least " +
                    std::to_string(min_points(pattern)) + " points, series has " +
                    std::to_string(ctx.v.size()));
  }
  struct Scored {
    Window w;
    double score;
  };
  std::vector<Scored> cands;
  for (const auto& w : candidates(ctx, pattern)) {
    cands.push_back({w, score(ctx, pattern, w.first, w.second)});
  }
  std::stable_sort(cands.begin(), cands.end(), [](const Scored& a, const Scored& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.w.first < b.w.first;
  });
  std::vector<Span> out;
  std::vector<Window> taken;
  for (const auto& c : cands) {
    bool overlaps = false;
    for (const auto& t : taken) {
      if (c.w.first <= t.second && t.first <= c.w.second) {
        overlaps = true;
        break;
      }
    }
    if (overlaps) continue;
    taken.push_back(c.w);
    out.push_back(Span{ctx.rows[c.w.first] + 1, ctx.rows[c.w.second] + 1, c.score});
  }
  return out;
}

SummaryValue summary_statistic(const Series& series, PatternId pattern) {
  std::vector<std::pair<double, size_t>> pts;
  for (size_t i = 0; i < series.size(); ++i) {
    if (series[i]) pts.emplace_back(*series[i], i + 1);
  }
  if (pts.empty()) throw Error(ErrorCode::kEmptySeries, "series has no values");
  SummaryValue out;
  switch (pattern) {
    case PatternId::kGlobalMax:
    case PatternId::kGlobalMin: {
      bool is_max = pattern == PatternId::kGlobalMax;
      out.value = pts.front().first;
      for (const auto& [v, r] : pts) out.value = is_max ? std::max(out.value, v) : std::min(out.value, v);
      for (const auto& [v, r] : pts) {
        if (v == out.value) out.rows.push_back(r);
      }
      return out;
    }
    case PatternId::kMeanLevel: {
      double sum = 0.0;
      for (const auto& [v, r] : pts) sum += v;
      out.value = sum / static_cast<double>(pts.size());
      return out;
    }
    default:
      throw Error(ErrorCode::kInvalidArgument,
                  std::string(pattern_name(pattern)) + " is not a summary statistic");
  }
}

bool verify_span(const Series& series, PatternId pattern, const Span& span,
                 const DetectorParams& params) {
  if (span.start_row < 1 || span.end_row > series.size() || span.start_row > span.end_row) {
    return false;
  }
  Context ctx = make_context(series, params);
  if (ctx.v.size() < min_points(pattern)) return false;
  auto index_of = [&](size_t row1) -> std::optional<size_t> {
    auto it = std::lower_bound(ctx.rows.begin(), ctx.rows.end(), row1 - 1);
    if (it == ctx.rows.end() || *it != row1 - 1) return std::nullopt;
    return static_cast<size_t>(it - ctx.rows.begin());
  };
  auto s = index_of(span.start_row);
  auto e = index_of(span.end_row);
  if (!s || !e) return false;
  return holds(ctx, pattern, *s, *e);
}

}  // namespace layerchart
