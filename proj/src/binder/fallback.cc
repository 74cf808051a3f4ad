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

#include "binder/fallback.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <tuple>

#include "binder/text_match.h"
#include "core/error.h"
#include "core/util.h"

namespace layerchart {
namespace {

struct Anchor {
  size_t pos;  // byte offset in the narrative
  size_t row;  // 1-based
};

struct PendingRecord {
  size_t pos;
  BindingRecord record;
};

std::optional<size_t> axis_row_for(const DataTable& table, const NumberMention& n) {
  auto axis = table.axis_column();
  if (!axis) return std::nullopt;
  std::string lit = format_number(n.value);
  std::optional<size_t> contains;
  size_t contains_count = 0;
  for (size_t r = 0; r < table.row_count(); ++r) {
    const Cell& c = table.rows[r][*axis];
    if (const double* d = std::get_if<double>(&c); d && *d == n.value) return r + 1;
    std::string label = cell_to_string(c);
    if (trim(label) == lit) return r + 1;
    if (label.find(lit) != std::string::npos) {
      contains = r + 1;
      ++contains_count;
    }
  }
  if (contains_count == 1) return contains;
  return std::nullopt;
}

std::string quote(std::string_view s) { return "'" + std::string(s) + "'"; }

// Trims a clause and drops dangling connectives at either end.
std::string clean_clause(std::string_view text, TextRange r) {
  std::string s(trim(text.substr(r.start, r.end - r.start)));
  for (const char* w : {"and ", "or ", "but "}) {
    if (s.size() > std::string_view(w).size() && to_lower(s.substr(0, std::string_view(w).size())) == w) {
      s = std::string(trim(std::string_view(s).substr(std::string_view(w).size())));
    }
  }
  for (const char* w : {" and", " or", " but"}) {
    std::string_view sw(w);
    if (s.size() > sw.size() && to_lower(s.substr(s.size() - sw.size())) == sw) {
      s = std::string(trim(std::string_view(s).substr(0, s.size() - sw.size())));
    }
  }
  while (!s.empty() && (s.back() == ',' || s.back() == ';')) s.pop_back();
  return s;
}

CellRef ref(const std::string& column, size_t row) { return CellRef{column, row}; }

}  // namespace

BindingResult fallback_bind(const Narrative& narrative, const DataTable& table,
                            const Lexicon& lexicon, const DetectorParams& params) {
  const std::string& text = narrative.text;
  auto mentions = find_column_mentions(text, table);
  const ColumnMention* primary = primary_mention(mentions);
  if (!primary) {
    throw Error(ErrorCode::kBindingFailed,
                "no table column is mentioned in narrative " + narrative.id);
  }
  auto sentences = split_sentences(text);
  auto sentence_of = [&](size_t pos) -> size_t {
    for (size_t i = 0; i < sentences.size(); ++i) {
      if (pos >= sentences[i].start && pos < sentences[i].end) return i;
    }
    return sentences.empty() ? 0 : sentences.size() - 1;
  };
  // Nearest mention in the same sentence, else the primary subject.
  auto subject_for = [&](size_t pos) -> const ColumnMention& {
    size_t s = sentence_of(pos);
    const ColumnMention* best = nullptr;
    size_t best_dist = 0;
    for (const auto& m : mentions) {
      if (sentence_of(m.start) != s) continue;
      size_t dist = pos < m.start ? m.start - pos : (pos >= m.end ? pos - m.end : 0);
      if (!best || dist < best_dist) {
        best = &m;
        best_dist = dist;
      }
    }
    return best ? *best : *primary;
  };

  std::ostringstream reason;
  {
    std::vector<std::string> cols;
    for (const auto& m : mentions) {
      std::string line = quote(m.text) + " corresponds to the column " + quote(m.column);
      if (std::find(cols.begin(), cols.end(), line) == cols.end()) cols.push_back(line);
    }
    reason << (cols.size() == 1 ? "There is one object in text and data table: "
                                : "There are " + std::to_string(cols.size()) +
                                      " objects in text and data table: ");
    for (size_t i = 0; i < cols.size(); ++i) reason << (i ? "; " : "") << cols[i];
    reason << ".";
  }

  // Numbers: time anchors first, values second.
  auto numbers = find_numbers(text);
  std::vector<Anchor> anchors;
  std::vector<const NumberMention*> values;
  for (const auto& n : numbers) {
    bool inside_mention = std::any_of(mentions.begin(), mentions.end(), [&](const ColumnMention& m) {
      return n.start >= m.start && n.end <= m.end;
    });
    if (inside_mention) continue;
    if (n.year_like) {
      if (auto row = axis_row_for(table, n)) {
        anchors.push_back({n.start, *row});
        continue;
      }
    }
    values.push_back(&n);
  }
  auto anchors_in = [&](size_t sentence) {
    std::vector<size_t> rows;
    for (const auto& a : anchors) {
      if (sentence_of(a.pos) == sentence) rows.push_back(a.row);
    }
    return rows;
  };

  std::vector<PendingRecord> pending;
  for (const NumberMention* n : values) {
    const ColumnMention& subj = subject_for(n->start);
    std::vector<std::string> columns;
    auto add_col = [&](const std::string& c) {
      if (std::find(columns.begin(), columns.end(), c) == columns.end()) columns.push_back(c);
    };
    add_col(subj.column);
    for (const auto& p : subj.parts) add_col(p);
    add_col(primary->column);
    for (const auto& p : primary->parts) add_col(p);
    for (const auto& c : table.numeric_column_names()) add_col(c);

    auto sentence_anchors = anchors_in(sentence_of(n->start));
    struct Hit {
      std::string column;
      size_t row;
      double value;
    };
    auto search = [&](bool exact) -> std::vector<Hit> {
      for (const auto& col : columns) {
        auto series = resolve_series(table, col);
        std::optional<std::string> unit;
        if (auto idx = table.column_index(col)) unit = table.columns[*idx].unit;
        else if (auto parts = split_combined_column(col); !parts.empty()) {
          if (auto i0 = table.column_index(parts[0])) unit = table.columns[*i0].unit;
        }
        for (double cand : candidate_values(*n, unit)) {
          std::vector<Hit> hits;
          for (size_t r = 0; r < series.size(); ++r) {
            if (!series[r]) continue;
            bool ok = exact ? values_equal(*series[r], cand) : values_close(*series[r], cand);
            if (ok) hits.push_back({col, r + 1, *series[r]});
          }
          if (hits.empty()) continue;
          // Several equal cells: prefer the rows named in the sentence.
          std::vector<Hit> anchored;
          for (const auto& h : hits) {
            if (std::find(sentence_anchors.begin(), sentence_anchors.end(), h.row) !=
                sentence_anchors.end()) {
              anchored.push_back(h);
            }
          }
          if (!anchored.empty()) return anchored;
          return {hits.front()};
        }
      }
      return {};
    };
    // A combined subject whose sum does not match: each component that does.
    std::vector<Hit> hits;
    if (!subj.parts.empty()) {
      hits = search(true);
      if (!hits.empty() && hits.front().column != subj.column) {
        std::vector<Hit> per_part;
        for (const auto& p : subj.parts) {
          auto series = resolve_series(table, p);
          std::optional<std::string> unit;
          if (auto idx = table.column_index(p)) unit = table.columns[*idx].unit;
          for (double cand : candidate_values(*n, unit)) {
            bool found = false;
            for (size_t r = 0; r < series.size() && !found; ++r) {
              if (!series[r] || !values_equal(*series[r], cand)) continue;
              bool anchored_ok = sentence_anchors.empty() ||
                                 std::find(sentence_anchors.begin(), sentence_anchors.end(),
                                           r + 1) != sentence_anchors.end();
              if (anchored_ok) {
                per_part.push_back({p, r + 1, *series[r]});
                found = true;
              }
            }
            if (found) break;
          }
        }
        if (per_part.size() > 1) hits = per_part;
      }
    } else {
      hits = search(true);
    }
    if (hits.empty()) hits = search(false);
    if (hits.empty()) {
      reason << " The number " << n->surface
             << " matches no cell of the data table and is not bound.";
      continue;
    }
    for (const auto& h : hits) {
      BindingRecord rec;
      rec.object_name = subj.text;
      rec.data_name = h.column;
      rec.position = {ref(h.column, h.row), ref(h.column, h.row)};
      rec.num = std::vector<double>{h.value};
      rec.text = clean_clause(text, clause_around(text, n->start, n->end));
      reason << " The numerical value for object " << quote(rec.object_name) << " is "
             << n->surface << ", which corresponds to the column " << quote(h.column)
             << " and row " << h.row << ".";
      pending.push_back({n->start, std::move(rec)});
    }
  }

  // Trends in text order; the cursor keeps successive spans on one column
  // from sharing rows.
  std::map<std::string, size_t> cursor;
  std::set<std::tuple<std::string, size_t, size_t, size_t>> bound_spans;
  for (const auto& ph : lexicon.find_phrases(text)) {
    const ColumnMention& subj = subject_for(ph.char_start);
    const std::string& column = subj.column;
    auto series = resolve_series(table, column);
    size_t sentence = sentence_of(ph.char_start);
    auto sentence_anchors = anchors_in(sentence);
    std::optional<Span> chosen;
    std::string how;
    if (ph.kind == TrendKind::kSummaryIndicator) {
      try {
        auto stat = summary_statistic(series, ph.pattern);
        if (ph.pattern == PatternId::kMeanLevel) {
          size_t first = 0, last = 0;
          for (size_t r = 0; r < series.size(); ++r) {
            if (!series[r]) continue;
            if (!first) first = r + 1;
            last = r + 1;
          }
          chosen = Span{first, last, 1.0};
          how = "the mean " + format_number(stat.value) + " of";
        } else {
          size_t row = stat.rows.front();
          for (size_t r : stat.rows) {
            if (std::find(sentence_anchors.begin(), sentence_anchors.end(), r) !=
                sentence_anchors.end()) {
              row = r;
              break;
            }
          }
          chosen = Span{row, row, 1.0};
          how = std::string(ph.pattern == PatternId::kGlobalMax ? "the maximum " : "the minimum ") +
                format_number(stat.value) + " of";
        }
      } catch (const Error&) {
      }
    } else if (ph.kind == TrendKind::kSpecialEvent) {
      if (!sentence_anchors.empty()) {
        chosen = Span{sentence_anchors.front(), sentence_anchors.front(), 1.0};
        how = "the time named in the text on";
      } else {
        try {
          auto spans = detect_pattern(series, PatternId::kEventPoint, params);
          if (!spans.empty()) {
            chosen = spans.front();
            how = "the largest jump in";
          }
        } catch (const Error&) {
        }
      }
    } else {
      if (sentence_anchors.size() >= 2) {
        auto [lo, hi] = std::minmax_element(sentence_anchors.begin(), sentence_anchors.end());
        if (*lo < *hi) {
          chosen = Span{*lo, *hi, 1.0};
          how = "the period named in the text on";
        }
      }
      if (!chosen) {
        try {
          auto spans = detect_pattern(series, ph.pattern, params);
          size_t cur = cursor.count(column) ? cursor[column] : 0;
          for (const auto& s : spans) {
            if (s.start_row >= cur) {
              chosen = s;
              break;
            }
          }
          if (!chosen && !spans.empty()) chosen = spans.front();
          if (chosen && cur > 0 && chosen->start_row == cur && chosen->end_row > cur) {
            Span shifted{cur + 1, chosen->end_row, chosen->score};
            // Step over nulls to the next row that holds a value.
            while (shifted.start_row < shifted.end_row && !series[shifted.start_row - 1]) {
              ++shifted.start_row;
            }
            if (verify_span(series, ph.pattern, shifted, params)) chosen = shifted;
          }
          if (chosen) how = "the detected " + std::string(pattern_name(ph.pattern)) + " window of";
        } catch (const Error&) {
        }
      }
    }
    if (!chosen) {
      reason << " The trend " << quote(ph.surface) << " has no matching window in the column "
             << quote(column) << " and is not bound.";
      continue;
    }
    // A second phrase for the same window in the same sentence restates it.
    if (!bound_spans.emplace(column, chosen->start_row, chosen->end_row, sentence).second) {
      reason << " The trend " << quote(ph.surface) << " restates the window already bound on the column "
             << quote(column) << ".";
      continue;
    }
    cursor[column] = chosen->end_row;
    BindingRecord rec;
    rec.object_name = subj.text;
    rec.data_name = column;
    rec.position = {ref(column, chosen->start_row), ref(column, chosen->end_row)};
    rec.trend = ph.surface;
    rec.text = clean_clause(text, clause_around(text, ph.char_start, ph.char_end));
    reason << " The trend for object " << quote(subj.text) << " is " << quote(ph.surface)
           << " (" << pattern_name(ph.pattern) << ", " << trend_kind_name(ph.kind)
           << "), which corresponds to " << how << " the column " << quote(column);
    if (chosen->start_row == chosen->end_row) {
      reason << " at row " << chosen->start_row << ".";
    } else {
      reason << " from row " << chosen->start_row << " to row " << chosen->end_row << ".";
    }
    pending.push_back({ph.char_start, std::move(rec)});
  }

  std::stable_sort(pending.begin(), pending.end(),
                   [](const PendingRecord& a, const PendingRecord& b) { return a.pos < b.pos; });
  BindingResult out;
  for (auto& p : pending) out.records.push_back(std::move(p.record));
  out.reason = reason.str();
  return out;
}

}  // namespace layerchart
