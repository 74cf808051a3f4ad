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

#include "binder/text_match.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <map>
#include <set>

#include "core/util.h"
#include "trendlex/lexicon.h"

namespace layerchart {
namespace {

bool is_alpha(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }
bool is_alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }
bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

const std::set<std::string, std::less<>> kAbbreviations = {
    "e.g", "i.e", "mr", "mrs", "ms", "dr", "vs", "inc", "co", "ltd", "corp",
    "jan", "feb", "mar", "apr", "jun", "jul", "aug", "sep", "sept", "oct",
    "nov", "dec", "no", "approx", "est", "st", "u.s", "u.k", "etc"};

const std::set<std::string, std::less<>> kStopWords = {
    "a", "an", "the", "and", "or", "of", "to", "in", "on", "at", "for", "by",
    "with", "from", "below", "above", "per", "as", "its", "their"};

const std::set<std::string, std::less<>> kJoiners = {"and", "both", "the", "plus", "as",
                                                     "well", "together", "with"};

const std::set<std::string, std::less<>> kClauseWords = {"then", "while", "whereas", "but"};

// Word before position `dot` (exclusive), lowercased, dots kept.
std::string word_before(std::string_view text, size_t dot) {
  size_t b = dot;
  while (b > 0 && (is_alpha(text[b - 1]) || text[b - 1] == '.')) --b;
  return to_lower(text.substr(b, dot - b));
}

}  // namespace

std::vector<TextRange> split_sentences(std::string_view text) {
  std::vector<TextRange> out;
  size_t start = 0;
  size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c != '.' && c != '!' && c != '?') {
      ++i;
      continue;
    }
    size_t j = i + 1;
    while (j < text.size() && (text[j] == '.' || text[j] == '!' || text[j] == '?')) ++j;
    while (j < text.size() && (text[j] == '"' || text[j] == '\'' || text[j] == ')' ||
                               text[j] == ']'))
      ++j;
    if (j < text.size() && !is_space(text[j])) {
      i = j;
      continue;
    }
    if (c == '.') {
      std::string w = word_before(text, i);
      bool initial = w.size() == 1 && i > 0 && std::isupper(static_cast<unsigned char>(text[i - 1]));
      if (kAbbreviations.count(w) || initial) {
        i = j;
        continue;
      }
    }
    size_t k = j;
    while (k < text.size() && is_space(text[k])) ++k;
    if (k < text.size()) {
      char n = text[k];
      bool opens = std::isupper(static_cast<unsigned char>(n)) || is_digit(n) || n == '"' ||
                   n == '\'' || n == '(' || n == '[';
      if (!opens) {
        i = j;
        continue;
      }
    }
    out.push_back({start, k});
    start = k;
    i = k;
  }
  if (start < text.size()) {
    if (!trim(text.substr(start)).empty() || out.empty()) {
      out.push_back({start, text.size()});
    } else {
      out.back().end = text.size();
    }
  }
  return out;
}

TextRange clause_around(std::string_view text, size_t start, size_t end) {
  TextRange sentence{0, text.size()};
  for (const auto& s : split_sentences(text)) {
    if (start >= s.start && start < s.end) {
      sentence = s;
      break;
    }
  }
  size_t lo = sentence.start;
  size_t hi = sentence.end;
  for (size_t i = sentence.start; i < start; ++i) {
    if (text[i] == ',' || text[i] == ';' || text[i] == ':') lo = i + 1;
  }
  for (size_t i = end; i < sentence.end; ++i) {
    if (text[i] == ',' || text[i] == ';' || text[i] == ':') {
      hi = i;
      break;
    }
  }
  for (const auto& tok : word_tokens(text.substr(lo, hi - lo))) {
    if (!kClauseWords.count(tok.norm)) continue;
    size_t at = lo + tok.start;
    if (at + tok.norm.size() <= start) {
      lo = std::max(lo, at + tok.norm.size());
    } else if (at >= end) {
      hi = std::min(hi, at);
      break;
    }
  }
  std::string_view piece = text.substr(lo, hi - lo);
  size_t a = 0;
  while (a < piece.size() && is_space(piece[a])) ++a;
  size_t b = piece.size();
  while (b > a && is_space(piece[b - 1])) --b;
  size_t abs_hi = lo + b;
  if (abs_hi < text.size() && (text[abs_hi] == '.' || text[abs_hi] == '!' || text[abs_hi] == '?'))
    ++abs_hi;
  return {lo + a, abs_hi};
}

std::string stem_token(std::string_view token) {
  std::string s = to_lower(token);
  auto ends = [&](std::string_view suf) {
    return s.size() >= suf.size() && s.compare(s.size() - suf.size(), suf.size(), suf) == 0;
  };
  if (s.size() > 4 && ends("ies")) {
    s.replace(s.size() - 3, 3, "y");
  } else if (s.size() > 5 && ends("ing")) {
    s.resize(s.size() - 3);
  } else if (s.size() > 4 && ends("ed")) {
    s.resize(s.size() - 2);
  } else if (s.size() > 4 && (ends("ches") || ends("shes") || ends("sses") || ends("xes"))) {
    s.resize(s.size() - 2);
  } else if (s.size() > 3 && ends("s") && !ends("ss") && !ends("us") && !ends("is")) {
    s.resize(s.size() - 1);
  }
  return s;
}

bool tokens_match(std::string_view a, std::string_view b) {
  std::string sa = stem_token(a);
  std::string sb = stem_token(b);
  if (sa == sb) return true;
  size_t shorter = std::min(sa.size(), sb.size());
  if (shorter < 4) return false;
  size_t common = 0;
  while (common < shorter && sa[common] == sb[common]) ++common;
  return common >= 5 && static_cast<double>(common) >= 0.8 * static_cast<double>(shorter);
}

std::vector<std::string> column_tokens(std::string_view column) {
  std::vector<std::string> out;
  for (const auto& t : word_tokens(column)) {
    if (kStopWords.count(t.norm)) continue;
    if (std::find(out.begin(), out.end(), t.norm) == out.end()) out.push_back(t.norm);
  }
  if (out.empty()) {
    for (const auto& t : word_tokens(column)) out.push_back(t.norm);
  }
  return out;
}

std::vector<ColumnMention> find_column_mentions(std::string_view text, const DataTable& table,
                                                double threshold) {
  std::vector<ColumnMention> all;
  const auto numeric = table.numeric_column_names();
  for (const auto& sentence : split_sentences(text)) {
    std::string_view stext = text.substr(sentence.start, sentence.end - sentence.start);
    auto toks = word_tokens(stext);
    for (const auto& col : numeric) {
      auto ctoks = column_tokens(col);
      if (ctoks.empty()) continue;
      // hits: (token index, column token index)
      std::vector<std::pair<size_t, size_t>> hits;
      for (size_t i = 0; i < toks.size(); ++i) {
        for (size_t k = 0; k < ctoks.size(); ++k) {
          if (tokens_match(toks[i].norm, ctoks[k])) {
            hits.emplace_back(i, k);
            break;
          }
        }
      }
      size_t h = 0;
      while (h < hits.size()) {
        size_t e = h;
        while (e + 1 < hits.size() && hits[e + 1].first - hits[e].first <= 4) ++e;
        std::set<size_t> distinct;
        for (size_t q = h; q <= e; ++q) distinct.insert(hits[q].second);
        double score = static_cast<double>(distinct.size()) / static_cast<double>(ctoks.size());
        if (score + 1e-12 >= threshold) {
          ColumnMention m;
          m.column = col;
          m.start = sentence.start + toks[hits[h].first].start;
          m.end = sentence.start + toks[hits[e].first].end;
          // Widen to a verbatim occurrence of the full column name.
          const std::string lower_text = to_lower(text);
          const std::string lower_col = to_lower(col);
          for (size_t at = lower_text.find(lower_col, sentence.start);
               at != std::string::npos && at < m.end; at = lower_text.find(lower_col, at + 1)) {
            if (at <= m.start && at + lower_col.size() >= m.end &&
                at + lower_col.size() <= sentence.end) {
              m.start = at;
              m.end = at + lower_col.size();
              break;
            }
          }
          m.text = std::string(text.substr(m.start, m.end - m.start));
          m.score = score;
          m.matched_tokens = distinct.size();
          all.push_back(std::move(m));
        }
        h = e + 1;
      }
    }
  }
  std::vector<size_t> order(all.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    const auto& x = all[a];
    const auto& y = all[b];
    if (x.matched_tokens != y.matched_tokens) return x.matched_tokens > y.matched_tokens;
    if (x.score != y.score) return x.score > y.score;
    return x.start < y.start;
  });
  std::vector<ColumnMention> kept;
  for (size_t idx : order) {
    const auto& m = all[idx];
    bool overlaps = std::any_of(kept.begin(), kept.end(), [&](const ColumnMention& k) {
      return m.start < k.end && k.start < m.end;
    });
    if (!overlaps) kept.push_back(m);
  }
  std::sort(kept.begin(), kept.end(),
            [](const ColumnMention& a, const ColumnMention& b) { return a.start < b.start; });

  // Merge "A and B" into one combined subject.
  std::vector<ColumnMention> merged;
  for (auto& m : kept) {
    if (!merged.empty()) {
      auto& prev = merged.back();
      std::string_view gap = text.substr(prev.end, m.start - prev.end);
      auto gap_tokens = word_tokens(gap);
      bool joined = !gap_tokens.empty() && gap.find_first_of(".;:!?") == std::string_view::npos;
      bool has_and = false;
      for (const auto& t : gap_tokens) {
        if (!kJoiners.count(t.norm)) joined = false;
        if (t.norm == "and" || t.norm == "plus") has_and = true;
      }
      if (gap.find('&') != std::string_view::npos) has_and = true;
      if (gap_tokens.empty() && trim(gap) == "&") joined = true;
      std::vector<std::string> parts = prev.parts.empty() ? std::vector<std::string>{prev.column}
                                                          : prev.parts;
      bool distinct = std::find(parts.begin(), parts.end(), m.column) == parts.end();
      if (joined && has_and && distinct) {
        parts.push_back(m.column);
        prev.parts = parts;
        prev.column = combined_column_name(parts);
        prev.end = m.end;
        prev.text = std::string(text.substr(prev.start, prev.end - prev.start));
        prev.score = std::min(prev.score, m.score);
        prev.matched_tokens += m.matched_tokens;
        continue;
      }
    }
    merged.push_back(std::move(m));
  }
  return merged;
}

const ColumnMention* primary_mention(const std::vector<ColumnMention>& mentions) {
  const ColumnMention* best = nullptr;
  for (const auto& m : mentions) {
    if (!best || m.score > best->score ||
        (m.score == best->score && m.matched_tokens > best->matched_tokens)) {
      best = &m;
    }
  }
  return best;
}

namespace {

struct ScaleWord {
  std::string_view word;
  double scale;
};
constexpr std::array<ScaleWord, 9> kScaleWords = {{{"trillion", 1e12},
                                                   {"tn", 1e12},
                                                   {"billion", 1e9},
                                                   {"bn", 1e9},
                                                   {"million", 1e6},
                                                   {"mn", 1e6},
                                                   {"mln", 1e6},
                                                   {"thousand", 1e3},
                                                   {"k", 1e3}}};

const std::map<std::string, double, std::less<>> kNumberWords = {
    {"two", 2},       {"three", 3},     {"four", 4},      {"five", 5},      {"six", 6},
    {"seven", 7},     {"eight", 8},     {"nine", 9},      {"ten", 10},      {"eleven", 11},
    {"twelve", 12},   {"thirteen", 13}, {"fourteen", 14}, {"fifteen", 15},  {"sixteen", 16},
    {"seventeen", 17}, {"eighteen", 18}, {"nineteen", 19}, {"twenty", 20},  {"thirty", 30},
    {"forty", 40},    {"fifty", 50},    {"sixty", 60},    {"seventy", 70},  {"eighty", 80},
    {"ninety", 90}};

// Reads the alphabetic word starting at i.
std::string_view word_at(std::string_view text, size_t i) {
  size_t j = i;
  while (j < text.size() && is_alpha(text[j])) ++j;
  return text.substr(i, j - i);
}

// Applies trailing markers ("%", "percent", scale words, "bps") after `pos`
// and extends the surface over them.
void read_suffixes(std::string_view text, size_t pos, NumberMention& n) {
  auto extend_to = [&](size_t end) {
    n.end = end;
    n.surface = std::string(text.substr(n.start, n.end - n.start));
  };
  size_t i = pos;
  if (i < text.size() && text[i] == '%') {
    n.percent = true;
    extend_to(i + 1);
    return;
  }
  bool attached = i < text.size() && is_alpha(text[i]);
  size_t k = i;
  while (k < text.size() && text[k] == ' ') ++k;
  std::string_view raw = word_at(text, k);
  std::string w = to_lower(raw);
  if (w.empty()) return;
  if (w == "percent" || w == "pct") {
    n.percent = true;
    extend_to(k + raw.size());
    return;
  }
  if (w == "per") {
    size_t k2 = k + 3;
    while (k2 < text.size() && text[k2] == ' ') ++k2;
    std::string_view cent = word_at(text, k2);
    if (to_lower(cent) == "cent") {
      n.percent = true;
      extend_to(k2 + cent.size());
    }
    return;
  }
  if (w == "bps" || w == "bp") {
    n.bps = true;
    extend_to(k + raw.size());
    return;
  }
  if (w == "basis") {
    size_t k2 = k + raw.size();
    while (k2 < text.size() && text[k2] == ' ') ++k2;
    std::string_view points = word_at(text, k2);
    if (to_lower(points).rfind("point", 0) == 0) {
      n.bps = true;
      extend_to(k2 + points.size());
    }
    return;
  }
  for (const auto& s : kScaleWords) {
    if (w == s.word) {
      // "k" only counts when written attached ("5k").
      if (s.word == "k" && !attached) return;
      n.scale = s.scale;
      extend_to(k + raw.size());
      return;
    }
  }
}

}  // namespace

std::vector<NumberMention> find_numbers(std::string_view text) {
  std::vector<NumberMention> out;
  size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    bool prev_alnum = i > 0 && (is_alnum(text[i - 1]) || text[i - 1] == '.' || text[i - 1] == '_');
    if (is_digit(c) && !prev_alnum) {
      size_t j = i;
      bool grouped = false;
      while (j < text.size() && is_digit(text[j])) ++j;
      while (j + 3 < text.size() && text[j] == ',' && is_digit(text[j + 1]) &&
             is_digit(text[j + 2]) && is_digit(text[j + 3]) &&
             (j + 4 >= text.size() || !is_digit(text[j + 4]))) {
        j += 4;
        grouped = true;
      }
      bool decimal = false;
      if (j + 1 < text.size() && text[j] == '.' && is_digit(text[j + 1])) {
        decimal = true;
        ++j;
        while (j < text.size() && is_digit(text[j])) ++j;
      }
      size_t start = i;
      if (i > 0 && text[i - 1] == '-' && (i == 1 || !is_alnum(text[i - 2]))) start = i - 1;
      // Reject identifiers like "3D" or "COVID19x".
      bool attached_alpha = j < text.size() && is_alpha(text[j]);
      std::string_view tail = attached_alpha ? word_at(text, j) : std::string_view{};
      std::string tl = to_lower(tail);
      bool unit_tail = tl == "bn" || tl == "tn" || tl == "mn" || tl == "k" || tl == "bps" ||
                       tl == "bp" || tl == "pct" || tl == "mln";
      if (attached_alpha && !unit_tail) {
        i = j + tail.size();
        continue;
      }
      NumberMention n;
      std::string lit(text.substr(start, j - start));
      lit.erase(std::remove(lit.begin(), lit.end(), ','), lit.end());
      auto v = parse_number(lit);
      if (!v) {
        i = j;
        continue;
      }
      n.value = *v;
      n.start = start;
      n.end = j;
      n.surface = std::string(text.substr(start, j - start));
      read_suffixes(text, j, n);
      n.year_like = !decimal && !grouped && !n.percent && !n.bps && n.scale == 1.0 &&
                    start == i && n.value >= 1800 && n.value <= 2200 && j - i == 4 && n.end == j;
      out.push_back(std::move(n));
      i = j;
      continue;
    }
    if (is_alpha(c) && (i == 0 || !is_alnum(text[i - 1]))) {
      std::string_view w = word_at(text, i);
      auto it = kNumberWords.find(to_lower(w));
      if (it != kNumberWords.end()) {
        NumberMention n;
        n.value = it->second;
        n.word = true;
        n.start = i;
        n.end = i + w.size();
        n.surface = std::string(w);
        read_suffixes(text, n.end, n);
        out.push_back(std::move(n));
      }
      i += w.size();
      continue;
    }
    ++i;
  }
  return out;
}

double unit_scale(std::string_view unit) {
  for (const auto& t : word_tokens(unit)) {
    for (const auto& s : kScaleWords) {
      if (t.norm == s.word && s.word != "k") return s.scale;
    }
  }
  return 1.0;
}

std::vector<double> candidate_values(const NumberMention& n,
                                     const std::optional<std::string>& column_unit) {
  std::vector<double> out;
  auto add = [&](double v) {
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  };
  double col_scale = column_unit ? unit_scale(*column_unit) : 1.0;
  bool col_percent = column_unit && column_unit->find('%') != std::string::npos;
  bool col_bps = column_unit && to_lower(*column_unit).find("bp") != std::string::npos;
  if (n.bps) {
    if (col_percent) add(n.value / 100.0);
    add(n.value);
    return out;
  }
  if (n.percent) {
    add(n.value);
    if (col_bps) add(n.value * 100.0);
    if (!col_percent) add(n.value / 100.0);
    return out;
  }
  if (n.scale != 1.0) add(n.value * n.scale / col_scale);
  add(n.value);
  if (n.scale == 1.0 && col_scale != 1.0) add(n.value / col_scale);
  return out;
}

bool values_equal(double a, double b) {
  return std::fabs(a - b) <= 1e-9 * std::max({1.0, std::fabs(a), std::fabs(b)});
}

bool values_close(double a, double b) {
  return std::fabs(a - b) <= 0.005 * std::max(std::fabs(a), std::fabs(b));
}

}  // namespace layerchart
