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

#include "binder/evaluate.h"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <set>
#include <tuple>

#include "binder/text_match.h"
#include "core/error.h"
#include "core/util.h"

namespace layerchart {
namespace {

bool word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }

// Case-insensitive occurrences of needle on word boundaries.
std::vector<size_t> find_all(const std::string& hay_lower, std::string_view needle) {
  std::vector<size_t> out;
  std::string n = to_lower(trim(needle));
  if (n.empty()) return out;
  size_t pos = 0;
  while ((pos = hay_lower.find(n, pos)) != std::string::npos) {
    bool left = pos == 0 || !word_char(hay_lower[pos - 1]) || !word_char(n.front());
    size_t end = pos + n.size();
    bool right = end >= hay_lower.size() || !word_char(hay_lower[end]) || !word_char(n.back());
    if (left && right) out.push_back(pos);
    pos += 1;
  }
  return out;
}

std::optional<std::string> unit_of(const DataTable& table, const std::string& column) {
  if (auto idx = table.column_index(column)) return table.columns[*idx].unit;
  auto parts = split_combined_column(column);
  if (!parts.empty()) {
    if (auto idx = table.column_index(parts.front())) return table.columns[*idx].unit;
  }
  return std::nullopt;
}

}  // namespace

std::string normalize_label(std::string_view text) {
  std::string out;
  bool space = false;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      space = !out.empty();
      continue;
    }
    if (space) out.push_back(' ');
    space = false;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  auto punct = [](char c) {
    return c == '.' || c == ',' || c == ';' || c == ':' || c == '!' || c == '?' || c == '"' ||
           c == '\'' || c == '(' || c == ')';
  };
  size_t a = 0, b = out.size();
  while (a < b && punct(out[a])) ++a;
  while (b > a && punct(out[b - 1])) --b;
  return std::string(trim(std::string_view(out).substr(a, b - a)));
}

const Metrics& EvaluationReport::for_kind(VocabKind kind) const {
  switch (kind) {
    case VocabKind::kSubject: return subject;
    case VocabKind::kTrend: return trend;
    case VocabKind::kNumerical: return numerical;
  }
  return subject;
}

EvaluationReport evaluate(const std::vector<LabeledNarrative>& predicted,
                          const std::vector<LabeledNarrative>& gold) {
  using Key = std::pair<VocabKind, std::string>;
  std::map<std::string, std::set<Key>> pred_sets, gold_sets;
  std::set<std::string> ids;
  for (const auto& n : predicted) {
    ids.insert(n.id);
    for (const auto& s : n.spans) pred_sets[n.id].insert({s.kind, normalize_label(s.text)});
  }
  for (const auto& n : gold) {
    ids.insert(n.id);
    for (const auto& s : n.spans) gold_sets[n.id].insert({s.kind, normalize_label(s.text)});
  }
  size_t tp[3] = {0, 0, 0}, fp[3] = {0, 0, 0}, fn[3] = {0, 0, 0};
  for (const auto& id : ids) {
    const auto& p = pred_sets[id];
    const auto& g = gold_sets[id];
    for (const auto& k : p) (g.count(k) ? tp : fp)[static_cast<int>(k.first)]++;
    for (const auto& k : g) {
      if (!p.count(k)) fn[static_cast<int>(k.first)]++;
    }
  }
  EvaluationReport r;
  r.subject = make_metrics(tp[0], fp[0], fn[0]);
  r.trend = make_metrics(tp[1], fp[1], fn[1]);
  r.numerical = make_metrics(tp[2], fp[2], fn[2]);
  return r;
}

std::string format_report(const EvaluationReport& report) {
  std::string out = "kind        precision  recall     f1         tp    fp    fn\n";
  for (VocabKind k : {VocabKind::kSubject, VocabKind::kTrend, VocabKind::kNumerical}) {
    const Metrics& m = report.for_kind(k);
    char line[160];
    std::snprintf(line, sizeof(line), "%-11s %-10.4f %-10.4f %-10.4f %-5zu %-5zu %zu\n",
                  vocab_kind_name(k), m.precision, m.recall, m.f1, m.tp, m.fp, m.fn);
    out += line;
  }
  return out;
}

nlohmann::json report_to_json(const EvaluationReport& report) {
  nlohmann::json out = nlohmann::json::object();
  for (VocabKind k : {VocabKind::kSubject, VocabKind::kTrend, VocabKind::kNumerical}) {
    const Metrics& m = report.for_kind(k);
    out[vocab_kind_name(k)] = {{"precision", m.precision}, {"recall", m.recall}, {"f1", m.f1},
                               {"tp", m.tp},               {"fp", m.fp},         {"fn", m.fn}};
  }
  return out;
}

LabelCorpus corpus_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("narratives") || !doc["narratives"].is_array()) {
    throw Error(ErrorCode::kParse, "label corpus needs a 'narratives' array");
  }
  LabelCorpus corpus;
  try {
    if (doc.contains("tables")) {
      for (const auto& [name, t] : doc["tables"].items()) {
        DataTable table = table_from_json(t);
        if (table.name.empty()) table.name = name;
        corpus.tables.emplace(name, std::move(table));
      }
    }
    std::set<std::string> seen;
    for (const auto& n : doc["narratives"]) {
      LabeledNarrative ln;
      ln.id = n.at("id").get<std::string>();
      if (!seen.insert(ln.id).second) {
        throw Error(ErrorCode::kParse, "duplicate narrative id '" + ln.id + "'");
      }
      ln.text = n.value("text", std::string());
      ln.table = n.value("table", std::string());
      if (!ln.table.empty() && doc.contains("tables") && !corpus.tables.count(ln.table)) {
        throw Error(ErrorCode::kParse, "narrative '" + ln.id + "' names unknown table '" + ln.table + "'");
      }
      for (const auto& s : n.value("spans", nlohmann::json::array())) {
        auto kind = parse_vocab_kind(s.at("kind").get<std::string>());
        if (!kind) {
          throw Error(ErrorCode::kParse, "narrative '" + ln.id + "': unknown kind '" +
                                             s.at("kind").get<std::string>() + "'");
        }
        ln.spans.push_back({*kind, s.at("text").get<std::string>()});
      }
      corpus.narratives.push_back(std::move(ln));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("label corpus: ") + e.what());
  }
  return corpus;
}

nlohmann::json corpus_to_json(const LabelCorpus& corpus) {
  nlohmann::json doc = nlohmann::json::object();
  if (!corpus.tables.empty()) {
    doc["tables"] = nlohmann::json::object();
    for (const auto& [name, t] : corpus.tables) doc["tables"][name] = table_to_json(t);
  }
  doc["narratives"] = nlohmann::json::array();
  for (const auto& n : corpus.narratives) {
    nlohmann::json j = {{"id", n.id}};
    if (!n.table.empty()) j["table"] = n.table;
    if (!n.text.empty()) j["text"] = n.text;
    j["spans"] = nlohmann::json::array();
    for (const auto& s : n.spans) j["spans"].push_back({{"kind", vocab_kind_name(s.kind)}, {"text", s.text}});
    doc["narratives"].push_back(std::move(j));
  }
  return doc;
}

LabelCorpus load_corpus_file(const std::string& path) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, path + ": " + e.what());
  }
  return corpus_from_json(doc);
}

std::vector<VocabSpan> derive_vocab_spans(std::string_view text, const BindingResult& result,
                                          const DataTable& table) {
  const std::string lower = to_lower(text);
  std::vector<VocabSpan> spans;
  auto add = [&](VocabKind kind, size_t start, size_t len) {
    spans.push_back({kind, std::string(text.substr(start, len)), start, start + len});
  };
  const auto numbers = find_numbers(text);
  for (const auto& r : result.records) {
    std::string object(trim(r.object_name));
    for (size_t at : find_all(lower, object)) add(VocabKind::kSubject, at, object.size());
    if (r.trend) {
      std::string trend(trim(*r.trend));
      auto hits = find_all(lower, trend);
      auto within = find_all(lower, trim(r.text));
      std::optional<size_t> chosen;
      for (size_t w : within) {
        for (size_t h : hits) {
          if (h >= w && h + trend.size() <= w + trim(r.text).size()) {
            chosen = h;
            break;
          }
        }
        if (chosen) break;
      }
      if (!chosen && !hits.empty()) chosen = hits.front();
      if (chosen) add(VocabKind::kTrend, *chosen, trend.size());
    }
    if (r.num) {
      auto unit = unit_of(table, r.data_name);
      for (const auto& n : numbers) {
        bool hit = false;
        for (double cand : candidate_values(n, unit)) {
          for (double v : *r.num) hit = hit || values_equal(cand, v);
        }
        if (hit) add(VocabKind::kNumerical, n.start, n.end - n.start);
      }
    }
  }
  std::sort(spans.begin(), spans.end(), [](const VocabSpan& a, const VocabSpan& b) {
    return std::tie(a.char_start, a.char_end, a.kind) < std::tie(b.char_start, b.char_end, b.kind);
  });
  spans.erase(std::unique(spans.begin(), spans.end()), spans.end());
  return spans;
}

std::vector<LabeledSpan> labels_from_binding(std::string_view text, const BindingResult& result,
                                             const DataTable& table) {
  std::vector<LabeledSpan> out;
  for (const auto& s : derive_vocab_spans(text, result, table)) out.push_back({s.kind, s.text});
  auto present = [&](VocabKind k, const std::string& t) {
    std::string n = normalize_label(t);
    return std::any_of(out.begin(), out.end(), [&](const LabeledSpan& l) {
      return l.kind == k && normalize_label(l.text) == n;
    });
  };
  for (const auto& r : result.records) {
    if (!present(VocabKind::kSubject, r.object_name)) out.push_back({VocabKind::kSubject, r.object_name});
    if (r.trend && !present(VocabKind::kTrend, *r.trend)) out.push_back({VocabKind::kTrend, *r.trend});
    if (r.num) {
      auto own = derive_vocab_spans(text, BindingResult{{r}, ""}, table);
      bool located = std::any_of(own.begin(), own.end(), [](const VocabSpan& s) {
        return s.kind == VocabKind::kNumerical;
      });
      if (!located) {
        for (double v : *r.num) out.push_back({VocabKind::kNumerical, format_number(v)});
      }
    }
  }
  return out;
}

}  // namespace layerchart
