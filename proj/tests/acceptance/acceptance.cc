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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero when any selected criterion fails. `--only N` runs one.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "app/engine.h"
#include "app/eval.h"
#include "app/pipeline.h"
#include "app/scaling.h"
#include "binder/evaluate.h"
#include "binder/prompt.h"
#include "core/binding.h"
#include "core/error.h"
#include "core/metrics.h"
#include "core/table.h"
#include "core/util.h"
#include "gif_reader.h"
#include "overlay/overlay.h"
#include "overlay/placement.h"
#include "render/layout.h"
#include "trend_oracle.h"
#include "trendlex/detectors.h"
#include "trendlex/lexicon.h"

using namespace layerchart;

namespace {

// Tolerances.
constexpr double kTableF1Tolerance = 0.0005;
constexpr double kDetectorBudgetSeconds = 30.0;
constexpr double kScalingBudgetSeconds = 120.0;
constexpr double kFixtureBudgetSeconds = 1.0;
constexpr size_t kSeriesPerPattern = 1000;
constexpr size_t kOverlaySets = 500;
constexpr double kMarkerRadius = 2.0;

std::string data_path(const std::string& name) { return std::string(LAYERCHART_TEST_DATA) + "/" + name; }

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<std::string> field_names(const std::string& doc) {
  static const std::regex key(R"re("([A-Za-z]+)"\s*:)re");
  std::vector<std::string> out;
  for (auto it = std::sregex_iterator(doc.begin(), doc.end(), key); it != std::sregex_iterator(); ++it) {
    out.push_back((*it)[1]);
  }
  return out;
}

Outcome reference_binding_exactness() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const std::string gdp_doc = read_file(data_path("binding_gdp.txt"));
  const std::string hedge_doc = read_file(data_path("binding_hedge.txt"));
  auto gdp = parse_binding_document(gdp_doc);
  auto hedge = parse_binding_document(hedge_doc);

  o.require(gdp.records.size() == 2, "gdp record count");
  if (gdp.records.size() == 2) {
    const auto& a = gdp.records[0];
    const auto& b = gdp.records[1];
    o.require(a.object_name == "change in real GDP" && b.object_name == "change in real GDP", "gdp ObjectName");
    o.require(a.position[0].row == 7 && a.position[1].row == 10 && a.trend == "sharp decrease",
              "gdp first span");
    o.require(b.position[0].row == 11 && b.position[1].row == 14 && b.trend == "rise", "gdp second span");
  }
  o.require(hedge.records.size() == 3, "hedge record count");
  const std::pair<const char*, size_t> cells[] = {{"Active", 3}, {"Launches", 1}, {"Liquidations", 2}};
  const double values[] = {669, 5, 18};
  for (size_t i = 0; i < hedge.records.size() && i < 3; ++i) {
    const auto& r = hedge.records[i];
    o.require(r.position[0] == CellRef{cells[i].first, cells[i].second} && r.position[1] == r.position[0],
              std::string("hedge position ") + cells[i].first);
    o.require(r.num && *r.num == std::vector<double>{values[i]}, std::string("hedge value ") + cells[i].first);
  }

  const std::vector<std::string> six = {"ObjectName", "DataName", "Position", "Trend", "Num", "Text"};
  for (const auto& [doc, result] : {std::pair{gdp_doc, gdp}, std::pair{hedge_doc, hedge}}) {
    const auto source = field_names(doc);
    const auto wire = field_names(serialize_binding(result));
    o.require(wire == source, "re-serialized field names differ from the source document");
    for (size_t i = 0; i < wire.size(); ++i) o.require(wire[i] == six[i % 6], "field name order");
    o.require(parse_binding_document(serialize_binding(result)) == result, "round trip");
  }
  const double t = seconds_since(t0);
  o.require(t < kFixtureBudgetSeconds, "runtime " + std::to_string(t) + " s");
  if (o.pass) o.detail = "2 gdp spans, 3 hedge values, 6 field names exact";
  return o;
}

Outcome table_identities() {
  Outcome o;
  struct Cell {
    const char* model;
    const char* kind;
    double p, r, f1;
  };
  // Reported precision, recall and F1 for every model and vocabulary kind.
  const Cell cells[] = {
      {"zero-shot GPT-3.5", "subject", 0.8921, 0.9615, 0.9091},
      {"zero-shot GPT-3.5", "trend", 0.9130, 0.8077, 0.8571},
      {"zero-shot GPT-3.5", "numerical", 1.0000, 0.6364, 0.7778},
      {"zero-shot GPT-4", "subject", 0.9259, 0.9615, 0.9434},
      {"zero-shot GPT-4", "trend", 0.7667, 0.8846, 0.8214},
      {"zero-shot GPT-4", "numerical", 0.9048, 0.8636, 0.8837},
      {"grounded w/o CoT", "subject", 0.8929, 0.9615, 0.9259},
      {"grounded w/o CoT", "trend", 0.8846, 0.8846, 0.8846},
      {"grounded w/o CoT", "numerical", 0.9000, 0.8182, 0.8571},
      {"grounded w/o DP", "subject", 0.8000, 0.9231, 0.8571},
      {"grounded w/o DP", "trend", 0.8400, 0.8077, 0.8235},
      {"grounded w/o DP", "numerical", 0.8571, 0.8182, 0.8372},
      {"grounded", "subject", 0.8966, 1.0000, 0.9455},
      {"grounded", "trend", 0.9565, 0.8462, 0.8980},
      {"grounded", "numerical", 1.0000, 0.8636, 0.9268},
  };
  size_t ok = 0;
  std::string misses;
  for (const auto& c : cells) {
    const double f1 = f1_from_precision_recall(c.p, c.r);
    if (std::fabs(f1 - c.f1) <= kTableF1Tolerance) {
      ++ok;
    } else {
      char buf[160];
      std::snprintf(buf, sizeof(buf), "%s%s/%s: 2PR/(P+R)=%.4f, reported %.4f", misses.empty() ? "" : "; ",
                    c.model, c.kind, f1, c.f1);
      misses += buf;
    }
  }
  o.pass = ok == std::size(cells);
  o.detail = std::to_string(ok) + "/" + std::to_string(std::size(cells)) + " cells within 0.0005";
  if (!misses.empty()) o.detail += " (" + misses + ")";
  return o;
}

Outcome detector_oracle() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937 rng(20260315);
  std::uniform_int_distribution<size_t> len(1, 12);
  std::uniform_int_distribution<int> val(0, 4);
  size_t disagreements = 0, total = 0;
  std::string first;
  for (PatternId p : kAllPatterns) {
    size_t checked = 0;
    while (checked < kSeriesPerPattern) {
      Series s(len(rng));
      for (auto& x : s) x = val(rng);
      test::Oracle oracle(s);
      if (oracle.v.size() < min_points(p)) {
        bool threw = false;
        try {
          detect_pattern(s, p);
        } catch (const Error&) {
          threw = true;
        }
        if (!threw) ++disagreements;
        continue;
      }
      auto got = detect_pattern(s, p);
      auto want = oracle.detect(p);
      bool same = got.size() == want.size();
      for (size_t i = 0; same && i < got.size(); ++i) {
        same = got[i].start_row == want[i].start_row && got[i].end_row == want[i].end_row &&
               std::fabs(got[i].score - want[i].score) <= 1e-12;
      }
      if (!same) {
        ++disagreements;
        if (first.empty()) first = pattern_name(p);
      }
      ++checked;
      ++total;
    }
  }
  const double t = seconds_since(t0);
  o.require(disagreements == 0, std::to_string(disagreements) + " disagreements, first in " + first);
  o.require(t < kDetectorBudgetSeconds, "runtime " + std::to_string(t) + " s");
  if (o.pass) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%zu series over %zu patterns, 0 disagreements, %.2f s", total,
                  std::size(kAllPatterns), t);
    o.detail = buf;
  }
  return o;
}

Outcome correspondence_table() {
  Outcome o;
  using K = OverlayKind;
  const std::map<CorrespondenceRow, std::vector<K>> expected = {
      {CorrespondenceRow::kSubject, {K::kHighlight}},
      {CorrespondenceRow::kNumerical, {K::kMarker, K::kLabel}},
      {CorrespondenceRow::kChangePattern, {K::kTrendLine, K::kDescription}},
      {CorrespondenceRow::kSummaryIndicator, {K::kOverallIndicator}},
      {CorrespondenceRow::kSpecialEvent, {K::kSpecialTimePoint}},
  };
  for (const auto& [row, kinds] : expected) o.require(correspondence(row) == kinds, "table row");

  auto kinds_of = [](const std::vector<OverlaySpec>& specs) {
    std::vector<K> out;
    for (const auto& s : specs) out.push_back(s.kind);
    return out;
  };
  BindingRecord num;
  num.object_name = num.data_name = "A";
  num.position = {CellRef{"A", 2}, CellRef{"A", 2}};
  num.num = std::vector<double>{3};
  num.text = "A reached 3";
  BindingRecord trend = num;
  trend.num.reset();
  trend.position[1].row = 5;
  trend.trend = "x";
  trend.text = "A went somewhere";

  o.require(overlays_for(trend, std::nullopt).front().kind == K::kHighlight, "subject row");
  o.require(kinds_of(overlays_for(num, std::nullopt)) == std::vector<K>{K::kHighlight, K::kMarker, K::kLabel},
            "numerical row");
  o.require(kinds_of(overlays_for(trend, TrendMatch{PatternId::kMonotoneRise, TrendKind::kChangePattern})) ==
                std::vector<K>{K::kHighlight, K::kTrendLine, K::kDescription},
            "change-pattern row");
  o.require(kinds_of(overlays_for(trend, TrendMatch{PatternId::kMeanLevel, TrendKind::kSummaryIndicator})) ==
                std::vector<K>{K::kHighlight, K::kOverallIndicator},
            "summary-indicator row");
  o.require(kinds_of(overlays_for(trend, TrendMatch{PatternId::kEventPoint, TrendKind::kSpecialEvent})) ==
                std::vector<K>{K::kHighlight, K::kSpecialTimePoint},
            "special-event row");
  BindingRecord bare = trend;
  bare.trend.reset();
  o.require(kinds_of(overlays_for(bare, std::nullopt)) == std::vector<K>{K::kHighlight}, "subject alone");

  // The lexicon routes attested phrases to the same rows.
  const auto& lex = default_lexicon();
  const std::pair<const char*, TrendKind> phrases[] = {
      {"sharp decrease", TrendKind::kChangePattern}, {"rise", TrendKind::kChangePattern}};
  for (const auto& [phrase, kind] : phrases) {
    auto m = classify_trend(phrase, lex);
    o.require(m && m->kind == kind, std::string("lexicon kind for ") + phrase);
  }
  if (o.pass) o.detail = "5 rows exact; overlays_for matches each row";
  return o;
}

Outcome layout_invariants() {
  Outcome o;
  std::mt19937 rng(500);
  auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const char* words[] = {"revenue", "fell", "sharply", "in", "the", "second", "quarter", "while", "costs", "rose"};
  size_t markers = 0, boxes_total = 0, overlays_total = 0;
  for (size_t iter = 0; iter < kOverlaySets; ++iter) {
    const int rows = uni(3, 30), cols = uni(1, 4);
    std::string csv = "Year";
    for (int c = 0; c < cols; ++c) csv += ",S" + std::to_string(c);
    csv += "\n";
    for (int r = 0; r < rows; ++r) {
      csv += std::to_string(1990 + r);
      for (int c = 0; c < cols; ++c) csv += "," + std::to_string(uni(-50, 500));
      csv += "\n";
    }
    DataTable t = parse_csv_table(csv);
    auto columns = t.numeric_column_names();
    const Canvas canvas{uni(320, 1200), uni(240, 800)};
    auto layout = layout_base_chart(t, columns, static_cast<ChartType>(uni(0, 3)), canvas);

    std::vector<OverlaySpec> specs;
    const int n = uni(1, 10);
    for (int k = 0; k < n; ++k) {
      OverlaySpec s;
      s.id = "o" + std::to_string(k + 1);
      s.kind = kAllOverlayKinds[uni(0, 8)];
      size_t a = static_cast<size_t>(uni(1, rows));
      size_t b = static_cast<size_t>(uni(static_cast<int>(a), rows));
      if (s.kind == OverlayKind::kMarker || s.kind == OverlayKind::kLabel) b = a;
      s.target = OverlayTarget{{columns[static_cast<size_t>(uni(0, cols - 1))]}, a, b};
      if (is_text_overlay(s.kind)) {
        const int nw = s.kind == OverlayKind::kLabel ? uni(1, 3) : uni(4, 16);
        std::string text;
        for (int w = 0; w < nw; ++w) text += (w ? " " : "") + std::string(words[uni(0, 9)]);
        s.text = text;
      }
      if (s.kind == OverlayKind::kOverallIndicator) s.statistic = Statistic{uni(0, 1) ? "max" : "mean", {}};
      specs.push_back(s);
    }
    std::vector<PlacedOverlay> placed;
    try {
      placed = place_overlays(specs, layout);
    } catch (const Error& e) {
      o.require(false, "set " + std::to_string(iter) + " threw: " + e.what());
      continue;
    }
    overlays_total += placed.size();
    const double W = canvas.width, H = canvas.height;
    std::vector<Rect> boxes;
    for (const auto& p : placed) {
      for (const auto& r : geometry_bounds(p.geometry)) {
        o.require(r.x >= 0 && r.y >= 0 && r.x + r.w <= W && r.y + r.h <= H,
                  "set " + std::to_string(iter) + ": geometry leaves the canvas");
      }
      if (p.geometry.circle) {
        ++markers;
        o.require(p.geometry.circle->r == kMarkerRadius, "marker radius");
      }
      if (p.geometry.text_box) boxes.push_back(*p.geometry.text_box);
    }
    boxes_total += boxes.size();
    for (size_t i = 0; i < boxes.size(); ++i) {
      for (size_t j = i + 1; j < boxes.size(); ++j) {
        const Rect &p = boxes[i], &q = boxes[j];
        const bool overlap = std::min(p.x + p.w, q.x + q.w) > std::max(p.x, q.x) &&
                             std::min(p.y + p.h, q.y + q.h) > std::max(p.y, q.y);
        o.require(!overlap, "set " + std::to_string(iter) + ": text boxes intersect");
      }
    }
  }
  o.require(markers > 0, "no markers generated");
  if (o.pass) {
    o.detail = std::to_string(kOverlaySets) + " sets, " + std::to_string(overlays_total) + " overlays, " +
               std::to_string(boxes_total) + " text boxes, " + std::to_string(markers) + " markers r=2";
  }
  return o;
}

Outcome power_sequence() {
  Outcome o;
  EngineOptions opts;
  opts.provider.kind = "fixture";
  opts.provider.fixture_dir = data_path("fixtures");
  Engine engine(opts);
  auto table = load_table_file(data_path("power.csv"));
  auto run = run_pipeline(table, read_file(data_path("power_article.txt")), engine);
  o.require(run.narratives.size() == 5, "narratives: " + std::to_string(run.narratives.size()));
  o.require(run.specs.size() == 5, "charts: " + std::to_string(run.specs.size()));
  const char* subjects[] = {"Coal", "Oil", "Natural gas", "Nuclear", "Renewables"};
  for (size_t i = 0; i < run.specs.size() && i < 5; ++i) {
    o.require(run.specs[i].order == i && run.specs[i].narrative_id == narrative_id(i), "chart order");
    bool highlighted = false;
    for (const auto& ov : run.specs[i].overlays) {
      if (ov.kind == OverlayKind::kHighlight && ov.target.columns.at(0) == subjects[i]) highlighted = true;
    }
    o.require(highlighted, std::string("chart ") + std::to_string(i) + " does not highlight " + subjects[i]);
  }

  const auto dir = std::filesystem::temp_directory_path() /
                   ("layerchart-acceptance-power-" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  write_pipeline_outputs(run, engine, dir.string());
  const std::string gif = read_file((dir / "sequence.gif").string());
  std::filesystem::remove_all(dir);
  try {
    auto info = test::read_gif(std::vector<uint8_t>(gif.begin(), gif.end()));
    o.require(info.rgb.size() == 5, "gif frames: " + std::to_string(info.rgb.size()));
  } catch (const std::exception& e) {
    o.require(false, std::string("gif unreadable: ") + e.what());
  }
  if (o.pass) o.detail = "5 charts in narrative order, 5-frame GIF";
  return o;
}

Outcome prompt_contract() {
  Outcome o;
  const PromptDb& db = default_prompt_db();
  o.require(db.size() == 50, "prompt DB holds " + std::to_string(db.size()) + " examples");
  const std::string query = read_file(data_path("gdp_narrative.txt"));
  auto picked = select_examples(Narrative{"n0", 0, query, std::nullopt}, db, RetrievalConfig{10});
  o.require(picked.size() == 10, "returned " + std::to_string(picked.size()));
  for (size_t i = 1; i < picked.size(); ++i) {
    o.require(picked[i - 1].similarity <= picked[i].similarity, "similarity decreases");
  }
  // Independent ranking from the DB's own vectors.
  const auto qv = db.vectorize(query);
  std::vector<double> sims;
  for (const auto& ex : db.examples()) {
    double dot = 0;
    for (const auto& [term, w] : qv) {
      auto it = ex.feature_vector.find(term);
      if (it != ex.feature_vector.end()) dot += w * it->second;
    }
    sims.push_back(dot);
  }
  const double best = *std::max_element(sims.begin(), sims.end());
  if (!picked.empty()) {
    o.require(std::fabs(picked.back().similarity - best) <= 1e-12, "most relevant is not last");
    std::vector<double> sorted = sims;
    std::sort(sorted.rbegin(), sorted.rend());
    o.require(picked.front().similarity >= sorted[9] - 1e-12, "a top-10 example was skipped");
  }
  if (o.pass) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "10 of 50, ascending, last similarity %.4f", picked.back().similarity);
    o.detail = buf;
  }
  return o;
}

Outcome gold_corpus() {
  Outcome o;
  auto gold = load_corpus_file(data_path("gold_corpus.json"));
  o.require(gold.narratives.size() == 20, "corpus size " + std::to_string(gold.narratives.size()));
  auto predicted = fallback_labels(gold, default_lexicon());
  auto report = evaluate(predicted.narratives, gold.narratives);
  o.require(report.numerical.f1 == 1.0, "numerical F1 " + std::to_string(report.numerical.f1));
  o.require(report.subject.f1 >= 0.9, "subject F1 " + std::to_string(report.subject.f1));
  o.require(format_report(report) == read_file(data_path("gold_expected_report.txt")),
            "report differs from the checked-in expectation");
  auto again = fallback_labels(gold, default_lexicon());
  o.require(format_report(evaluate(again.narratives, gold.narratives)) == format_report(report), "not deterministic");
  if (o.pass) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "numerical F1 %.4f, subject F1 %.4f", report.numerical.f1, report.subject.f1);
    o.detail = buf;
  }
  return o;
}

Outcome scaling_grid() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  Engine engine{EngineOptions{}};
  ScalingConfig cfg;
  auto cells = run_scaling(std::nullopt, cfg, engine);
  const double t = seconds_since(t0);
  std::set<std::pair<size_t, size_t>> seen;
  for (const auto& c : cells) {
    seen.emplace(c.rows, c.cols);
    o.require(c.total > 0 && c.accuracy == 1.0,
              "cell " + std::to_string(c.rows) + "x" + std::to_string(c.cols) + " accuracy " +
                  std::to_string(c.accuracy));
  }
  for (size_t cols : {2, 10}) {
    for (size_t rows : {20, 200}) o.require(seen.count({rows, cols}) == 1, "grid corner missing");
  }
  o.require(seen.size() == cells.size() && cells.size() == 25, "grid has " + std::to_string(cells.size()) + " cells");
  o.require(t < kScalingBudgetSeconds, "runtime " + std::to_string(t) + " s");
  if (o.pass) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "25 cells (2-10 cols x 20-200 rows) at 1.0, %.2f s", t);
    o.detail = buf;
  }
  return o;
}

Outcome metric_spot_check() {
  Outcome o;
  auto m = make_metrics(3, 1, 2);
  o.require(m.precision == 0.75, "precision");
  o.require(m.recall == 0.6, "recall");
  o.require(m.f1 == 2.0 / 3.0, "f1");
  if (o.pass) o.detail = "P=0.75 R=0.6 F1=2/3";
  return o;
}

struct Criterion {
  int number;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    std::string arg = argv[i];
    if (arg == "--only" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--only N]\n", argv[0]);
      return 2;
    }
  }
  const std::vector<Criterion> criteria = {
      {1, "binding document exactness", reference_binding_exactness},
      {2, "reported F1 identities", table_identities},
      {3, "detector vs exhaustive oracle", detector_oracle},
      {4, "overlay correspondence table", correspondence_table},
      {5, "layout invariants", layout_invariants},
      {6, "power sequence and GIF", power_sequence},
      {7, "dynamic prompt contract", prompt_contract},
      {8, "offline fallback on gold corpus", gold_corpus},
      {9, "scaling grid", scaling_grid},
      {10, "metric spot check", metric_spot_check},
  };
  if (only != 0 && (only < 1 || only > static_cast<int>(criteria.size()))) {
    std::fprintf(stderr, "no criterion %d\n", only);
    return 2;
  }
  int failed = 0;
  for (const auto& c : criteria) {
    if (only != 0 && c.number != only) continue;
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail = std::string("threw: ") + e.what();
    }
    std::printf("criterion %2d %s  %s: %s\n", c.number, out.pass ? "PASS" : "FAIL", c.name, out.detail.c_str());
    std::fflush(stdout);
    if (!out.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
