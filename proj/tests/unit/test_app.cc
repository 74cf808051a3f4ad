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

#include <cmath>
#include <filesystem>
#include <functional>
#include <random>
#include <set>
#include <string>

#include "app/curate.h"
#include "app/engine.h"
#include "app/eval.h"
#include "app/pipeline.h"
#include "app/scaling.h"
#include "binder/evaluate.h"
#include "binder/prompt.h"
#include "core/error.h"
#include "core/util.h"
#include "doctest.h"
#include "gif_reader.h"
#include "test_support.h"
#include "trendlex/lexicon.h"

using namespace layerchart;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::kLayout;
}

const Engine& null_engine() {
  static const Engine engine{EngineOptions{}};
  return engine;
}

}  // namespace

TEST_CASE("gold corpus: numerical exact, subjects at least 0.9") {
  auto gold = load_corpus_file(test::data_path("gold_corpus.json"));
  REQUIRE(gold.narratives.size() == 20);

  auto predicted = fallback_labels(gold, default_lexicon());
  auto report = evaluate(predicted.narratives, gold.narratives);
  CHECK(report.numerical.f1 == 1.0);
  CHECK(report.subject.f1 >= 0.9);
  CHECK(format_report(report) == test::read_data("gold_expected_report.txt"));

  // Deterministic across runs.
  auto again = fallback_labels(gold, default_lexicon());
  CHECK(format_report(evaluate(again.narratives, gold.narratives)) == format_report(report));
}

TEST_CASE("gold corpus covers units and combined subjects") {
  auto gold = load_corpus_file(test::data_path("gold_corpus.json"));
  bool unit = false;
  bool combined = false;
  std::set<std::string> tables;
  for (const auto& n : gold.narratives) {
    tables.insert(n.table);
    if (n.text.find("trillion") != std::string::npos) unit = true;
    if (n.text.find(" and midsize") != std::string::npos) combined = true;
    for (const auto& s : n.spans) CHECK_FALSE(s.text.empty());
  }
  CHECK(unit);
  CHECK(combined);
  CHECK(tables.size() >= 5);
}

TEST_CASE("evaluate_files") {
  test::TempDir dir;
  auto gold = test::data_path("gold_corpus.json");
  auto same = evaluate_files(gold, gold);
  for (auto kind : {VocabKind::kSubject, VocabKind::kTrend, VocabKind::kNumerical}) {
    CHECK(same.for_kind(kind).f1 == 1.0);
    CHECK(same.for_kind(kind).fp == 0);
  }
  write_file(dir.file("bad.json"), "{\"narratives\": [ {\"id\": 3 ]");
  CHECK(code_of([&] { evaluate_files(gold, dir.file("bad.json")); }) == ErrorCode::kParse);
  CHECK(code_of([&] { evaluate_files(dir.file("missing.json"), gold); }) == ErrorCode::kIo);
}

TEST_CASE("engine_labels without a provider agree with the fallback") {
  auto gold = load_corpus_file(test::data_path("gold_corpus.json"));
  auto a = engine_labels(gold, null_engine());
  auto b = fallback_labels(gold, default_lexicon());
  CHECK(format_report(evaluate(a.narratives, gold.narratives)) ==
        format_report(evaluate(b.narratives, gold.narratives)));
}

TEST_CASE("grow_table produces the requested shape with unique values") {
  std::mt19937_64 rng(7);
  for (size_t rows : {1, 20, 65, 200}) {
    for (size_t cols : {1, 2, 5, 10}) {
      auto t = grow_table(DataTable{}, rows, cols, rng);
      CHECK(t.rows.size() == rows);
      size_t numeric = 0;
      for (const auto& c : t.columns) numeric += c.kind == ColumnKind::kNumeric;
      CHECK(numeric == cols);
      CHECK(validate_table(t).empty());
      std::set<long long> seen;
      for (const auto& row : t.rows) {
        for (size_t c = 0; c < row.size(); ++c) {
          if (t.columns[c].kind != ColumnKind::kNumeric) continue;
          double v = std::get<double>(row[c]);
          CHECK(v != std::floor(v));
          CHECK(seen.insert(std::llround(v * 10)).second);
        }
      }
    }
  }
}

TEST_CASE("grow_table keeps base columns and extends the axis") {
  std::mt19937_64 rng(1);
  auto base = test::power_table();
  auto t = grow_table(base, 30, 7, rng);
  REQUIRE(t.rows.size() == 30);
  CHECK(t.columns[1].name == base.columns[1].name);
  CHECK(std::get<double>(t.rows[0][1]) == std::get<double>(base.rows[0][1]));
  for (size_t r = 1; r < t.rows.size(); ++r) {
    auto year = parse_number(cell_to_string(t.rows[r][0]));
    REQUIRE(year);
    const double prev = *parse_number(cell_to_string(t.rows[r - 1][0]));
    if (r < base.rows.size()) {
      CHECK(*year > prev);
    } else {
      CHECK(*year == prev + 1);
    }
  }
  auto small = grow_table(base, 2, 2, rng);
  CHECK(small.rows.size() == 2);
  CHECK(small.columns.size() == 3);
}

TEST_CASE("scaling probes name a unique cell") {
  std::mt19937_64 rng(3);
  auto t = grow_table(DataTable{}, 40, 4, rng);
  auto probes = scaling_probes(t, 10, rng);
  REQUIRE(probes.size() == 10);
  for (const auto& p : probes) {
    auto col = t.column_index(p.column);
    REQUIRE(col);
    CHECK(std::get<double>(t.rows[p.row - 1][*col]) == p.value);
    CHECK(p.text.find(p.column) == 0);
    CHECK(p.text.find(format_number(p.value)) != std::string::npos);
    CHECK(p.text.find(t.row_label(p.row)) != std::string::npos);
  }
}

TEST_CASE("scaling grid is complete and exact without a provider") {
  ScalingConfig cfg;
  auto cells = run_scaling(std::nullopt, cfg, null_engine());
  // 2..10 step 2 columns, 20..200 step 45 rows.
  CHECK(cells.size() == 5 * 5);
  std::set<std::pair<size_t, size_t>> grid;
  for (const auto& c : cells) {
    grid.emplace(c.rows, c.cols);
    CHECK(c.total == cfg.narratives_per_cell);
    CHECK(c.correct == c.total);
    CHECK(c.accuracy == 1.0);
  }
  CHECK(grid.size() == cells.size());
  CHECK(grid.count({20, 2}) == 1);
  CHECK(grid.count({200, 10}) == 1);

  auto csv = scaling_csv(cells);
  CHECK(csv.rfind("rows,cols,accuracy\n", 0) == 0);
  CHECK(split(csv, '\n').size() >= cells.size() + 1);
  CHECK(csv.find("200,10,1.0000\n") != std::string::npos);
}

TEST_CASE("scaling edge cases") {
  ScalingConfig one;
  one.min_rows = one.max_rows = 20;
  one.min_cols = one.max_cols = 2;
  auto cells = run_scaling(std::nullopt, one, null_engine());
  CHECK(cells.size() == 1);
  CHECK(scaling_csv(cells) == "rows,cols,accuracy\n20,2,1.0000\n");

  ScalingConfig bad;
  bad.min_rows = 50;
  bad.max_rows = 10;
  CHECK(code_of([&] { run_scaling(std::nullopt, bad, null_engine()); }) == ErrorCode::kInvalidArgument);
  ScalingConfig wide;
  wide.min_cols = wide.max_cols = 40;
  CHECK(code_of([&] { run_scaling(std::nullopt, wide, null_engine()); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("scaling grid reflects provider answers") {
  // A provider that always answers with a trend and no number is never right.
  test::TempDir dir;
  write_file(dir.file("index.json"),
             R"({"entries": [{"purpose": "bind", "match": "reached", "responses": ["r.txt"]}]})");
  write_file(dir.file("r.txt"), R"(Result:{
    "ObjectName": "Exports",
    "DataName": "Exports",
    "Position": [["Exports", 1], ["Exports", 2]],
    "Trend": "rise",
    "Num": [Null],
    "Text": "Exports"}
Reason: "fixed")");
  EngineOptions opts;
  opts.provider.kind = "fixture";
  opts.provider.fixture_dir = dir.path();
  Engine engine(opts);
  ScalingConfig cfg;
  cfg.min_rows = cfg.max_rows = 20;
  cfg.min_cols = 2;
  cfg.max_cols = 4;
  auto cells = run_scaling(std::nullopt, cfg, engine);
  REQUIRE(cells.size() == 2);
  for (const auto& c : cells) {
    CHECK(c.total == 10);
    CHECK(c.accuracy == 0.0);
  }
}

TEST_CASE("curate promotes reviewed entries once") {
  test::TempDir dir;
  const auto feedback = dir.file("curation.jsonl");
  const auto db = dir.file("prompt_db.jsonl");

  CHECK(curate(feedback, db).promoted == 0);
  CHECK_FALSE(file_exists(db));

  auto table = test::hedge_table();
  const char* texts[] = {"Active funds reached 669 in 2023 H2.", "Launches fell to 5 in 2023 H1.",
                         "Liquidations came to 18 in 2023 H2.", "Active funds were 700."};
  const char* bindings[] = {
      R"(Result:{"ObjectName": "Active funds", "DataName": "Active", "Position": [["Active", 3], ["Active", 3]], "Trend": "None", "Num": [669], "Text": "Active funds reached 669"}
Reason: "a")",
      R"(Result:{"ObjectName": "Launches", "DataName": "Launches", "Position": [["Launches", 1], ["Launches", 1]], "Trend": "None", "Num": [5], "Text": "Launches fell to 5"}
Reason: "b")",
      R"(Result:{"ObjectName": "Liquidations", "DataName": "Liquidations", "Position": [["Liquidations", 2], ["Liquidations", 2]], "Trend": "None", "Num": [18], "Text": "Liquidations came to 18"}
Reason: "c")",
      R"(Result:{"ObjectName": "Active funds", "DataName": "Active", "Position": [["Active", 3], ["Active", 3]], "Trend": "None", "Num": [700], "Text": "Active funds were 700"}
Reason: "d")"};
  for (int i = 0; i < 4; ++i) {
    CurationEntry e;
    e.id = "e" + std::to_string(i);
    e.text = texts[i];
    e.table_digest = table_digest(table);
    e.span = VocabSpan{VocabKind::kNumerical, "669", 0, 3};
    e.corrected_binding = bindings[i];
    append_curation_entry(feedback, e);
  }
  // Unreviewed entries stay out.
  CHECK(curate(feedback, db).promoted == 0);
  for (int i = 0; i < 3; ++i) append_review(feedback, "e" + std::to_string(i));

  auto res = curate(feedback, db);
  CHECK(res.promoted == 3);
  auto loaded = load_prompt_db(db);
  REQUIRE(loaded.size() == 3);
  for (const auto& ex : loaded.examples()) CHECK(validate_prompt_example(ex).empty());
  CHECK(loaded.examples()[0].id == "cur-e0");

  auto repeat = curate(feedback, db);
  CHECK(repeat.promoted == 0);
  CHECK(repeat.warnings.size() == 3);
  CHECK(load_prompt_db(db).size() == 3);

  CurationEntry empty;
  empty.id = "x";
  empty.text = "t";
  CHECK(code_of([&] { append_curation_entry(feedback, empty); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("curate rejects an invalid correction with a warning") {
  test::TempDir dir;
  CurationEntry e;
  e.id = "bad";
  e.text = "Active funds reached 669.";
  e.table_digest = table_digest(test::hedge_table());
  e.span = VocabSpan{VocabKind::kSubject, "Active funds", 0, 12};
  e.corrected_binding =
      R"(Result:{"ObjectName": "x", "DataName": "Nope", "Position": [["Nope", 1], ["Nope", 1]], "Trend": "None", "Num": [1], "Text": "x"}
Reason: "r")";
  e.reviewed = true;
  append_curation_entry(dir.file("c.jsonl"), e);
  auto res = curate(dir.file("c.jsonl"), dir.file("db.jsonl"));
  CHECK(res.promoted == 0);
  CHECK(res.warnings.size() == 1);
}

TEST_CASE("pipeline on the power article") {
  auto table = test::power_table();
  auto run = run_pipeline(table, test::read_data("power_article.txt"), null_engine());
  REQUIRE(run.narratives.size() == 5);
  REQUIRE(run.specs.size() == 5);
  CHECK_FALSE(run.degraded);
  const char* subjects[] = {"Coal", "Oil", "Natural gas", "Nuclear", "Renewables"};
  for (size_t i = 0; i < 5; ++i) {
    CHECK(run.specs[i].order == i);
    CHECK(run.narratives[i].narrative.id == narrative_id(i));
    REQUIRE(run.narratives[i].outcome);
    CHECK(run.narratives[i].outcome->result.records.at(0).data_name == subjects[i]);
    CHECK_FALSE(run.narratives[i].spans.empty());
  }

  test::TempDir dir;
  auto files = write_pipeline_outputs(run, null_engine(), dir.path());
  for (size_t i = 0; i < 5; ++i) {
    auto id = narrative_id(i);
    CHECK(file_exists(dir.file("bindings/" + id + ".txt")));
    CHECK(file_exists(dir.file("specs/" + id + ".json")));
    CHECK(file_exists(dir.file(id + ".svg")));
    CHECK(file_exists(dir.file(id + ".png")));
  }
  auto gif = read_file(dir.file("sequence.gif"));
  auto info = test::read_gif(std::vector<uint8_t>(gif.begin(), gif.end()));
  CHECK(info.delays.size() == 5);
  CHECK(info.rgb.size() == 5);
  auto summary = nlohmann::json::parse(read_file(dir.file("summary.json")));
  CHECK(summary["narratives"].size() == 5);
  auto annotations = nlohmann::json::parse(read_file(dir.file("annotations.json")));
  CHECK(annotations.size() == 5);

  auto spec = chart_spec_from_json(nlohmann::json::parse(read_file(dir.file("specs/n0.json"))));
  CHECK(spec == run.specs[0]);
}

TEST_CASE("pipeline errors") {
  auto table = test::power_table();
  CHECK(code_of([&] { run_pipeline(table, "   ", null_engine()); }) == ErrorCode::kEmptyArticle);
  DataTable bad = table;
  bad.rows[1].pop_back();
  CHECK(code_of([&] { run_pipeline(bad, "Coal fell.", null_engine()); }) == ErrorCode::kValidation);
}

TEST_CASE("annotation display mapping") {
  CHECK(std::string(annotation_display(VocabKind::kSubject)) == "background");
  CHECK(std::string(annotation_display(VocabKind::kNumerical)) == "underline");
  CHECK(std::string(annotation_display(VocabKind::kTrend)) == "box");
  auto j = annotations_to_json({VocabSpan{VocabKind::kTrend, "rise", 4, 8}});
  CHECK(j[0]["charStart"] == 4);
  CHECK(j[0]["display"] == "box");
}

TEST_CASE("engine options round trip and reject unknown keys") {
  auto opts = engine_options_from_json(nlohmann::json::parse(
      R"({"provider": {"kind": "fixture", "fixtureDir": "/tmp/x"}, "k": 4, "jobs": 3,
          "canvas": "640x400", "chartType": "multi_line", "seed": 9})"));
  CHECK(opts.provider.kind == "fixture");
  CHECK(opts.provider.fixture_dir == "/tmp/x");
  CHECK(opts.k == size_t{4});
  CHECK(opts.jobs == 3);
  CHECK(opts.seed == 9);
  REQUIRE(opts.canvas);
  CHECK(opts.canvas->width == 640);
  auto again = engine_options_from_json(engine_options_to_json(opts));
  CHECK(engine_options_to_json(again) == engine_options_to_json(opts));

  CHECK(code_of([] { engine_options_from_json(nlohmann::json{{"colour", 1}}); }) ==
        ErrorCode::kInvalidArgument);
  EngineOptions tiny;
  tiny.canvas = Canvas{100, 100};
  CHECK(code_of([&] { Engine e(tiny); }) == ErrorCode::kCanvasTooSmall);
  EngineOptions k;
  k.k = 3;
  CHECK(Engine(k).bind_config().retrieval.k == 3);
}

TEST_CASE("parallel binding matches sequential binding") {
  auto table = test::power_table();
  auto narratives = segment_deterministic(test::read_data("power_article.txt"), table);
  EngineOptions par;
  par.jobs = 4;
  Engine parallel(par);
  auto a = bind_narratives(narratives, table, null_engine());
  auto b = bind_narratives(narratives, table, parallel);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    REQUIRE(a[i].outcome);
    REQUIRE(b[i].outcome);
    CHECK(a[i].outcome->result == b[i].outcome->result);
  }
}
