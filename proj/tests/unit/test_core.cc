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
#include <random>
#include <string>

#include "core/binding.h"
#include "core/error.h"
#include "core/metrics.h"
#include "core/table.h"
#include "core/util.h"
#include "doctest.h"
#include "test_support.h"

using namespace layerchart;

TEST_CASE("format_number keeps integers short and decimals exact") {
  CHECK(format_number(669) == "669");
  CHECK(format_number(-31.4) == "-31.4");
  CHECK(format_number(3050.0) == "3050");
  CHECK(format_number(0.1) == "0.1");
}

TEST_CASE("parse_number is strict") {
  CHECK(parse_number("1,234.5").value() == doctest::Approx(1234.5));
  CHECK(parse_number(" 7 ").value() == 7);
  CHECK_FALSE(parse_number("12abc"));
  CHECK_FALSE(parse_number(",12"));
  CHECK_FALSE(parse_number(""));
}

TEST_CASE("validate_table reports rectangularity and duplicates") {
  DataTable t;
  t.columns = {{"A", ColumnKind::kNumeric, {}}, {"B", ColumnKind::kNumeric, {}},
               {"C", ColumnKind::kNumeric, {}}};
  t.rows = {{1.0, 2.0, 3.0}, {4.0, 5.0, 6.0}, {7.0, 8.0, 9.0}};
  CHECK(validate_table(t).empty());

  DataTable ragged = t;
  ragged.rows[1].pop_back();
  auto v = validate_table(ragged);
  REQUIRE(v.size() == 1);
  CHECK(v[0] == "row 2: expected 3 cells, got 2");

  DataTable dup = t;
  dup.columns[0].name = "Active";
  dup.columns[1].name = "Active";
  v = validate_table(dup);
  REQUIRE(v.size() == 1);
  CHECK(v[0].find("duplicate") != std::string::npos);

  DataTable text_in_numeric = t;
  text_in_numeric.rows[0][0] = std::string("x");
  CHECK(validate_table(text_in_numeric).size() == 1);

  CHECK_FALSE(validate_table(DataTable{}).empty());
}

TEST_CASE("csv parsing infers kinds and units") {
  auto t = parse_csv_table("Year,Revenue [CNY Billion],Region\n2021,3050,North\n2022,\"3,100.5\",South\n");
  REQUIRE(t.column_count() == 3);
  CHECK(t.columns[0].kind == ColumnKind::kTemporal);
  CHECK(t.columns[1].kind == ColumnKind::kNumeric);
  CHECK(t.columns[1].name == "Revenue");
  CHECK(t.columns[1].unit.value() == "CNY Billion");
  CHECK(t.columns[2].kind == ColumnKind::kCategorical);
  CHECK(std::get<double>(*t.cell("Revenue", 2)) == doctest::Approx(3100.5));
  CHECK(t.row_label(1) == "2021");
  CHECK(validate_table(t).empty());
}

TEST_CASE("gdp fixture table") {
  auto t = test::gdp_table();
  CHECK(t.row_count() == 14);
  CHECK(t.columns[0].kind == ColumnKind::kTemporal);
  CHECK(t.columns[1].name == "change in GDP");
  CHECK(t.columns[1].unit.value() == "%");
}

TEST_CASE("table json and digest round trip") {
  auto t = test::hedge_table();
  CHECK(table_from_json(table_to_json(t)) == t);
  auto d = parse_table_digest(table_digest(t));
  CHECK(d.columns == t.columns);
  CHECK(d.rows == t.rows);
  auto g = test::gdp_table();
  auto gd = parse_table_digest(table_digest(g));
  CHECK(gd.columns == g.columns);
  CHECK(gd.rows == g.rows);
}

TEST_CASE("combined columns sum row-wise") {
  auto t = parse_csv_table("Year,Compact,Midsize to large\n2021,10,20\n2022,,5\n2023,1.5,2\n");
  std::string name = combined_column_name({"Compact", "Midsize to large"});
  CHECK(name == "Compact + Midsize to large");
  CHECK(is_resolvable_column(t, name));
  CHECK_FALSE(is_resolvable_column(t, "Compact + Nope"));
  auto s = resolve_series(t, name);
  REQUIRE(s.size() == 3);
  CHECK(*s[0] == 30);
  CHECK_FALSE(s[1]);
  CHECK(*s[2] == 3.5);
  auto w = with_combined_column(t, name);
  CHECK(w.column_count() == 4);
  CHECK(validate_table(w).empty());
}

TEST_CASE("reference binding documents parse to their records") {
  auto gdp = parse_binding_document(test::read_data("binding_gdp.txt"));
  REQUIRE(gdp.records.size() == 2);
  CHECK(gdp.records[0].object_name == "change in real GDP");
  CHECK(gdp.records[0].data_name == "change in GDP");
  CHECK(gdp.records[0].position[0] == CellRef{"change in GDP", 7});
  CHECK(gdp.records[0].position[1] == CellRef{"change in GDP", 10});
  CHECK(gdp.records[0].trend.value() == "sharp decrease");
  CHECK_FALSE(gdp.records[0].num);
  CHECK(gdp.records[0].text == "the change in real GDP suffers a sharp decrease");
  CHECK(gdp.records[1].position[0].row == 11);
  CHECK(gdp.records[1].position[1].row == 14);
  CHECK(gdp.records[1].trend.value() == "rise");
  CHECK(gdp.reason.rfind("There is one object", 0) == 0);
  CHECK(validate_binding(gdp, test::gdp_table()).empty());

  auto hedge = parse_binding_document(test::read_data("binding_hedge.txt"));
  REQUIRE(hedge.records.size() == 3);
  const char* cols[] = {"Active", "Launches", "Liquidations"};
  const size_t rows[] = {3, 1, 2};
  const double nums[] = {669, 5, 18};
  for (size_t i = 0; i < 3; ++i) {
    CHECK(hedge.records[i].data_name == cols[i]);
    CHECK(hedge.records[i].position[0] == CellRef{cols[i], rows[i]});
    CHECK(hedge.records[i].position[1] == CellRef{cols[i], rows[i]});
    CHECK_FALSE(hedge.records[i].trend);
    REQUIRE(hedge.records[i].num);
    CHECK(*hedge.records[i].num == std::vector<double>{nums[i]});
  }
  CHECK(validate_binding(hedge, test::hedge_table()).empty());
}

TEST_CASE("serialization uses the six field names and the absent spellings") {
  auto gdp = parse_binding_document(test::read_data("binding_gdp.txt"));
  std::string wire = serialize_binding(gdp);
  for (const char* key : {"\"ObjectName\": ", "\"DataName\": ", "\"Position\": ", "\"Trend\": ",
                          "\"Num\": ", "\"Text\": "}) {
    CHECK(wire.find(key) != std::string::npos);
  }
  CHECK(wire.rfind("Result:", 0) == 0);
  CHECK(wire.find("\"Num\": [Null]") != std::string::npos);
  CHECK(wire.find("\nReason: \"") != std::string::npos);
  CHECK(parse_binding_document(wire) == gdp);

  auto hedge = parse_binding_document(test::read_data("binding_hedge.txt"));
  std::string hw = serialize_binding(hedge);
  CHECK(hw.find("\"Trend\": \"None\"") != std::string::npos);
  CHECK(hw.find("\"Num\": [669]") != std::string::npos);
  CHECK(parse_binding_document(hw) == hedge);
}

TEST_CASE("parser tolerates prose, fences and lowercase null") {
  std::string raw =
      "Sure, here is the binding.\n```\nResult: {\"ObjectName\": \"x\", \"DataName\": \"Active\","
      " \"Position\": [[\"Active\", 2]], \"Trend\": \"rise\", \"Num\": [null], \"Text\": \"t\"}\n"
      "Reason: \"because\"\n```\nHope this helps.";
  auto r = parse_binding_document(raw);
  REQUIRE(r.records.size() == 1);
  CHECK(r.records[0].position[0].row == 2);
  CHECK(r.records[0].position[1].row == 2);
  CHECK_FALSE(r.records[0].num);
  CHECK(r.reason == "because");
}

TEST_CASE("parser names the missing field") {
  std::string raw =
      "Result: {\"ObjectName\": \"x\", \"DataName\": \"Active\", \"Trend\": \"rise\","
      " \"Num\": [Null], \"Text\": \"t\"}\nReason: \"r\"";
  try {
    parse_binding_document(raw);
    FAIL("expected MalformedResponse");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kMalformedResponse);
    CHECK(std::string(e.what()).find("Position") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_binding_document("nothing to see"), Error);
  CHECK_THROWS_AS(parse_binding_document("Result: {\"ObjectName\": \"x\", \"DataName\": \"A\", "
                                         "\"Position\": [[\"A\", two]], \"Trend\": \"None\", "
                                         "\"Num\": [1], \"Text\": \"\"}\nReason: \"\""),
                  Error);
}

TEST_CASE("validate_binding flags exclusivity and bounds") {
  auto table = test::gdp_table();
  BindingRecord r;
  r.object_name = "gdp";
  r.data_name = "change in GDP";
  r.position = {CellRef{"change in GDP", 1}, CellRef{"change in GDP", 2}};
  r.trend = "rise";
  r.num = std::vector<double>{5};
  r.text = "t";
  BindingResult both{{r}, "x"};
  auto v = validate_binding(both, table);
  REQUIRE(v.size() == 1);
  CHECK(v[0].find("both") != std::string::npos);

  r.num.reset();
  r.position[1].row = 99;
  v = validate_binding(BindingResult{{r}, "x"}, table);
  REQUIRE(v.size() == 1);
  CHECK(v[0].find("out of range") != std::string::npos);

  r.position[1].row = 3;
  r.position[0].row = 5;
  CHECK(validate_binding(BindingResult{{r}, "x"}, table).size() == 1);

  r.position[0].row = 1;
  r.data_name = "missing";
  CHECK_FALSE(validate_binding(BindingResult{{r}, "x"}, table).empty());
}

namespace {

BindingResult random_result(std::mt19937& rng) {
  static const char* kWords[] = {"Active", "rise", "GDP", "a \"quoted\" word", "back\\slash",
                                 "line\nbreak", "669", "None", "Null", "x"};
  std::uniform_int_distribution<int> pick(0, 9);
  std::uniform_int_distribution<int> count(0, 4);
  std::uniform_int_distribution<int> row(1, 20);
  std::uniform_real_distribution<double> val(-1e6, 1e6);
  BindingResult out;
  int n = count(rng);
  for (int i = 0; i < n; ++i) {
    BindingRecord r;
    r.object_name = std::string(kWords[pick(rng)]) + " obj";
    r.data_name = std::string("col ") + kWords[pick(rng)];
    size_t a = row(rng), b = row(rng);
    r.position = {CellRef{r.data_name, std::min(a, b)}, CellRef{r.data_name, std::max(a, b)}};
    if (pick(rng) % 2) {
      r.trend = std::string("trend ") + kWords[pick(rng)];
    } else {
      std::vector<double> nums;
      int k = 1 + pick(rng) % 3;
      for (int j = 0; j < k; ++j) nums.push_back(pick(rng) % 2 ? std::round(val(rng)) : val(rng));
      r.num = nums;
    }
    r.text = kWords[pick(rng)];
    out.records.push_back(r);
  }
  out.reason = std::string("reason ") + kWords[pick(rng)];
  return out;
}

}  // namespace

TEST_CASE("property: parse(serialize(r)) == r") {
  std::mt19937 rng(12345);
  for (int i = 0; i < 2000; ++i) {
    auto r = random_result(rng);
    auto back = parse_binding_document(serialize_binding(r));
    REQUIRE(back == r);
  }
}

TEST_CASE("property: validate_binding is total on parseable documents") {
  std::mt19937 rng(99);
  auto table = test::hedge_table();
  for (int i = 0; i < 500; ++i) {
    auto r = random_result(rng);
    CHECK_NOTHROW(validate_binding(r, table));
  }
}

TEST_CASE("metrics follow the direct formula") {
  auto m = make_metrics(3, 1, 2);
  CHECK(m.precision == 0.75);
  CHECK(m.recall == 0.6);
  CHECK(m.f1 == 2.0 / 3.0);
  auto z = make_metrics(0, 0, 0);
  CHECK(z.precision == 0);
  CHECK(z.recall == 0);
  CHECK(z.f1 == 0);
  auto p = make_metrics(26, 3, 0);  // P = 0.8966, R = 1
  CHECK(p.precision == doctest::Approx(0.8966).epsilon(0.0005));
  CHECK(std::fabs(p.f1 - 0.9455) <= 0.0005);
}

TEST_CASE("property: f1 is the harmonic mean of precision and recall") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<size_t> d(0, 50);
  for (int i = 0; i < 5000; ++i) {
    auto m = make_metrics(d(rng), d(rng), d(rng));
    double expect = m.precision + m.recall > 0
                        ? 2 * m.precision * m.recall / (m.precision + m.recall)
                        : 0.0;
    CHECK(std::fabs(m.f1 - expect) <= 1e-12);
  }
}
