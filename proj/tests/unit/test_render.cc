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

#include <algorithm>
#include <cstdlib>
#include <map>
#include <random>

#include "binder/fallback.h"
#include "binder/segment.h"
#include "core/error.h"
#include "doctest.h"
#include "render/chart.h"
#include "render/display.h"
#include "render/layout.h"
#include "render/render.h"
#include "gif_reader.h"
#include "test_support.h"

using namespace layerchart;
using layerchart::test::read_gif;

namespace {

RgbaImage solid(int w, int h, uint8_t r, uint8_t g, uint8_t b) {
  RgbaImage img{w, h, {}};
  for (int i = 0; i < w * h; ++i) img.pixels.insert(img.pixels.end(), {r, g, b, 255});
  return img;
}

size_t count(const std::string& hay, const std::string& needle) {
  size_t n = 0;
  for (size_t p = hay.find(needle); p != std::string::npos; p = hay.find(needle, p + 1)) ++n;
  return n;
}

DataTable power() { return load_table_file(test::data_path("power.csv")); }

std::vector<NarrativeBinding> power_bindings() {
  auto t = power();
  std::vector<NarrativeBinding> out;
  for (const auto& n : segment_narratives(test::read_data("power_article.txt"), t)) {
    out.push_back({n.id, n.order, fallback_bind(n, t, default_lexicon()), ""});
  }
  return out;
}

}  // namespace

TEST_CASE("choose_chart_type examples") {
  std::string csv = "Quarter,V\n";
  for (int i = 0; i < 20; ++i) csv += "20" + std::to_string(10 + i / 4) + "Q" + std::to_string(i % 4 + 1) + "," + std::to_string(i) + "\n";
  auto quarters = parse_csv_table(csv);
  CHECK(choose_chart_type(quarters, {"V"}) == ChartType::kSingleLine);

  auto cats = parse_csv_table("Year,A,B,C\nFY17,1,2,3\nFY18,1,2,3\nFY19,1,2,3\nFY20,1,2,3\nFY21,1,2,3\nFY22,1,2,3\nFY23,1,2,3\n");
  CHECK(choose_chart_type(cats, {"A", "B", "C"}) == ChartType::kMultiBar);
  CHECK(choose_chart_type(quarters, {"V"}, ChartType::kSingleBar) == ChartType::kSingleBar);
  CHECK(choose_chart_type(power(), power().numeric_column_names()) == ChartType::kMultiBar);
  try {
    choose_chart_type(quarters, {"Quarter"});
    FAIL("expected NoNumericColumn");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNoNumericColumn);
  }
}

TEST_CASE("layout value scale and bands") {
  std::string csv = "Year,V\n";
  for (int i = 0; i <= 10; ++i) csv += std::to_string(2000 + i) + "," + std::to_string(i) + "\n";
  auto t = parse_csv_table(csv);
  // Margins are 34 + 40 px, so this canvas leaves a 200 px plot.
  auto L = layout_base_chart(t, {"V"}, ChartType::kSingleLine, Canvas{400, 274});
  CHECK(L.plot.h == 200);
  CHECK(L.y.map(5) == doctest::Approx(L.plot.y + 100));
  // Padded domain [-0.5, 10.5].
  CHECK(L.y.map(10.5) == doctest::Approx(L.plot.y));
  CHECK(L.y.map(-0.5) == doctest::Approx(L.plot.bottom()));
  CHECK(L.y.map(1) > L.y.map(2));

  auto zero = parse_csv_table("Year,V\n2001,0\n2002,3\n");
  auto B = layout_base_chart(zero, {"V"}, ChartType::kSingleBar);
  const auto* e = B.element("V", 1);
  REQUIRE(e);
  CHECK(e->rect.h == 0);
  CHECK(e->rect.y == doctest::Approx(B.baseline_y));

  auto two = parse_csv_table("Year,A,B\n2001,1,2\n2002,3,4\n");
  auto M = layout_base_chart(two, {"A", "B"}, ChartType::kMultiBar);
  const auto *a = M.element("A", 1), *b = M.element("B", 1);
  CHECK(a->rect.w == doctest::Approx(b->rect.w));
  CHECK(a->rect.w == doctest::Approx(M.band_width * 0.8 / 2));
  CHECK(b->rect.x == doctest::Approx(a->rect.right()));
  CHECK(a->rect.x - (M.x_centers[0] - M.band_width / 2) == doctest::Approx(M.band_width * 0.1));

  try {
    layout_base_chart(two, {"A"}, ChartType::kSingleBar, Canvas{199, 300});
    FAIL("expected CanvasTooSmall");
  } catch (const Error& e2) {
    CHECK(e2.code() == ErrorCode::kCanvasTooSmall);
  }
}

TEST_CASE("property: one element per non-null plotted cell") {
  std::mt19937 rng(17);
  for (int iter = 0; iter < 200; ++iter) {
    int rows = 1 + static_cast<int>(rng() % 40), cols = 1 + static_cast<int>(rng() % 5);
    std::string csv = "Year";
    for (int c = 0; c < cols; ++c) csv += ",S" + std::to_string(c);
    csv += "\n";
    size_t nulls = 0;
    for (int r = 0; r < rows; ++r) {
      csv += std::to_string(1900 + r);
      for (int c = 0; c < cols; ++c) {
        csv += ",";
        if (rng() % 6 == 0) {
          ++nulls;
        } else {
          csv += std::to_string(static_cast<int>(rng() % 2000) - 700);
        }
      }
      csv += "\n";
    }
    auto t = parse_csv_table(csv);
    auto type = static_cast<ChartType>(rng() % 4);
    auto L = layout_base_chart(t, t.numeric_column_names(), type);
    CHECK(L.elements.size() == static_cast<size_t>(rows * cols) - nulls);
    std::map<std::pair<std::string, size_t>, int> seen;
    Rect canvas{0, 0, 800, 450};
    for (const auto& e : L.elements) {
      CHECK(++seen[{e.column, e.row}] == 1);
      CHECK(L.plot.contains(e.vertex));
      if (e.bar) CHECK(L.plot.contains(e.rect));
    }
    CHECK(L.y.map(0) > L.y.map(1));
  }
}

TEST_CASE("nulls split line series") {
  auto t = parse_csv_table("Year,V\n2001,1\n2002,2\n2003,\n2004,4\n2005,5\n2006,6\n");
  auto L = layout_base_chart(t, {"V"}, ChartType::kSingleLine);
  auto ops = display_list(L, {});
  size_t lines = 0;
  for (const auto& op : ops) {
    if (op.layer == "series" && op.shape == DrawOp::Shape::kPolyline) ++lines;
  }
  CHECK(lines == 2);
}

TEST_CASE("render_svg examples") {
  auto t = test::hedge_table();
  auto L = layout_base_chart(t, {"Active"}, ChartType::kSingleBar);
  std::string plain = render_svg(L, {});
  CHECK(plain.find("class=\"overlay") == std::string::npos);
  CHECK(plain.find("<g id=\"overlays\">") != std::string::npos);
  CHECK(plain.find("<circle") == std::string::npos);

  OverlaySpec m;
  m.id = "o1";
  m.kind = OverlayKind::kMarker;
  m.target = {{"Active"}, 3, 3};
  auto placed = place_overlays({m}, L);
  apply_palette(L, placed, default_palette());
  std::string svg = render_svg(L, placed);
  auto overlay_at = svg.find("<g id=\"overlays\">");
  REQUIRE(overlay_at != std::string::npos);
  std::string overlay_part = svg.substr(overlay_at);
  CHECK(count(overlay_part, "<circle") == 1);
  CHECK(count(overlay_part, "r=\"2\"") == 1);
  CHECK(count(svg, "<circle") == 1);
  for (const char* layer : {"background", "grid", "axes", "series", "title"}) {
    auto at = svg.find(std::string("<g id=\"") + layer + "\">");
    REQUIRE(at != std::string::npos);
    CHECK(at < overlay_at);
  }
  CHECK(render_svg(L, placed) == svg);
  CHECK(svg.rfind("</svg>") != std::string::npos);

  DataTable odd = t;
  odd.name = "R&D <spend>";
  auto O = layout_base_chart(odd, {"Active"}, ChartType::kSingleBar);
  auto escaped = render_svg(O, {});
  CHECK(escaped.find("R&amp;D &lt;spend&gt;") != std::string::npos);
}

TEST_CASE("render_png reports canvas times scale in RGBA") {
  auto L = layout_base_chart(test::hedge_table(), {"Active", "Launches"}, ChartType::kMultiBar, Canvas{320, 200});
  for (double scale : {1.0, 2.0, 0.5}) {
    auto png = render_png(L, {}, scale);
    REQUIRE(png.size() > 33);
    CHECK(png[1] == 'P');
    auto be32 = [&](size_t i) { return (png[i] << 24) | (png[i + 1] << 16) | (png[i + 2] << 8) | png[i + 3]; };
    CHECK(be32(16) == static_cast<int>(320 * scale));
    CHECK(be32(20) == static_cast<int>(200 * scale));
    CHECK(png[24] == 8);  // bit depth
    CHECK(png[25] == 6);  // RGBA
    auto img = decode_png(png);
    CHECK(img.width == static_cast<int>(320 * scale));
  }
  CHECK_THROWS_AS(render_png(L, {}, 0), Error);
}

TEST_CASE("gif export examples") {
  std::vector<RgbaImage> frames;
  for (int i = 0; i < 5; ++i) frames.push_back(solid(16, 9, static_cast<uint8_t>(40 * i), 10, 200));
  auto gif = read_gif(encode_gif(frames, 2000));
  CHECK(gif.rgb.size() == 5);
  CHECK(gif.loops_forever);
  CHECK(gif.delays == std::vector<int>(5, 200));
  CHECK(gif.width == 16);
  CHECK(gif.rgb[3][0] == 120);

  auto one = read_gif(encode_gif({solid(3, 2, 1, 2, 3)}, 150));
  CHECK(one.rgb.size() == 1);
  CHECK(one.delays[0] == 15);

  try {
    encode_gif({solid(4, 4, 0, 0, 0), solid(4, 5, 0, 0, 0)});
    FAIL("expected DimensionMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kDimensionMismatch);
  }
  try {
    export_gif({});
    FAIL("expected EmptyFrameList");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kEmptyFrameList);
  }
}

TEST_CASE("gif pixels survive the round trip") {
  std::mt19937 rng(3);
  // At most 256 colors: exact.
  RgbaImage few{97, 61, {}};
  std::vector<std::array<uint8_t, 3>> pal;
  for (int i = 0; i < 200; ++i) pal.push_back({static_cast<uint8_t>(rng()), static_cast<uint8_t>(rng()), static_cast<uint8_t>(rng())});
  for (int i = 0; i < 97 * 61; ++i) {
    // Long runs and noise both exercise the dictionary resets.
    const auto& c = pal[i % 13 == 0 ? rng() % 200 : (i / 50) % 200];
    few.pixels.insert(few.pixels.end(), {c[0], c[1], c[2], 255});
  }
  auto g = read_gif(encode_gif({few}));
  REQUIRE(g.rgb.size() == 1);
  bool exact = true;
  for (size_t i = 0; i < g.rgb[0].size(); ++i) exact = exact && g.rgb[0][i] == few.pixels[i / 3 * 4 + i % 3];
  CHECK(exact);

  // A gradient with thousands of colors is quantized, not dropped.
  RgbaImage many{256, 64, {}};
  for (int y = 0; y < 64; ++y) {
    for (int x = 0; x < 256; ++x) {
      many.pixels.insert(many.pixels.end(), {static_cast<uint8_t>(x), static_cast<uint8_t>(y * 4), static_cast<uint8_t>(255 - x), 255});
    }
  }
  auto q = read_gif(encode_gif({many}));
  int worst = 0;
  for (size_t i = 0; i < q.rgb[0].size(); ++i) {
    worst = std::max(worst, std::abs(q.rgb[0][i] - many.pixels[i / 3 * 4 + i % 3]));
  }
  CHECK(worst <= 24);
}

TEST_CASE("sequence_charts examples") {
  auto t = power();
  auto bindings = power_bindings();
  REQUIRE(bindings.size() == 5);
  std::reverse(bindings.begin(), bindings.end());
  auto specs = sequence_charts(bindings, t, ChartConfig{}, default_lexicon());
  REQUIRE(specs.size() == 5);
  for (size_t i = 0; i < 5; ++i) {
    CHECK(specs[i].order == i);
    CHECK(specs[i].narrative_id == narrative_id(i));
    CHECK(specs[i].columns == specs[0].columns);
    CHECK(specs[i].chart_type == specs[0].chart_type);
    CHECK_FALSE(specs[i].overlays.empty());
  }
  // Overlays come only from the narrative's own records.
  for (const auto& s : specs) {
    const BindingResult* own = nullptr;
    for (const auto& b : bindings) {
      if (b.narrative_id == s.narrative_id) own = &*b.result;
    }
    REQUIRE(own);
    for (const auto& o : s.overlays) {
      REQUIRE(o.record);
      REQUIRE(*o.record < own->records.size());
      CHECK(o.target.columns.front() == own->records[*o.record].data_name);
    }
  }

  auto single = sequence_charts({bindings[0]}, t, ChartConfig{}, default_lexicon());
  CHECK(single.size() == 1);

  NarrativeBinding failed{"n9", 9, std::nullopt, "BindingFailed: no subject"};
  auto degraded = sequence_charts({failed}, t, ChartConfig{}, default_lexicon());
  REQUIRE(degraded.size() == 1);
  CHECK(degraded[0].overlays.empty());
  CHECK(degraded[0].notes == std::vector<std::string>{"BindingFailed: no subject"});
  CHECK_FALSE(chart_svg(degraded[0], t, default_palette()).empty());

  CHECK_THROWS_AS(sequence_charts({bindings[0], bindings[0]}, t, ChartConfig{}, default_lexicon()), Error);
}

TEST_CASE("combined columns join the plotted set") {
  auto t = parse_csv_table("Year,Compact [%],Midsize [%]\n2017,20,19\n2019,25,25\n2021,28,31\n2023,30,40\n");
  BindingResult r;
  BindingRecord rec;
  rec.object_name = "compact and midsize";
  rec.data_name = "Compact + Midsize";
  rec.position = {CellRef{"Compact + Midsize", 4}, CellRef{"Compact + Midsize", 4}};
  rec.num = std::vector<double>{70};
  rec.text = "70% in 2023";
  r.records.push_back(rec);
  auto specs = sequence_charts({{"n0", 0, r, ""}}, t, ChartConfig{}, default_lexicon());
  REQUIRE(specs.size() == 1);
  CHECK(specs[0].columns.back() == "Compact + Midsize");
  auto c = compose_chart(specs[0], t, default_palette());
  CHECK(c.layout.element("Compact + Midsize", 4)->value == 70);
  CHECK(c.layout.colors[0] == default_palette().base_colors[0]);  // parts stay highlighted
}

TEST_CASE("chart spec and config json round trip") {
  auto specs = sequence_charts(power_bindings(), power(), ChartConfig{}, default_lexicon());
  auto s = specs[2];
  s.title = "Power";
  s.line_width = 3;
  s.series_colors["Coal"] = "#000000";
  CHECK(chart_spec_from_json(chart_spec_to_json(s)) == s);

  ChartConfig c;
  c.canvas = parse_canvas("640x360");
  c.chart_type = ChartType::kMultiLine;
  c.columns = {"Coal", "Oil"};
  c.frame_duration_ms = 500;
  auto back = chart_config_from_json(chart_config_to_json(c));
  CHECK(back.canvas == c.canvas);
  CHECK(back.chart_type == c.chart_type);
  CHECK(back.columns == c.columns);
  CHECK(back.frame_duration_ms == 500);
  CHECK_THROWS_AS(parse_canvas("800by450"), Error);
  CHECK_THROWS_AS(chart_config_from_json(nlohmann::json{{"chartType", "pie"}}), Error);
}

TEST_CASE("power fixture renders five frames deterministically") {
  auto t = power();
  auto specs = sequence_charts(power_bindings(), t, ChartConfig{}, default_lexicon());
  auto pal = default_palette();
  auto gif = sequence_gif(specs, t, pal, 2000);
  auto info = read_gif(gif);
  CHECK(info.rgb.size() == 5);
  CHECK(info.delays == std::vector<int>(5, 200));
  CHECK(sequence_gif(specs, t, pal, 2000) == gif);

  // Golden SVG of the first frame; set LAYERCHART_UPDATE_GOLDEN=1 to rewrite.
  std::string svg = chart_svg(specs[0], t, pal);
  std::string golden = test::data_path("golden/power_n0.svg");
  if (std::getenv("LAYERCHART_UPDATE_GOLDEN")) write_file(golden, svg);
  CHECK(svg == read_file(golden));
}
