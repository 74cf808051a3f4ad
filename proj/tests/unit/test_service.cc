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

#include <functional>
#include <random>
#include <string>
#include <thread>

#include "app/curate.h"
#include "app/engine.h"
#include "core/error.h"
#include "core/util.h"
#include "doctest.h"
#include "gif_reader.h"
#include "httplib.h"
#include "render/chart.h"
#include "service/archive.h"
#include "service/edit.h"
#include "service/http.h"
#include "service/service.h"
#include "tar_reader.h"
#include "test_support.h"

using namespace layerchart;
using nlohmann::json;

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

Engine fixture_engine() {
  EngineOptions o;
  o.provider.kind = "fixture";
  o.provider.fixture_dir = test::data_path("fixtures");
  return Engine(o);
}

Project power_project(Service& s) {
  return s.create_project(test::read_data("power.csv"), test::read_data("power_article.txt"), "power");
}

const OverlaySpec* find_kind(const LayeredChartSpec& spec, OverlayKind kind) {
  for (const auto& o : spec.overlays) {
    if (o.kind == kind) return &o;
  }
  return nullptr;
}

const OverlaySpec* find_text(const LayeredChartSpec& spec) {
  for (const auto& o : spec.overlays) {
    if (is_text_overlay(o.kind)) return &o;
  }
  return nullptr;
}

EditOp op(const std::string& text) { return edit_op_from_json(json::parse(text)); }

}  // namespace

TEST_CASE("create_project segments, binds and sequences") {
  Service s(null_engine(), {});
  auto p = power_project(s);
  CHECK(p.id.size() == 13);
  CHECK(p.id[0] == 'p');
  REQUIRE(p.narratives.size() == 5);
  for (size_t i = 0; i < 5; ++i) {
    const auto& n = p.narratives[i];
    CHECK(n.narrative.id == "n" + std::to_string(i));
    CHECK(n.narrative.order == i);
    REQUIRE(n.binding);
    CHECK(n.spec == n.base_spec);
    CHECK(n.spec.narrative_id == n.narrative.id);
    CHECK(n.used_fallback);
  }
  auto loaded = s.project(p.id);
  CHECK(project_to_json(loaded) == project_to_json(p));
  auto j = project_to_json(p);
  CHECK(j["narratives"][2]["chartId"] == p.id + "_n2");
  CHECK(j["bindings"].size() == 5);
  CHECK(j["chartSpecs"].size() == 5);

  CHECK(code_of([&] { s.project("pmissing"); }) == ErrorCode::kNotFound);
}

TEST_CASE("create_project rejects bad input") {
  Service s(null_engine(), {});
  CHECK(code_of([&] { s.create_project(test::read_data("power.csv"), "  \n"); }) == ErrorCode::kEmptyArticle);
  try {
    s.create_project("Year,A\n2020,1\n2021,2,3\n", "A rose.");
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(e.code() == ErrorCode::kValidation);
    CHECK_FALSE(e.details().empty());
  }
  CHECK(s.store().project_ids().empty());
}

TEST_CASE("annotate reports the vocabulary of a narrative") {
  Service s(null_engine(), {});
  auto hedge = s.create_project(test::hedge_table(), test::read_data("hedge_narrative.txt"));
  bool found = false;
  for (const auto& n : hedge.narratives) {
    for (const auto& span : s.annotate(hedge.id, n.narrative.id)) {
      CHECK(n.narrative.text.substr(span.char_start, span.char_end - span.char_start) == span.text);
      if (span.text == "669") {
        CHECK(span.kind == VocabKind::kNumerical);
        found = true;
      }
    }
  }
  CHECK(found);

  auto gdp = s.create_project(test::gdp_table(), test::read_data("gdp_narrative.txt"));
  bool trend = false;
  for (const auto& n : gdp.narratives) {
    for (const auto& span : s.annotate(gdp.id, n.narrative.id)) {
      if (span.text == "sharp decrease") trend = span.kind == VocabKind::kTrend;
    }
  }
  CHECK(trend);
  CHECK(code_of([&] { s.annotate(gdp.id, "n99"); }) == ErrorCode::kNotFound);
}

TEST_CASE("edits move, add and remove overlays") {
  Service s(null_engine(), {});
  auto p = power_project(s);
  const auto& n = p.narratives[0];
  const OverlaySpec* text = find_text(n.spec);
  REQUIRE(text);

  auto moved = s.apply_edit(p.id, "n0",
                            op(R"({"target": {"type": "overlay", "id": ")" + text->id +
                               R"("}, "action": "move", "params": {"x": 120, "y": 90}})"));
  CHECK(moved.seq == 1);
  auto table = s.project(p.id).table;
  auto composed = compose_chart(moved.spec, table, null_engine().palette());
  bool placed = false;
  for (const auto& o : composed.overlays) {
    if (o.spec.id != text->id) continue;
    REQUIRE(o.geometry.text_box);
    CHECK(o.geometry.text_box->x == doctest::Approx(120));
    CHECK(o.geometry.text_box->y == doctest::Approx(90));
    placed = true;
  }
  CHECK(placed);

  auto added = s.apply_edit(
      p.id, "n0",
      op(R"({"target": {"type": "overlay"}, "action": "add_overlay", "params": {"overlay":
           {"kind": "background", "target": {"columns": ["Coal"], "startRow": 2, "endRow": 4}}}})"));
  CHECK(added.seq == 2);
  CHECK(added.inverse.action == EditAction::kRemoveOverlay);
  const std::string new_id = added.inverse.target.id;
  composed = compose_chart(added.spec, table, null_engine().palette());
  bool rect = false;
  for (const auto& o : composed.overlays) {
    if (o.spec.id == new_id) rect = o.geometry.rect.has_value();
  }
  CHECK(rect);

  // Remove then restore through the inverse gives back the same chart.
  auto before = added.spec;
  auto removed = s.apply_edit(p.id, "n0", op(R"({"target": {"type": "overlay", "id": ")" + new_id +
                                             R"("}, "action": "remove_overlay", "params": {}})"));
  CHECK(removed.spec.overlays.size() + 1 == before.overlays.size());
  auto restored = s.apply_edit(p.id, "n0", removed.inverse);
  CHECK(restored.spec == before);

  CHECK(s.edit_log(p.id, "n0").size() == 4);
  CHECK(s.replay(p.id, "n0") == restored.spec);
  CHECK(s.project(p.id).narratives[0].spec == restored.spec);

  CHECK(code_of([&] {
          s.apply_edit(p.id, "n0", op(R"({"target": {"type": "overlay", "id": "o999"}, "action": "move",
                                       "params": {"x": 1, "y": 1}})"));
        }) == ErrorCode::kUnknownTarget);
  CHECK(code_of([&] {
          s.apply_edit(p.id, "n0", op(R"({"target": {"type": "base", "column": "Wind"}, "action": "recolor",
                                       "params": {"color": "#112233"}})"));
        }) == ErrorCode::kUnknownTarget);
  CHECK(code_of([&] {
          s.apply_edit(p.id, "n0", op(R"({"target": {"type": "canvas"}, "action": "resize",
                                       "params": {"width": 100, "height": 80}})"));
        }) == ErrorCode::kCanvasTooSmall);
  CHECK(code_of([&] { op(R"({"target": {"type": "overlay"}, "action": "fly"})"); }) ==
        ErrorCode::kInvalidArgument);
  // Failed edits leave no trace.
  CHECK(s.edit_log(p.id, "n0").size() == 4);
}

TEST_CASE("chart-level edits") {
  Service s(null_engine(), {});
  auto p = power_project(s);
  auto spec = p.narratives[1].spec;
  auto a = apply_edit_op(spec, op(R"({"target": {"type": "title"}, "action": "set_text", "params": {"text": "Oil"}})"));
  CHECK(spec.title == std::optional<std::string>("Oil"));
  auto b = apply_edit_op(spec, op(R"({"target": {"type": "axis", "axis": "y"}, "action": "set_text",
                                    "params": {"text": "TWh"}})"));
  CHECK(spec.y_label == std::optional<std::string>("TWh"));
  auto c = apply_edit_op(spec, op(R"({"target": {"type": "base", "column": "Oil"}, "action": "recolor",
                                    "params": {"color": "#123456"}})"));
  CHECK(spec.series_colors.at("Oil") == "#123456");
  auto d = apply_edit_op(spec, op(R"({"target": {"type": "legend"}, "action": "move", "params": {"x": 50, "y": 60}})"));
  auto e = apply_edit_op(spec, op(R"({"target": {"type": "canvas"}, "action": "resize",
                                    "params": {"width": 1000, "height": 600}})"));
  CHECK(spec.canvas == Canvas{1000, 600});
  CHECK(chart_svg(spec, s.project(p.id).table, null_engine().palette()).find("#123456") != std::string::npos);
  for (const auto* inv : {&e.inverse, &d.inverse, &c.inverse, &b.inverse, &a.inverse}) apply_edit_op(spec, *inv);
  CHECK(spec == p.narratives[1].spec);
}

TEST_CASE("property: inverses undo random edit sequences") {
  Service s(null_engine(), {});
  auto p = power_project(s);
  auto table = s.project(p.id).table;
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const auto& base = p.narratives[trial % 5].spec;
    LayeredChartSpec spec = base;
    std::vector<EditOp> forward, inverses;
    for (int step = 0; step < 8; ++step) {
      std::uniform_int_distribution<int> pick(0, 6);
      std::uniform_int_distribution<int> coord(0, 500);
      EditOp o;
      const int choice = pick(rng);
      if (spec.overlays.empty() && choice < 4) continue;
      const auto& target = spec.overlays.empty() ? OverlaySpec{} : spec.overlays[rng() % spec.overlays.size()];
      switch (choice) {
        case 0:
          o = op(json{{"target", {{"type", "overlay"}, {"id", target.id}}}, {"action", "recolor"},
                      {"params", {{"color", "#a0b0c0"}}}}.dump());
          break;
        case 1:
          o = op(json{{"target", {{"type", "overlay"}, {"id", target.id}}}, {"action", "resize"},
                      {"params", {{"strokeWidth", 1 + coord(rng) % 5}}}}.dump());
          break;
        case 2:
          o = op(json{{"target", {{"type", "overlay"}, {"id", target.id}}}, {"action", "remove_overlay"},
                      {"params", json::object()}}.dump());
          break;
        case 3:
          if (!is_text_overlay(target.kind)) continue;
          o = op(json{{"target", {{"type", "overlay"}, {"id", target.id}}}, {"action", "move"},
                      {"params", {{"x", coord(rng)}, {"y", coord(rng) % 300}}}}.dump());
          break;
        case 4:
          o = op(json{{"target", {{"type", "title"}}}, {"action", "set_text"},
                      {"params", {{"text", "T" + std::to_string(step)}}}}.dump());
          break;
        case 5:
          o = op(json{{"target", {{"type", "overlay"}}}, {"action", "add_overlay"},
                      {"params", {{"overlay", {{"kind", "bounding_box"},
                                               {"target", {{"columns", {spec.columns.at(0)}},
                                                           {"startRow", 1}, {"endRow", 2}}}}}}}}.dump());
          break;
        default:
          o = op(json{{"target", {{"type", "canvas"}}}, {"action", "resize"},
                      {"params", {{"width", 600 + coord(rng)}, {"height", 400 + coord(rng) % 200}}}}.dump());
          break;
      }
      auto applied = apply_edit_op(spec, o);
      forward.push_back(applied.op);
      inverses.push_back(applied.inverse);
      compose_chart(spec, table, null_engine().palette());
    }
    CHECK(replay_edits(base, forward) == spec);
    for (auto it = inverses.rbegin(); it != inverses.rend(); ++it) apply_edit_op(spec, *it);
    CHECK(spec == base);
  }
}

TEST_CASE("feedback marks go to the curation file") {
  test::TempDir dir;
  ServiceConfig cfg;
  cfg.curation_path = dir.file("curation.jsonl");
  Service s(null_engine(), cfg);
  auto p = power_project(s);

  FeedbackEntry mark;
  mark.kind = FeedbackKind::kMark;
  mark.narrative_id = "n0";
  mark.payload = json{{"span", {{"kind", "subject"}, {"text", "Coal-fired generation"}}}, {"note", "ok"}};
  auto out = s.record_feedback(p.id, mark);
  CHECK(out.id[0] == 'f');
  CHECK_FALSE(out.regenerated);
  auto entries = load_curation_file(cfg.curation_path);
  REQUIRE(entries.size() == 1);
  CHECK(entries[0].id == out.id);
  CHECK(entries[0].span.text == "Coal-fired generation");
  CHECK(entries[0].text == p.narratives[0].narrative.text);
  CHECK_FALSE(entries[0].corrected_binding.empty());
  CHECK_FALSE(entries[0].reviewed);

  FeedbackEntry bad = mark;
  bad.payload = json{{"span", {{"kind", "colour"}, {"text", ""}}}};
  try {
    s.record_feedback(p.id, bad);
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(e.details().size() == 2);
  }
  CHECK(load_curation_file(cfg.curation_path).size() == 1);

  FeedbackEntry up;
  up.kind = FeedbackKind::kThumbsUp;
  up.narrative_id = "n1";
  auto before = s.project(p.id);
  s.record_feedback(p.id, up);
  auto after = s.project(p.id);
  CHECK(project_to_json(after) == project_to_json(before));
  CHECK(load_curation_file(cfg.curation_path).size() == 1);
  CHECK(s.store().feedback(p.id).size() == 2);

  FeedbackEntry down;
  down.kind = FeedbackKind::kThumbsDown;
  down.narrative_id = "n1";
  auto d = s.record_feedback(p.id, down);
  REQUIRE(d.regenerated);
  CHECK(s.project(p.id).narratives[1].regenerations == 1);
  CHECK(s.project(p.id).narratives[1].epoch == before.narratives[1].epoch + 1);
}

TEST_CASE("regenerate serves the next provider answer") {
  Engine engine = fixture_engine();
  Service s(engine, {});
  auto p = s.create_project(test::gdp_table(), test::read_data("gdp_narrative.txt"));
  REQUIRE(p.narratives.size() == 1);
  REQUIRE(p.narratives[0].binding);
  CHECK_FALSE(p.narratives[0].used_fallback);
  CHECK(p.narratives[0].binding->records[0].position[0].row == 7);

  // An edit before regenerating belongs to the old epoch.
  auto title = op(R"({"target": {"type": "title"}, "action": "set_text", "params": {"text": "GDP"}})");
  s.apply_edit(p.id, "n0", title);
  auto r = s.regenerate(p.id, "n0");
  REQUIRE(r.binding);
  CHECK(r.binding->records[0].position[0].row == 8);
  CHECK(r.regenerations == 1);
  CHECK(r.epoch == 1);
  CHECK(r.spec == r.base_spec);
  CHECK(s.replay(p.id, "n0") == r.base_spec);
  CHECK(s.edit_log(p.id, "n0").size() == 1);
  CHECK(code_of([&] { s.regenerate(p.id, "n7"); }) == ErrorCode::kNotFound);
}

TEST_CASE("regenerate without a provider is stable") {
  Service s(null_engine(), {});
  auto p = power_project(s);
  auto a = s.regenerate(p.id, "n3");
  auto b = s.regenerate(p.id, "n3");
  CHECK(a.binding == p.narratives[3].binding);
  CHECK(b.binding == a.binding);
  CHECK(b.regenerations == 2);
  auto c = s.bind(p.id, "n3");
  CHECK(c.regenerations == 2);
  CHECK(c.epoch == 3);
}

TEST_CASE("exports") {
  Service s(null_engine(), {});
  auto p = power_project(s);
  auto gif = test::read_gif(s.export_gif(p.id));
  CHECK(gif.delays.size() == 5);
  CHECK(gif.width == p.narratives[0].spec.canvas.width);

  auto members = test::read_tar(s.export_png_archive(p.id));
  REQUIRE(members.size() == 5);
  for (size_t i = 0; i < 5; ++i) {
    CHECK(members[i].name == "n" + std::to_string(i) + ".png");
    REQUIRE(members[i].data.size() > 8);
    CHECK(members[i].data[1] == 'P');
  }
  auto svg = s.chart_svg(p.id + "_n2");
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(code_of([&] { s.chart_svg("nochart"); }) == ErrorCode::kNotFound);
  CHECK(code_of([&] { s.export_gif("pnothing"); }) == ErrorCode::kNotFound);
}

TEST_CASE("tar archive layout") {
  auto bytes = tar_archive({{"a.txt", {'h', 'i'}}, {"b.bin", std::vector<uint8_t>(700, 7)}});
  CHECK(bytes.size() % 512 == 0);
  CHECK(bytes.size() == 512 + 512 + 512 + 1024 + 1024);
  auto members = test::read_tar(bytes);
  REQUIRE(members.size() == 2);
  CHECK(members[0].name == "a.txt");
  CHECK(members[1].data.size() == 700);
}

TEST_CASE("store persists across service instances") {
  test::TempDir dir;
  ServiceConfig cfg;
  cfg.store_path = dir.file("store.db");
  std::string id;
  LayeredChartSpec edited;
  {
    Service s(null_engine(), cfg);
    id = power_project(s).id;
    edited = s.apply_edit(id, "n0", op(R"({"target": {"type": "title"}, "action": "set_text",
                                       "params": {"text": "Coal"}})")).spec;
  }
  Service again(null_engine(), cfg);
  auto p = again.project(id);
  CHECK(p.narratives.size() == 5);
  CHECK(p.narratives[0].spec == edited);
  CHECK(again.edit_log(id, "n0").size() == 1);
}

TEST_CASE("concurrent edits on one project are serialized") {
  Service s(null_engine(), {});
  auto p = power_project(s);
  std::vector<std::thread> threads;
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([&, t] {
      for (int i = 0; i < 5; ++i) {
        s.apply_edit(p.id, "n0", op(json{{"target", {{"type", "title"}}}, {"action", "set_text"},
                                         {"params", {{"text", std::to_string(t * 10 + i)}}}}.dump()));
      }
    });
  }
  for (auto& th : threads) th.join();
  auto log = s.edit_log(p.id, "n0");
  REQUIRE(log.size() == 20);
  for (size_t i = 0; i < log.size(); ++i) CHECK(log[i].seq == i + 1);
  CHECK(s.replay(p.id, "n0") == s.project(p.id).narratives[0].spec);
}

TEST_CASE("http status mapping") {
  CHECK(http_status(ErrorCode::kNotFound) == 404);
  CHECK(http_status(ErrorCode::kUnknownTarget) == 404);
  CHECK(http_status(ErrorCode::kValidation) == 400);
  CHECK(http_status(ErrorCode::kEmptyArticle) == 400);
  CHECK(http_status(ErrorCode::kBindingFailed) == 422);
  CHECK(http_status(ErrorCode::kProvider) == 502);
  CHECK(http_status(ErrorCode::kIo) == 500);
}

TEST_CASE("http api") {
  test::TempDir dir;
  ServiceConfig cfg;
  cfg.curation_path = dir.file("curation.jsonl");
  Service service(null_engine(), cfg);
  ApiServer server(service);
  const int port = server.bind("127.0.0.1", 0);
  REQUIRE(port > 0);
  std::thread loop([&] { server.listen(); });
  server.wait_until_ready();
  httplib::Client cli("127.0.0.1", port);

  json create = {{"table", test::read_data("power.csv")}, {"article", test::read_data("power_article.txt")}};
  auto res = cli.Post("/v1/projects", create.dump(), "application/json");
  REQUIRE(res);
  REQUIRE(res->status == 201);
  auto project = json::parse(res->body);
  const std::string pid = project["id"];
  CHECK(project["narratives"].size() == 5);

  res = cli.Get("/v1/projects/" + pid);
  REQUIRE(res);
  CHECK(res->status == 200);
  CHECK(json::parse(res->body) == project);

  res = cli.Get("/v1/projects/" + pid + "/narratives/n0/annotations");
  REQUIRE(res);
  auto ann = json::parse(res->body);
  CHECK(ann["narrativeId"] == "n0");
  CHECK_FALSE(ann["spans"].empty());
  CHECK(ann["spans"][0].contains("display"));

  // Idempotent edit.
  httplib::Headers rid = {{"X-Request-Id", "req-1"}};
  json edit = {{"target", {{"type", "title"}}}, {"action", "set_text"}, {"params", {{"text", "Coal"}}}};
  auto first = cli.Post("/v1/projects/" + pid + "/narratives/n0/edits", rid, edit.dump(), "application/json");
  auto second = cli.Post("/v1/projects/" + pid + "/narratives/n0/edits", rid, edit.dump(), "application/json");
  REQUIRE(first);
  REQUIRE(second);
  CHECK(first->status == 200);
  CHECK(second->status == 200);
  CHECK(second->body == first->body);
  CHECK(second->get_header_value("X-Idempotent-Replay") == "true");
  CHECK_FALSE(first->has_header("X-Idempotent-Replay"));
  res = cli.Get("/v1/projects/" + pid + "/narratives/n0/edits");
  REQUIRE(res);
  CHECK(json::parse(res->body)["edits"].size() == 1);

  // Same id, other path: a separate request.
  auto other = cli.Post("/v1/projects/" + pid + "/narratives/n1/edits", rid, edit.dump(), "application/json");
  REQUIRE(other);
  CHECK_FALSE(other->has_header("X-Idempotent-Replay"));

  res = cli.Post("/v1/projects/" + pid + "/narratives/n0/feedback",
                 json{{"kind", "mark"}, {"payload", {{"span", {{"kind", "numerical"}, {"text", "480"}}}}}}.dump(),
                 "application/json");
  REQUIRE(res);
  CHECK(res->status == 201);
  CHECK(load_curation_file(cfg.curation_path).size() == 1);

  res = cli.Post("/v1/projects/" + pid + "/narratives/n2/regenerate", "", "application/json");
  REQUIRE(res);
  CHECK(res->status == 200);

  res = cli.Get("/v1/projects/" + pid + "/export?format=gif");
  REQUIRE(res);
  CHECK(res->get_header_value("Content-Type") == "image/gif");
  CHECK(test::read_gif(std::vector<uint8_t>(res->body.begin(), res->body.end())).delays.size() == 5);
  res = cli.Get("/v1/projects/" + pid + "/export?format=png");
  REQUIRE(res);
  CHECK(test::read_tar(std::vector<uint8_t>(res->body.begin(), res->body.end())).size() == 5);

  res = cli.Get("/v1/charts/" + pid + "_n0.svg");
  REQUIRE(res);
  CHECK(res->get_header_value("Content-Type") == "image/svg+xml");
  CHECK(res->body.find("Coal") != std::string::npos);

  res = cli.Get("/v1/projects/pnothing");
  REQUIRE(res);
  CHECK(res->status == 404);
  CHECK(json::parse(res->body)["error"] == "NotFound");
  res = cli.Get("/v1/nowhere");
  REQUIRE(res);
  CHECK(res->status == 404);
  CHECK(json::parse(res->body).contains("error"));

  res = cli.Post("/v1/projects", json{{"table", "Year,A\n2020,1\n2021,x,3\n"}, {"article", "A rose."}}.dump(),
                 "application/json");
  REQUIRE(res);
  CHECK(res->status == 400);
  CHECK(json::parse(res->body)["details"].is_array());

  res = cli.Post("/v1/projects/" + pid + "/narratives/n0/edits",
                 json{{"target", {{"type", "overlay"}, {"id", "o404"}}}, {"action", "move"},
                      {"params", {{"x", 1}, {"y", 1}}}}.dump(),
                 "application/json");
  REQUIRE(res);
  CHECK(res->status == 404);
  res = cli.Post("/v1/projects/" + pid + "/narratives/n0/edits", "{not json", "application/json");
  REQUIRE(res);
  CHECK(res->status == 400);

  server.stop();
  loop.join();
}

TEST_CASE("http accepts multipart uploads") {
  Service service(null_engine(), {});
  ApiServer server(service);
  const int port = server.bind("127.0.0.1", 0);
  std::thread loop([&] { server.listen(); });
  server.wait_until_ready();
  httplib::Client cli("127.0.0.1", port);
  httplib::MultipartFormDataItems items = {
      {"table", test::read_data("hedge_funds.csv"), "hedge_funds.csv", "text/csv"},
      {"article", test::read_data("hedge_narrative.txt"), "", "text/plain"},
  };
  auto res = cli.Post("/v1/projects", items);
  REQUIRE(res);
  CHECK(res->status == 201);
  CHECK_FALSE(json::parse(res->body)["narratives"].empty());
  server.stop();
  loop.join();
}
