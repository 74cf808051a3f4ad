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

#include "service/edit.h"

#include <algorithm>
#include <cmath>

#include "core/error.h"
#include "overlay/palette.h"

namespace layerchart {

namespace {

using nlohmann::json;

constexpr std::pair<EditTargetType, const char*> kTargets[] = {
    {EditTargetType::kOverlay, "overlay"}, {EditTargetType::kBase, "base"},
    {EditTargetType::kCanvas, "canvas"},   {EditTargetType::kTitle, "title"},
    {EditTargetType::kAxis, "axis"},       {EditTargetType::kLegend, "legend"}};

constexpr std::pair<EditAction, const char*> kActions[] = {
    {EditAction::kMove, "move"},         {EditAction::kRecolor, "recolor"},
    {EditAction::kResize, "resize"},     {EditAction::kSetText, "set_text"},
    {EditAction::kAddOverlay, "add_overlay"}, {EditAction::kRemoveOverlay, "remove_overlay"}};

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorCode::kInvalidArgument, msg); }

[[noreturn]] void unsupported(const EditOp& op) {
  bad(std::string("action '") + edit_action_name(op.action) + "' does not apply to a " +
      edit_target_name(op.target.type) + " target");
}

double number_param(const json& params, const char* key) {
  if (!params.contains(key) || !params[key].is_number()) bad(std::string("parameter '") + key + "' must be a number");
  double v = params[key].get<double>();
  if (!std::isfinite(v)) bad(std::string("parameter '") + key + "' must be finite");
  return v;
}

double positive_param(const json& params, const char* key) {
  double v = number_param(params, key);
  if (v <= 0) bad(std::string("parameter '") + key + "' must be positive");
  return v;
}

std::optional<std::string> color_param(const json& params) {
  if (!params.contains("color")) bad("parameter 'color' is required");
  if (params["color"].is_null()) return std::nullopt;
  if (!params["color"].is_string()) bad("parameter 'color' must be a string");
  auto c = params["color"].get<std::string>();
  try {
    parse_color(c);
  } catch (const Error&) {
    bad("'" + c + "' is not a #rrggbb color");
  }
  return c;
}

std::optional<std::string> text_param(const json& params) {
  if (!params.contains("text")) bad("parameter 'text' is required");
  if (params["text"].is_null()) return std::nullopt;
  if (!params["text"].is_string()) bad("parameter 'text' must be a string");
  return params["text"].get<std::string>();
}

json opt_json(const std::optional<std::string>& v) { return v ? json(*v) : json(nullptr); }
json opt_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json point_params(const std::optional<Point>& p) {
  if (!p) return {{"reset", true}};
  return {{"x", p->x}, {"y", p->y}};
}

std::optional<Point> move_param(const json& params) {
  if (params.value("reset", false)) return std::nullopt;
  return Point{number_param(params, "x"), number_param(params, "y")};
}

size_t overlay_index(const LayeredChartSpec& spec, const std::string& id) {
  for (size_t i = 0; i < spec.overlays.size(); ++i) {
    if (spec.overlays[i].id == id) return i;
  }
  throw Error(ErrorCode::kUnknownTarget, "no overlay '" + id + "' in chart " + spec.narrative_id);
}

std::string next_overlay_id(const LayeredChartSpec& spec) {
  size_t top = 0;
  for (const auto& o : spec.overlays) {
    if (o.id.size() > 1 && o.id[0] == 'o' &&
        std::all_of(o.id.begin() + 1, o.id.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      top = std::max<size_t>(top, std::stoul(o.id.substr(1)));
    }
  }
  return "o" + std::to_string(top + 1);
}

EditOp make(EditTargetType type, std::string id, EditAction action, json params) {
  return EditOp{EditTarget{type, std::move(id)}, action, std::move(params)};
}

AppliedEdit apply_overlay(LayeredChartSpec& spec, const EditOp& op) {
  const auto& p = op.params;
  if (op.action == EditAction::kAddOverlay) {
    if (!p.contains("overlay")) bad("parameter 'overlay' is required");
    OverlaySpec o = overlay_spec_from_json(p["overlay"]);
    if (o.id.empty()) o.id = op.target.id.empty() ? next_overlay_id(spec) : op.target.id;
    for (const auto& existing : spec.overlays) {
      if (existing.id == o.id) bad("overlay id '" + o.id + "' is taken");
    }
    size_t index = spec.overlays.size();
    if (p.contains("index")) {
      if (!p["index"].is_number_unsigned()) bad("parameter 'index' must be a non-negative integer");
      index = std::min(index, p["index"].get<size_t>());
    }
    spec.overlays.insert(spec.overlays.begin() + static_cast<std::ptrdiff_t>(index), o);
    EditOp fwd = make(EditTargetType::kOverlay, o.id, EditAction::kAddOverlay,
                      {{"overlay", overlay_spec_to_json(o)}, {"index", index}});
    return {fwd, make(EditTargetType::kOverlay, o.id, EditAction::kRemoveOverlay, json::object())};
  }
  const size_t i = overlay_index(spec, op.target.id);
  OverlaySpec& o = spec.overlays[i];
  switch (op.action) {
    case EditAction::kMove: {
      auto before = o.position;
      o.position = move_param(p);
      return {op, make(EditTargetType::kOverlay, o.id, EditAction::kMove, point_params(before))};
    }
    case EditAction::kRecolor: {
      auto before = o.color;
      o.color = color_param(p);
      return {op, make(EditTargetType::kOverlay, o.id, EditAction::kRecolor, {{"color", opt_json(before)}})};
    }
    case EditAction::kResize: {
      if (!p.contains("radius") && !p.contains("strokeWidth")) bad("resize needs 'radius' or 'strokeWidth'");
      json inverse = json::object();
      OverlaySpec next = o;
      if (p.contains("radius")) {
        inverse["radius"] = opt_json(o.radius);
        next.radius = p["radius"].is_null() ? std::nullopt : std::optional<double>(positive_param(p, "radius"));
      }
      if (p.contains("strokeWidth")) {
        inverse["strokeWidth"] = opt_json(o.stroke_width);
        next.stroke_width = p["strokeWidth"].is_null() ? std::nullopt
                                                       : std::optional<double>(positive_param(p, "strokeWidth"));
      }
      o = next;
      return {op, make(EditTargetType::kOverlay, o.id, EditAction::kResize, inverse)};
    }
    case EditAction::kSetText: {
      auto before = o.text;
      auto text = text_param(p);
      if (is_text_overlay(o.kind) && (!text || !valid_overlay_text(o.kind, *text))) {
        bad("text is not valid for a " + std::string(overlay_kind_name(o.kind)));
      }
      o.text = text;
      return {op, make(EditTargetType::kOverlay, o.id, EditAction::kSetText, {{"text", opt_json(before)}})};
    }
    case EditAction::kRemoveOverlay: {
      json removed = overlay_spec_to_json(o);
      spec.overlays.erase(spec.overlays.begin() + static_cast<std::ptrdiff_t>(i));
      return {op, make(EditTargetType::kOverlay, op.target.id, EditAction::kAddOverlay,
                       {{"overlay", removed}, {"index", i}})};
    }
    case EditAction::kAddOverlay:
      break;
  }
  unsupported(op);
}

}  // namespace

const char* edit_target_name(EditTargetType t) {
  for (const auto& [k, name] : kTargets) {
    if (k == t) return name;
  }
  return "overlay";
}

const char* edit_action_name(EditAction a) {
  for (const auto& [k, name] : kActions) {
    if (k == a) return name;
  }
  return "move";
}

EditOp edit_op_from_json(const json& doc) {
  if (!doc.is_object()) bad("an edit must be an object");
  EditOp op;
  try {
    const auto& t = doc.at("target");
    std::string type = t.is_string() ? t.get<std::string>() : t.at("type").get<std::string>();
    bool known = false;
    for (const auto& [k, name] : kTargets) {
      if (type == name) {
        op.target.type = k;
        known = true;
      }
    }
    if (!known) bad("unknown edit target '" + type + "'");
    if (t.is_object()) {
      for (const char* key : {"id", "column", "axis"}) {
        if (t.contains(key)) op.target.id = t[key].get<std::string>();
      }
    }
    std::string action = doc.at("action").get<std::string>();
    known = false;
    for (const auto& [k, name] : kActions) {
      if (action == name) {
        op.action = k;
        known = true;
      }
    }
    if (!known) bad("unknown edit action '" + action + "'");
    op.params = doc.value("params", json::object());
    if (!op.params.is_object()) bad("edit params must be an object");
  } catch (const json::exception& e) {
    bad(std::string("edit: ") + e.what());
  }
  return op;
}

json edit_op_to_json(const EditOp& op) {
  json target = {{"type", edit_target_name(op.target.type)}};
  if (!op.target.id.empty()) target["id"] = op.target.id;
  return {{"target", target}, {"action", edit_action_name(op.action)}, {"params", op.params}};
}

AppliedEdit apply_edit_op(LayeredChartSpec& spec, const EditOp& op) {
  LayeredChartSpec work = spec;
  AppliedEdit out;
  const auto& p = op.params;
  switch (op.target.type) {
    case EditTargetType::kOverlay:
      if (op.target.id.empty() && op.action != EditAction::kAddOverlay) bad("overlay target needs an id");
      out = apply_overlay(work, op);
      break;
    case EditTargetType::kBase: {
      if (std::find(work.columns.begin(), work.columns.end(), op.target.id) == work.columns.end()) {
        throw Error(ErrorCode::kUnknownTarget, "column '" + op.target.id + "' is not plotted");
      }
      if (op.action == EditAction::kRecolor) {
        auto it = work.series_colors.find(op.target.id);
        json before = it == work.series_colors.end() ? json(nullptr) : json(it->second);
        auto c = color_param(p);
        if (c) {
          work.series_colors[op.target.id] = *c;
        } else {
          work.series_colors.erase(op.target.id);
        }
        out = {op, make(EditTargetType::kBase, op.target.id, EditAction::kRecolor, {{"color", before}})};
      } else if (op.action == EditAction::kResize) {
        if (!p.contains("lineWidth")) bad("parameter 'lineWidth' is required");
        json before = opt_json(work.line_width);
        work.line_width = p["lineWidth"].is_null() ? std::nullopt
                                                   : std::optional<double>(positive_param(p, "lineWidth"));
        out = {op, make(EditTargetType::kBase, op.target.id, EditAction::kResize, {{"lineWidth", before}})};
      } else {
        unsupported(op);
      }
      break;
    }
    case EditTargetType::kCanvas: {
      if (op.action != EditAction::kResize) unsupported(op);
      json before = {{"width", work.canvas.width}, {"height", work.canvas.height}};
      double w = number_param(p, "width");
      double h = number_param(p, "height");
      if (w < 200 || h < 150 || w > 10000 || h > 10000 || w != std::floor(w) || h != std::floor(h)) {
        throw Error(ErrorCode::kCanvasTooSmall, "canvas must be whole pixels between 200x150 and 10000x10000");
      }
      work.canvas = Canvas{static_cast<int>(w), static_cast<int>(h)};
      out = {op, make(EditTargetType::kCanvas, "", EditAction::kResize, before)};
      break;
    }
    case EditTargetType::kTitle: {
      if (op.action != EditAction::kSetText) unsupported(op);
      json before = opt_json(work.title);
      work.title = text_param(p);
      out = {op, make(EditTargetType::kTitle, "", EditAction::kSetText, {{"text", before}})};
      break;
    }
    case EditTargetType::kAxis: {
      if (op.action != EditAction::kSetText) unsupported(op);
      if (op.target.id != "x" && op.target.id != "y") {
        throw Error(ErrorCode::kUnknownTarget, "axis must be 'x' or 'y'");
      }
      auto& label = op.target.id == "x" ? work.x_label : work.y_label;
      json before = opt_json(label);
      label = text_param(p);
      out = {op, make(EditTargetType::kAxis, op.target.id, EditAction::kSetText, {{"text", before}})};
      break;
    }
    case EditTargetType::kLegend: {
      if (op.action != EditAction::kMove) unsupported(op);
      json before = point_params(work.legend_position);
      work.legend_position = move_param(p);
      out = {op, make(EditTargetType::kLegend, "", EditAction::kMove, before)};
      break;
    }
  }
  spec = std::move(work);
  return out;
}

LayeredChartSpec replay_edits(LayeredChartSpec spec, const std::vector<EditOp>& ops) {
  for (const auto& op : ops) apply_edit_op(spec, op);
  return spec;
}

}  // namespace layerchart
