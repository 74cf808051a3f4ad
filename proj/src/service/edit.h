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

#ifndef LAYERCHART_SERVICE_EDIT_H_
#define LAYERCHART_SERVICE_EDIT_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "render/chart.h"

namespace layerchart {

enum class EditTargetType { kOverlay, kBase, kCanvas, kTitle, kAxis, kLegend };
enum class EditAction { kMove, kRecolor, kResize, kSetText, kAddOverlay, kRemoveOverlay };

const char* edit_target_name(EditTargetType t);
const char* edit_action_name(EditAction a);

// Overlay targets carry the overlay id, base targets a column and axis
// targets "x" or "y".
struct EditTarget {
  EditTargetType type = EditTargetType::kOverlay;
  std::string id;
  bool operator==(const EditTarget&) const = default;
};

// Parameters by action:
//   move           {x, y} or {reset: true}            overlay, legend
//   recolor        {color: "#rrggbb" | null}          overlay, base
//   resize         {radius?, strokeWidth?}            overlay
//                  {lineWidth: number | null}         base
//                  {width, height}                    canvas
//   set_text       {text: string | null}              overlay, title, axis
//   add_overlay    {overlay: spec, index?}            overlay
//   remove_overlay {}                                 overlay
struct EditOp {
  EditTarget target;
  EditAction action = EditAction::kMove;
  nlohmann::json params = nlohmann::json::object();
  bool operator==(const EditOp&) const = default;
};

// {"target": {"type", "id"?}, "action", "params"}. Axis targets also accept
// "axis" and base targets "column" in place of "id". Throws
// Error(kInvalidArgument).
EditOp edit_op_from_json(const nlohmann::json& doc);
nlohmann::json edit_op_to_json(const EditOp& op);

struct AppliedEdit {
  EditOp op;       // normalized: add_overlay carries the assigned id
  EditOp inverse;  // applying it to the result restores the prior spec
};

// Throws Error(kUnknownTarget) for a missing overlay or column and
// Error(kInvalidArgument) for an action the target does not support or
// malformed parameters. `spec` is left as it was when it throws.
AppliedEdit apply_edit_op(LayeredChartSpec& spec, const EditOp& op);

// Applies the forward ops in order.
LayeredChartSpec replay_edits(LayeredChartSpec spec, const std::vector<EditOp>& ops);

}  // namespace layerchart

#endif  // LAYERCHART_SERVICE_EDIT_H_
