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

#ifndef LAYERCHART_APP_EVAL_H_
#define LAYERCHART_APP_EVAL_H_

#include <string>
#include <vector>

#include "app/engine.h"
#include "binder/evaluate.h"
#include "trendlex/lexicon.h"

namespace layerchart {

// fallback_bind over every narrative of the corpus; labels come from
// labels_from_binding. A narrative the binder cannot bind gets no labels.
LabelCorpus fallback_labels(const LabelCorpus& gold, const Lexicon& lexicon);

// The same through bind_narrative, so the engine's provider is used.
LabelCorpus engine_labels(const LabelCorpus& gold, const Engine& engine);

// Both files in the corpus format; tables may be omitted from pred.
EvaluationReport evaluate_files(const std::string& pred_path, const std::string& gold_path);

}  // namespace layerchart

#endif  // LAYERCHART_APP_EVAL_H_
