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

#ifndef LAYERCHART_BINDER_FALLBACK_H_
#define LAYERCHART_BINDER_FALLBACK_H_

#include "binder/segment.h"
#include "core/binding.h"
#include "core/table.h"
#include "trendlex/detectors.h"
#include "trendlex/lexicon.h"

namespace layerchart {

// Rule-based binder that needs no model:
//  - subjects are spans overlapping column-name tokens (overlap >= 0.5);
//  - numbers, after unit normalization, bind to equal cells of the nearest
//    subject's column, then the primary subject's, then any column; the rest
//    are dropped with a note;
//  - trend phrases from the lexicon get spans from the detectors, taken in
//    text order so successive trends on one column do not share rows; two
//    years named in the sentence fix the span instead.
// Throws Error(kBindingFailed) when no subject column is found.
BindingResult fallback_bind(const Narrative& narrative, const DataTable& table,
                            const Lexicon& lexicon, const DetectorParams& params = {});

}  // namespace layerchart

#endif  // LAYERCHART_BINDER_FALLBACK_H_
