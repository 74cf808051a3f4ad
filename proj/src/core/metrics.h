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

#ifndef LAYERCHART_CORE_METRICS_H_
#define LAYERCHART_CORE_METRICS_H_

#include <cstddef>

namespace layerchart {

struct Metrics {
  size_t tp = 0;
  size_t fp = 0;
  size_t fn = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// P = TP/(TP+FP), R = TP/(TP+FN), F1 = 2PR/(P+R); each is 0 when its
// denominator is 0.
Metrics make_metrics(size_t tp, size_t fp, size_t fn);

double f1_from_precision_recall(double precision, double recall);

}  // namespace layerchart

#endif  // LAYERCHART_CORE_METRICS_H_
