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

#ifndef LAYERCHART_APP_SCALING_H_
#define LAYERCHART_APP_SCALING_H_

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "app/engine.h"
#include "core/table.h"

namespace layerchart {

struct ScalingConfig {
  size_t min_cols = 2;
  size_t max_cols = 10;
  size_t col_step = 2;
  size_t min_rows = 20;
  size_t max_rows = 200;
  size_t row_step = 45;
  size_t narratives_per_cell = 10;
  uint64_t seed = 1;
};

struct ScalingCell {
  size_t rows = 0;
  size_t cols = 0;
  size_t correct = 0;
  size_t total = 0;
  double accuracy = 0.0;
};

// A table of exactly `rows` rows and `cols` numeric columns. Base columns
// and rows are kept (truncated when the base is larger); the added ones get
// fresh names and random-walk values. Every numeric cell is distinct and
// non-integral, so a value names exactly one cell. A base without an axis
// column gains a Year axis.
DataTable grow_table(const DataTable& base, size_t rows, size_t cols, std::mt19937_64& rng);

// One synthetic narrative per sampled cell: "<column> reached <value> in
// <row label>." A narrative counts as correct when the binding has a number
// record at that cell and no number record elsewhere.
struct ScalingProbe {
  std::string text;
  std::string column;
  size_t row = 1;
  double value = 0.0;
};
std::vector<ScalingProbe> scaling_probes(const DataTable& table, size_t count, std::mt19937_64& rng);

// Throws Error(kInvalidArgument) for an empty or inverted grid.
std::vector<ScalingCell> run_scaling(const std::optional<DataTable>& base, const ScalingConfig& cfg,
                                     const Engine& engine);

// "rows,cols,accuracy" header, one line per cell, accuracy with 4 decimals.
std::string scaling_csv(const std::vector<ScalingCell>& cells);

}  // namespace layerchart

#endif  // LAYERCHART_APP_SCALING_H_
