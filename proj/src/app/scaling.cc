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

#include "app/scaling.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>

#include "app/pipeline.h"
#include "core/error.h"
#include "core/util.h"
#include "trendlex/lexicon.h"

namespace layerchart {

namespace {

const char* const kColumnNames[] = {"Exports",  "Imports",   "Wages",     "Deposits", "Loans",
                                    "Tariffs",  "Rents",     "Dividends", "Subsidies", "Royalties",
                                    "Pensions", "Freight",   "Payrolls",  "Remittances"};

std::set<std::string> name_tokens(const DataTable& t) {
  std::set<std::string> out;
  for (const auto& c : t.columns) {
    for (const auto& w : word_tokens(c.name)) out.insert(w.norm);
  }
  return out;
}

double cell_number(const Cell& c) { return std::get<double>(c); }

bool is_number(const Cell& c) { return std::holds_alternative<double>(c); }

// Next free non-integral value near v, one decimal place.
double claim_value(double v, std::set<long long>& used) {
  long long tenths = std::llround(std::max(1.0, v) * 10.0);
  while (tenths % 10 == 0 || used.count(tenths)) ++tenths;
  used.insert(tenths);
  return static_cast<double>(tenths) / 10.0;
}

}  // namespace

DataTable grow_table(const DataTable& base, size_t rows, size_t cols, std::mt19937_64& rng) {
  DataTable t = base;
  if (t.name.empty()) t.name = "scaling";
  if (!t.axis_column()) {
    t.columns.insert(t.columns.begin(), ColumnMeta{"Year", ColumnKind::kTemporal, std::nullopt});
    for (size_t r = 0; r < t.rows.size(); ++r) {
      t.rows[r].insert(t.rows[r].begin(), Cell{1800.0 + static_cast<double>(r)});
    }
  }
  // Drop numeric columns beyond the requested count.
  size_t kept = 0;
  for (size_t c = 0; c < t.columns.size();) {
    if (t.columns[c].kind == ColumnKind::kNumeric && ++kept > cols) {
      t.columns.erase(t.columns.begin() + static_cast<std::ptrdiff_t>(c));
      for (auto& row : t.rows) row.erase(row.begin() + static_cast<std::ptrdiff_t>(c));
    } else {
      ++c;
    }
  }
  if (t.rows.size() > rows) t.rows.resize(rows);

  std::set<long long> used;
  for (const auto& row : t.rows) {
    for (size_t c = 0; c < row.size(); ++c) {
      if (t.columns[c].kind == ColumnKind::kNumeric && is_number(row[c])) {
        used.insert(std::llround(cell_number(row[c]) * 10.0));
      }
    }
  }
  std::uniform_real_distribution<double> start(50.0, 500.0);
  std::normal_distribution<double> step(0.0, 6.0);

  auto tokens = name_tokens(t);
  size_t next_name = 0;
  while (kept < cols) {
    std::string name;
    while (next_name < std::size(kColumnNames)) {
      std::string candidate = kColumnNames[next_name++];
      if (!tokens.count(to_lower(candidate))) {
        name = candidate;
        break;
      }
    }
    if (name.empty()) throw Error(ErrorCode::kInvalidArgument, "too many columns requested for the scaling grid");
    tokens.insert(to_lower(name));
    t.columns.push_back(ColumnMeta{name, ColumnKind::kNumeric, std::nullopt});
    double v = start(rng);
    for (auto& row : t.rows) {
      v = std::max(1.0, v + step(rng));
      row.push_back(Cell{claim_value(v, used)});
    }
    ++kept;
  }

  const size_t axis = *t.axis_column();
  std::vector<double> walk(t.columns.size(), 0.0);
  for (size_t c = 0; c < t.columns.size(); ++c) {
    walk[c] = t.rows.empty() || !is_number(t.rows.back()[c]) ? start(rng) : cell_number(t.rows.back()[c]);
  }
  while (t.rows.size() < rows) {
    std::vector<Cell> row(t.columns.size());
    const size_t index = t.rows.size();
    const auto prev = t.rows.empty() ? std::nullopt : parse_number(cell_to_string(t.rows.back()[axis]));
    if (prev && std::floor(*prev) == *prev) {
      if (is_number(t.rows.back()[axis])) {
        row[axis] = Cell{*prev + 1.0};
      } else {
        row[axis] = Cell{format_number(*prev + 1.0)};
      }
    } else if (t.rows.empty()) {
      row[axis] = Cell{1800.0};
    } else {
      row[axis] = Cell{"P" + std::to_string(index + 1)};
    }
    for (size_t c = 0; c < t.columns.size(); ++c) {
      if (c == axis || t.columns[c].kind != ColumnKind::kNumeric) {
        if (c != axis) row[c] = Cell{std::string("n/a")};
        continue;
      }
      walk[c] = std::max(1.0, walk[c] + step(rng));
      row[c] = Cell{claim_value(walk[c], used)};
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

std::vector<ScalingProbe> scaling_probes(const DataTable& table, size_t count, std::mt19937_64& rng) {
  std::map<long long, size_t> seen;
  std::vector<std::pair<size_t, size_t>> cells;  // (column, 0-based row)
  for (size_t r = 0; r < table.rows.size(); ++r) {
    for (size_t c = 0; c < table.columns.size(); ++c) {
      if (table.columns[c].kind != ColumnKind::kNumeric || !is_number(table.rows[r][c])) continue;
      seen[std::llround(cell_number(table.rows[r][c]) * 10.0)]++;
      cells.emplace_back(c, r);
    }
  }
  std::erase_if(cells, [&](const auto& cell) {
    return seen[std::llround(cell_number(table.rows[cell.second][cell.first]) * 10.0)] > 1;
  });
  std::shuffle(cells.begin(), cells.end(), rng);
  std::vector<ScalingProbe> out;
  for (size_t i = 0; i < count && !cells.empty(); ++i) {
    const auto [c, r] = cells[i % cells.size()];
    ScalingProbe p;
    p.column = table.columns[c].name;
    p.row = r + 1;
    p.value = cell_number(table.rows[r][c]);
    std::string value = format_number(p.value);
    if (table.columns[c].unit == "%") value += "%";
    p.text = p.column + " reached " + value + " in " + table.row_label(p.row) + ".";
    out.push_back(std::move(p));
  }
  return out;
}

namespace {

bool probe_correct(const ScalingProbe& p, const std::optional<BindOutcome>& outcome) {
  if (!outcome) return false;
  bool hit = false;
  for (const auto& r : outcome->result.records) {
    if (!r.num) continue;
    const bool here = r.position[0].column == p.column && r.position[0].row == p.row;
    if (!here) return false;
    for (double v : *r.num) {
      if (std::abs(v - p.value) < 1e-9) hit = true;
    }
  }
  return hit;
}

std::vector<size_t> steps(size_t lo, size_t hi, size_t step, const char* what) {
  if (lo == 0 || lo > hi || step == 0) {
    throw Error(ErrorCode::kInvalidArgument, std::string("invalid ") + what + " range");
  }
  std::vector<size_t> out;
  for (size_t v = lo; v <= hi; v += step) out.push_back(v);
  if (out.back() != hi) out.push_back(hi);
  return out;
}

}  // namespace

std::vector<ScalingCell> run_scaling(const std::optional<DataTable>& base, const ScalingConfig& cfg,
                                     const Engine& engine) {
  if (cfg.narratives_per_cell == 0) throw Error(ErrorCode::kInvalidArgument, "narratives per cell must be positive");
  const DataTable seed_table = base.value_or(DataTable{});
  std::vector<ScalingCell> out;
  for (size_t rows : steps(cfg.min_rows, cfg.max_rows, cfg.row_step, "row")) {
    for (size_t cols : steps(cfg.min_cols, cfg.max_cols, cfg.col_step, "column")) {
      std::mt19937_64 rng(cfg.seed * 1000003ULL + rows * 1009ULL + cols);
      DataTable table = grow_table(seed_table, rows, cols, rng);
      auto probes = scaling_probes(table, cfg.narratives_per_cell, rng);
      std::vector<Narrative> narratives;
      for (size_t i = 0; i < probes.size(); ++i) {
        narratives.push_back(Narrative{narrative_id(i), i, probes[i].text, std::nullopt});
      }
      auto runs = bind_narratives(narratives, table, engine);
      ScalingCell cell{rows, cols, 0, probes.size(), 0.0};
      for (size_t i = 0; i < probes.size(); ++i) {
        if (probe_correct(probes[i], runs[i].outcome)) ++cell.correct;
      }
      cell.accuracy = cell.total ? static_cast<double>(cell.correct) / static_cast<double>(cell.total) : 0.0;
      out.push_back(cell);
    }
  }
  return out;
}

std::string scaling_csv(const std::vector<ScalingCell>& cells) {
  std::string out = "rows,cols,accuracy\n";
  char line[96];
  for (const auto& c : cells) {
    std::snprintf(line, sizeof(line), "%zu,%zu,%.4f\n", c.rows, c.cols, c.accuracy);
    out += line;
  }
  return out;
}

}  // namespace layerchart
