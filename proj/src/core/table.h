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

#ifndef LAYERCHART_CORE_TABLE_H_
#define LAYERCHART_CORE_TABLE_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"

namespace layerchart {

enum class ColumnKind { kNumeric, kTemporal, kCategorical };

const char* column_kind_name(ColumnKind kind);
std::optional<ColumnKind> parse_column_kind(std::string_view name);

struct ColumnMeta {
  std::string name;
  ColumnKind kind = ColumnKind::kNumeric;
  std::optional<std::string> unit;

  bool operator==(const ColumnMeta&) const = default;
};

// A cell is empty, a number, or text.
using Cell = std::variant<std::monostate, double, std::string>;

// Rectangular table. Rows are stored 0-based; every wire format and every
// user-facing message uses 1-based row numbers.
struct DataTable {
  std::string name;
  std::vector<ColumnMeta> columns;
  std::vector<std::vector<Cell>> rows;

  size_t row_count() const { return rows.size(); }
  size_t column_count() const { return columns.size(); }

  std::optional<size_t> column_index(std::string_view column) const;
  bool has_column(std::string_view column) const {
    return column_index(column).has_value();
  }

  // Cell at (column, 1-based row); nullopt when out of range.
  const Cell* cell(std::string_view column, size_t row1) const;

  // Numeric view of a column. Non-numeric cells read as nullopt.
  std::vector<std::optional<double>> numeric_series(std::string_view column) const;

  // Index of the column used for the category / time axis: the first
  // non-numeric column, if any.
  std::optional<size_t> axis_column() const;

  // Display label for a 1-based row: the axis cell rendered as text, or the
  // row number when the table has no axis column.
  std::string row_label(size_t row1) const;

  std::vector<std::string> numeric_column_names() const;

  bool operator==(const DataTable&) const = default;
};

// Returns one message per broken invariant; empty means the table is valid.
std::vector<std::string> validate_table(const DataTable& table);

// Comma-separated values with a header row. Column kinds are inferred:
// all-number columns are numeric, except a leading column of year-like
// integers or any column whose header names a time unit, which is temporal.
DataTable parse_csv_table(std::string_view text, std::string name = "table");

DataTable table_from_json(const nlohmann::json& doc);
nlohmann::json table_to_json(const DataTable& table);

// Reads CSV or the structured document form, chosen by content.
DataTable parse_table_text(std::string_view text, std::string name = "table");
DataTable load_table_file(const std::string& path);

// Compact rendering used inside prompts: a header line with units followed
// by one numbered line per row. parse_table_digest inverts it.
std::string table_digest(const DataTable& table);
DataTable parse_table_digest(std::string_view digest);

// Combined-analysis columns are named "A + B" and hold the row-wise sum of
// their numeric components.
std::vector<std::string> split_combined_column(std::string_view name);
std::string combined_column_name(const std::vector<std::string>& parts);
bool is_resolvable_column(const DataTable& table, std::string_view column);
std::vector<std::optional<double>> resolve_series(const DataTable& table,
                                                  std::string_view column);
// Adds the derived column to a copy of the table when it is not present yet.
DataTable with_combined_column(const DataTable& table, std::string_view column);

std::string cell_to_string(const Cell& cell);

}  // namespace layerchart

#endif  // LAYERCHART_CORE_TABLE_H_
