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

#include "core/table.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>
#include <sstream>

#include "core/error.h"
#include "core/util.h"

namespace layerchart {
namespace {

constexpr std::string_view kCombinedSeparator = " + ";

bool header_names_time(std::string_view header) {
  static const char* kWords[] = {"year", "date", "quarter", "month", "period",
                                 "time", "week", "day", "fy"};
  std::string lower = to_lower(header);
  std::string token;
  auto flush = [&]() -> bool {
    bool hit = false;
    for (const char* w : kWords) hit = hit || token == w;
    token.clear();
    return hit;
  };
  for (char c : lower) {
    if (std::isalpha(static_cast<unsigned char>(c))) {
      token.push_back(c);
    } else if (!token.empty() && flush()) {
      return true;
    }
  }
  return !token.empty() && flush();
}

bool looks_like_period(std::string_view v) {
  // 2017, 2017-03, 2017-03-01, Q1 2020, 2020Q1, Jan 2020, FY2021
  std::string s = to_lower(trim(v));
  if (s.empty()) return false;
  auto year_at = [&](size_t pos) {
    if (pos + 4 > s.size()) return false;
    for (size_t i = pos; i < pos + 4; ++i) {
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    }
    int y = std::stoi(s.substr(pos, 4));
    return y >= 1800 && y <= 2200;
  };
  if (s.size() == 4 && year_at(0)) return true;
  if (s.size() >= 7 && year_at(0) && s[4] == '-') return true;
  if (s.rfind("fy", 0) == 0 && year_at(2)) return true;
  if (s.size() >= 6 && s[0] == 'q' && std::isdigit(static_cast<unsigned char>(s[1]))) return true;
  if (s.size() == 6 && year_at(0) && s[4] == 'q') return true;
  static const char* kMonths[] = {"jan", "feb", "mar", "apr", "may", "jun",
                                  "jul", "aug", "sep", "oct", "nov", "dec"};
  for (const char* m : kMonths) {
    if (s.rfind(m, 0) == 0 && s.size() >= 8 && year_at(s.size() - 4)) return true;
  }
  return false;
}

std::vector<std::vector<std::string>> parse_csv_records(std::string_view text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;
  for (size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(c);
      }
      continue;
    }
    if (c == '"' && !field_started) {
      in_quotes = true;
      field_started = true;
    } else if (c == ',') {
      record.push_back(std::move(field));
      field.clear();
      field_started = false;
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      record.push_back(std::move(field));
      field.clear();
      field_started = false;
      bool blank = record.size() == 1 && trim(record[0]).empty();
      if (!blank) records.push_back(std::move(record));
      record.clear();
    } else {
      field.push_back(c);
      field_started = true;
    }
  }
  if (in_quotes) throw Error(ErrorCode::kParse, "unterminated quoted CSV field");
  if (field_started || !record.empty()) {
    record.push_back(std::move(field));
    bool blank = record.size() == 1 && trim(record[0]).empty();
    if (!blank) records.push_back(std::move(record));
  }
  return records;
}

// "Revenue [CNY Billion]" -> ("Revenue", "CNY Billion")
std::pair<std::string, std::optional<std::string>> split_header_unit(std::string_view header) {
  std::string_view h = trim(header);
  if (!h.empty() && h.back() == ']') {
    size_t open = h.rfind('[');
    if (open != std::string_view::npos && open > 0) {
      std::string unit(trim(h.substr(open + 1, h.size() - open - 2)));
      std::string name(trim(h.substr(0, open)));
      if (!name.empty()) {
        return {name, unit.empty() ? std::nullopt : std::optional<std::string>(unit)};
      }
    }
  }
  return {std::string(h), std::nullopt};
}

std::string escape_digest_cell(std::string text) {
  std::replace(text.begin(), text.end(), '|', '/');
  std::replace(text.begin(), text.end(), '\n', ' ');
  return text;
}

}  // namespace

const char* column_kind_name(ColumnKind kind) {
  switch (kind) {
    case ColumnKind::kNumeric: return "numeric";
    case ColumnKind::kTemporal: return "temporal";
    case ColumnKind::kCategorical: return "categorical";
  }
  return "numeric";
}

std::optional<ColumnKind> parse_column_kind(std::string_view name) {
  if (name == "numeric") return ColumnKind::kNumeric;
  if (name == "temporal") return ColumnKind::kTemporal;
  if (name == "categorical") return ColumnKind::kCategorical;
  return std::nullopt;
}

std::optional<size_t> DataTable::column_index(std::string_view column) const {
  for (size_t i = 0; i < columns.size(); ++i) {
    if (columns[i].name == column) return i;
  }
  return std::nullopt;
}

const Cell* DataTable::cell(std::string_view column, size_t row1) const {
  auto ci = column_index(column);
  if (!ci || row1 == 0 || row1 > rows.size()) return nullptr;
  const auto& row = rows[row1 - 1];
  if (*ci >= row.size()) return nullptr;
  return &row[*ci];
}

std::vector<std::optional<double>> DataTable::numeric_series(std::string_view column) const {
  std::vector<std::optional<double>> out;
  auto ci = column_index(column);
  if (!ci) return out;
  out.reserve(rows.size());
  for (const auto& row : rows) {
    if (*ci < row.size() && std::holds_alternative<double>(row[*ci])) {
      out.push_back(std::get<double>(row[*ci]));
    } else {
      out.push_back(std::nullopt);
    }
  }
  return out;
}

std::optional<size_t> DataTable::axis_column() const {
  for (size_t i = 0; i < columns.size(); ++i) {
    if (columns[i].kind != ColumnKind::kNumeric) return i;
  }
  return std::nullopt;
}

std::string DataTable::row_label(size_t row1) const {
  auto axis = axis_column();
  if (axis && row1 >= 1 && row1 <= rows.size() && *axis < rows[row1 - 1].size()) {
    std::string s = cell_to_string(rows[row1 - 1][*axis]);
    if (!s.empty()) return s;
  }
  return std::to_string(row1);
}

std::vector<std::string> DataTable::numeric_column_names() const {
  std::vector<std::string> out;
  for (const auto& c : columns) {
    if (c.kind == ColumnKind::kNumeric) out.push_back(c.name);
  }
  return out;
}

std::string cell_to_string(const Cell& cell) {
  if (std::holds_alternative<double>(cell)) return format_number(std::get<double>(cell));
  if (std::holds_alternative<std::string>(cell)) return std::get<std::string>(cell);
  return "";
}

std::vector<std::string> validate_table(const DataTable& table) {
  std::vector<std::string> out;
  if (table.columns.empty()) out.push_back("table has no columns");
  if (table.rows.empty()) out.push_back("table has no rows");
  std::set<std::string> seen;
  std::set<std::string> reported;
  for (size_t i = 0; i < table.columns.size(); ++i) {
    const auto& name = table.columns[i].name;
    if (trim(name).empty()) {
      out.push_back("column " + std::to_string(i + 1) + ": empty name");
      continue;
    }
    if (!seen.insert(name).second && reported.insert(name).second) {
      out.push_back("column '" + name + "': duplicate name");
    }
  }
  for (size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    if (row.size() != table.columns.size()) {
      out.push_back("row " + std::to_string(r + 1) + ": expected " +
                    std::to_string(table.columns.size()) + " cells, got " +
                    std::to_string(row.size()));
      continue;
    }
    for (size_t c = 0; c < row.size(); ++c) {
      if (table.columns[c].kind == ColumnKind::kNumeric &&
          std::holds_alternative<std::string>(row[c])) {
        out.push_back("column '" + table.columns[c].name + "' row " +
                      std::to_string(r + 1) + ": numeric column holds text '" +
                      std::get<std::string>(row[c]) + "'");
      }
    }
  }
  return out;
}

DataTable parse_csv_table(std::string_view text, std::string name) {
  auto records = parse_csv_records(text);
  if (records.empty()) throw Error(ErrorCode::kParse, "CSV input has no header row");
  DataTable table;
  table.name = std::move(name);
  const auto& header = records.front();
  for (const auto& h : header) {
    auto [col, unit] = split_header_unit(h);
    table.columns.push_back(ColumnMeta{col, ColumnKind::kCategorical, unit});
  }
  const size_t ncols = table.columns.size();
  // Ragged rows are kept as-is so validate_table can report them.
  for (size_t r = 1; r < records.size(); ++r) {
    std::vector<Cell> row;
    for (const auto& f : records[r]) {
      std::string_view v = trim(f);
      if (v.empty()) {
        row.emplace_back(std::monostate{});
      } else {
        row.emplace_back(std::string(v));
      }
    }
    table.rows.push_back(std::move(row));
  }
  for (size_t c = 0; c < ncols; ++c) {
    bool any = false;
    bool all_numeric = true;
    bool all_years = true;
    bool all_periods = true;
    for (const auto& row : table.rows) {
      if (c >= row.size() || !std::holds_alternative<std::string>(row[c])) continue;
      const auto& s = std::get<std::string>(row[c]);
      any = true;
      auto n = parse_number(s);
      if (!n) all_numeric = false;
      if (!n || std::floor(*n) != *n || *n < 1800 || *n > 2200 || s.find(',') != std::string::npos) {
        all_years = false;
      }
      if (!looks_like_period(s)) all_periods = false;
    }
    ColumnKind kind;
    if (header_names_time(table.columns[c].name) && any) {
      kind = ColumnKind::kTemporal;
    } else if (all_numeric && any) {
      kind = (c == 0 && all_years && table.rows.size() > 0) ? ColumnKind::kTemporal
                                                             : ColumnKind::kNumeric;
    } else if (any && all_periods) {
      kind = ColumnKind::kTemporal;
    } else {
      kind = ColumnKind::kCategorical;
    }
    table.columns[c].kind = kind;
    if (kind == ColumnKind::kNumeric) {
      for (auto& row : table.rows) {
        if (c < row.size() && std::holds_alternative<std::string>(row[c])) {
          row[c] = *parse_number(std::get<std::string>(row[c]));
        }
      }
    }
  }
  return table;
}

DataTable table_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw Error(ErrorCode::kParse, "table document must be an object");
  DataTable table;
  table.name = doc.value("name", std::string("table"));
  if (!doc.contains("columns") || !doc["columns"].is_array()) {
    throw Error(ErrorCode::kParse, "table document needs a 'columns' array");
  }
  for (const auto& c : doc["columns"]) {
    ColumnMeta meta;
    if (c.is_string()) {
      meta.name = c.get<std::string>();
    } else if (c.is_object()) {
      meta.name = c.value("name", std::string());
      auto kind = parse_column_kind(c.value("kind", std::string("numeric")));
      if (!kind) throw Error(ErrorCode::kParse, "column '" + meta.name + "': unknown kind");
      meta.kind = *kind;
      if (c.contains("unit") && c["unit"].is_string()) meta.unit = c["unit"].get<std::string>();
    } else {
      throw Error(ErrorCode::kParse, "column entries must be objects or strings");
    }
    table.columns.push_back(std::move(meta));
  }
  if (!doc.contains("rows") || !doc["rows"].is_array()) {
    throw Error(ErrorCode::kParse, "table document needs a 'rows' array");
  }
  for (const auto& r : doc["rows"]) {
    if (!r.is_array()) throw Error(ErrorCode::kParse, "each row must be an array");
    std::vector<Cell> row;
    for (const auto& v : r) {
      if (v.is_null()) {
        row.emplace_back(std::monostate{});
      } else if (v.is_number()) {
        row.emplace_back(v.get<double>());
      } else if (v.is_string()) {
        row.emplace_back(v.get<std::string>());
      } else {
        throw Error(ErrorCode::kParse, "cells must be numbers, strings or null");
      }
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

nlohmann::json table_to_json(const DataTable& table) {
  nlohmann::json doc;
  doc["name"] = table.name;
  doc["columns"] = nlohmann::json::array();
  for (const auto& c : table.columns) {
    nlohmann::json col{{"name", c.name}, {"kind", column_kind_name(c.kind)}};
    if (c.unit) col["unit"] = *c.unit;
    doc["columns"].push_back(std::move(col));
  }
  doc["rows"] = nlohmann::json::array();
  for (const auto& row : table.rows) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& cell : row) {
      if (std::holds_alternative<double>(cell)) {
        r.push_back(std::get<double>(cell));
      } else if (std::holds_alternative<std::string>(cell)) {
        r.push_back(std::get<std::string>(cell));
      } else {
        r.push_back(nullptr);
      }
    }
    doc["rows"].push_back(std::move(r));
  }
  return doc;
}

DataTable parse_table_text(std::string_view text, std::string name) {
  std::string_view t = trim(text);
  if (!t.empty() && t.front() == '{') {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(t);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kParse, std::string("table document: ") + e.what());
    }
    DataTable table = table_from_json(doc);
    if (!doc.contains("name")) table.name = std::move(name);
    return table;
  }
  return parse_csv_table(text, std::move(name));
}

DataTable load_table_file(const std::string& path) {
  std::string text = read_file(path);
  std::string stem = path;
  if (auto slash = stem.find_last_of('/'); slash != std::string::npos) stem = stem.substr(slash + 1);
  if (auto dot = stem.find_last_of('.'); dot != std::string::npos) stem = stem.substr(0, dot);
  return parse_table_text(text, stem);
}

std::string table_digest(const DataTable& table) {
  std::ostringstream out;
  out << "table: " << escape_digest_cell(table.name) << "\n";
  out << "columns: row";
  for (const auto& c : table.columns) {
    out << " | " << escape_digest_cell(c.name);
    if (c.unit) out << " [" << escape_digest_cell(*c.unit) << "]";
  }
  out << "\nkinds: -";
  for (const auto& c : table.columns) out << " | " << column_kind_name(c.kind);
  out << "\n";
  for (size_t r = 0; r < table.rows.size(); ++r) {
    out << (r + 1);
    for (const auto& cell : table.rows[r]) out << " | " << escape_digest_cell(cell_to_string(cell));
    out << "\n";
  }
  return out.str();
}

DataTable parse_table_digest(std::string_view digest) {
  DataTable table;
  std::vector<std::string> kinds;
  bool have_columns = false;
  for (const auto& raw_line : split(digest, '\n')) {
    std::string_view line = trim(raw_line);
    if (line.empty()) continue;
    if (line.rfind("table:", 0) == 0) {
      table.name = std::string(trim(line.substr(6)));
      continue;
    }
    auto parts = split(line, '|');
    for (auto& p : parts) p = std::string(trim(p));
    if (line.rfind("columns:", 0) == 0) {
      for (size_t i = 1; i < parts.size(); ++i) {
        auto [name, unit] = split_header_unit(parts[i]);
        table.columns.push_back(ColumnMeta{name, ColumnKind::kNumeric, unit});
      }
      have_columns = true;
      continue;
    }
    if (line.rfind("kinds:", 0) == 0) {
      for (size_t i = 1; i < parts.size(); ++i) kinds.push_back(parts[i]);
      continue;
    }
    if (!have_columns) throw Error(ErrorCode::kParse, "table digest: row before columns line");
    std::vector<Cell> row;
    for (size_t i = 1; i < parts.size(); ++i) {
      if (parts[i].empty()) {
        row.emplace_back(std::monostate{});
      } else {
        row.emplace_back(parts[i]);
      }
    }
    table.rows.push_back(std::move(row));
  }
  if (!have_columns) throw Error(ErrorCode::kParse, "table digest: missing columns line");
  for (size_t c = 0; c < table.columns.size(); ++c) {
    ColumnKind kind = ColumnKind::kNumeric;
    if (c < kinds.size()) {
      auto k = parse_column_kind(kinds[c]);
      if (!k) throw Error(ErrorCode::kParse, "table digest: unknown kind '" + kinds[c] + "'");
      kind = *k;
    }
    table.columns[c].kind = kind;
    if (kind != ColumnKind::kNumeric) continue;
    for (auto& row : table.rows) {
      if (c < row.size() && std::holds_alternative<std::string>(row[c])) {
        if (auto n = parse_number(std::get<std::string>(row[c]))) row[c] = *n;
      }
    }
  }
  return table;
}

std::vector<std::string> split_combined_column(std::string_view name) {
  std::vector<std::string> parts;
  size_t start = 0;
  while (true) {
    size_t pos = name.find(kCombinedSeparator, start);
    if (pos == std::string_view::npos) {
      parts.emplace_back(name.substr(start));
      break;
    }
    parts.emplace_back(name.substr(start, pos - start));
    start = pos + kCombinedSeparator.size();
  }
  return parts;
}

std::string combined_column_name(const std::vector<std::string>& parts) {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) out += kCombinedSeparator;
    out += parts[i];
  }
  return out;
}

bool is_resolvable_column(const DataTable& table, std::string_view column) {
  if (table.has_column(column)) return true;
  auto parts = split_combined_column(column);
  if (parts.size() < 2) return false;
  for (const auto& p : parts) {
    auto ci = table.column_index(p);
    if (!ci || table.columns[*ci].kind != ColumnKind::kNumeric) return false;
  }
  return true;
}

std::vector<std::optional<double>> resolve_series(const DataTable& table,
                                                  std::string_view column) {
  if (table.has_column(column)) return table.numeric_series(column);
  auto parts = split_combined_column(column);
  if (parts.size() < 2 || !is_resolvable_column(table, column)) return {};
  std::vector<std::optional<double>> sum(table.row_count(), 0.0);
  for (const auto& p : parts) {
    auto s = table.numeric_series(p);
    for (size_t i = 0; i < sum.size(); ++i) {
      if (!sum[i] || !s[i]) {
        sum[i] = std::nullopt;
      } else {
        *sum[i] += *s[i];
      }
    }
  }
  return sum;
}

DataTable with_combined_column(const DataTable& table, std::string_view column) {
  if (table.has_column(column) || !is_resolvable_column(table, column)) return table;
  DataTable out = table;
  auto series = resolve_series(table, column);
  std::optional<std::string> unit;
  if (auto first = table.column_index(split_combined_column(column).front())) {
    unit = table.columns[*first].unit;
  }
  out.columns.push_back(ColumnMeta{std::string(column), ColumnKind::kNumeric, unit});
  for (size_t r = 0; r < out.rows.size(); ++r) {
    if (series[r]) {
      out.rows[r].emplace_back(*series[r]);
    } else {
      out.rows[r].emplace_back(std::monostate{});
    }
  }
  return out;
}

}  // namespace layerchart
