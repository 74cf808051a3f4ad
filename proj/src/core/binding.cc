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

#include "core/binding.h"

#include <cctype>
#include <cmath>
#include <cstdint>
#include <sstream>

#include "core/error.h"
#include "core/util.h"

namespace layerchart {
namespace {

constexpr const char* kFieldNames[] = {"ObjectName", "DataName", "Position",
                                       "Trend",      "Num",      "Text"};

void append_json_string(std::string& out, std::string_view s) {
  out.push_back('"');
  for (unsigned char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (c < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out.push_back(static_cast<char>(c));
        }
    }
  }
  out.push_back('"');
}

void append_utf8(std::string& out, uint32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

enum class TokKind { kString, kNumber, kWord, kPunct };

struct Token {
  TokKind kind;
  std::string text;  // decoded string, number text, word, or the punct char
};

bool is_null_word(std::string_view w) {
  return iequals(w, "null") || iequals(w, "none") || iequals(w, "nil");
}

std::vector<Token> tokenize(std::string_view raw) {
  std::vector<Token> toks;
  size_t i = 0;
  const size_t n = raw.size();
  while (i < n) {
    unsigned char c = static_cast<unsigned char>(raw[i]);
    if (std::isspace(c)) {
      ++i;
    } else if (c == '"') {
      std::string value;
      ++i;
      while (i < n && raw[i] != '"') {
        if (raw[i] == '\\' && i + 1 < n) {
          char e = raw[i + 1];
          i += 2;
          switch (e) {
            case 'n': value.push_back('\n'); break;
            case 't': value.push_back('\t'); break;
            case 'r': value.push_back('\r'); break;
            case 'b': value.push_back('\b'); break;
            case 'f': value.push_back('\f'); break;
            case 'u': {
              uint32_t cp = 0;
              size_t k = 0;
              for (; k < 4 && i < n && std::isxdigit(static_cast<unsigned char>(raw[i])); ++k, ++i) {
                char h = raw[i];
                cp = cp * 16 + static_cast<uint32_t>(std::isdigit(static_cast<unsigned char>(h))
                                                         ? h - '0'
                                                         : (std::tolower(h) - 'a' + 10));
              }
              append_utf8(value, cp);
              break;
            }
            default: value.push_back(e);
          }
        } else {
          value.push_back(raw[i]);
          ++i;
        }
      }
      if (i < n) ++i;  // closing quote; an unterminated string runs to the end
      toks.push_back({TokKind::kString, std::move(value)});
    } else if (std::isdigit(c) || ((c == '-' || c == '+') && i + 1 < n &&
                                   std::isdigit(static_cast<unsigned char>(raw[i + 1])))) {
      size_t start = i;
      ++i;
      while (i < n && (std::isdigit(static_cast<unsigned char>(raw[i])) || raw[i] == '.' ||
                       raw[i] == 'e' || raw[i] == 'E' ||
                       ((raw[i] == '-' || raw[i] == '+') && (raw[i - 1] == 'e' || raw[i - 1] == 'E')))) {
        ++i;
      }
      toks.push_back({TokKind::kNumber, std::string(raw.substr(start, i - start))});
    } else if (std::isalpha(c) || c == '_') {
      size_t start = i;
      while (i < n && (std::isalnum(static_cast<unsigned char>(raw[i])) || raw[i] == '_')) ++i;
      toks.push_back({TokKind::kWord, std::string(raw.substr(start, i - start))});
    } else {
      toks.push_back({TokKind::kPunct, std::string(1, static_cast<char>(c))});
      ++i;
    }
  }
  return toks;
}

bool is_punct(const std::vector<Token>& t, size_t i, char c) {
  return i < t.size() && t[i].kind == TokKind::kPunct && t[i].text[0] == c;
}

// Key token at i followed by ':'.
std::optional<std::string> key_at(const std::vector<Token>& t, size_t i) {
  if (i + 1 >= t.size() || !is_punct(t, i + 1, ':')) return std::nullopt;
  if (t[i].kind == TokKind::kString || t[i].kind == TokKind::kWord) return t[i].text;
  return std::nullopt;
}

bool is_field_name(std::string_view k) {
  for (const char* f : kFieldNames) {
    if (k == f) return true;
  }
  return false;
}

[[noreturn]] void malformed(size_t record, const std::string& what) {
  std::string msg = record ? "record " + std::to_string(record) + ": " + what : what;
  throw Error(ErrorCode::kMalformedResponse, msg);
}

struct PartialRecord {
  std::optional<std::string> object_name, data_name, text;
  std::optional<std::array<CellRef, 2>> position;
  bool has_trend = false, has_num = false;
  std::optional<std::string> trend;
  std::optional<std::vector<double>> num;
};

// Bracketed value spanning [i, end); returns index after it.
size_t bracket_end(const std::vector<Token>& t, size_t i) {
  int depth = 0;
  for (size_t k = i; k < t.size(); ++k) {
    if (is_punct(t, k, '[')) ++depth;
    if (is_punct(t, k, ']')) {
      --depth;
      if (depth == 0) return k + 1;
    }
    // A following key means the array was never closed.
    if (k > i && depth > 0 && key_at(t, k) && is_field_name(*key_at(t, k))) return k;
  }
  return t.size();
}

std::array<CellRef, 2> parse_position(const std::vector<Token>& t, size_t& i, size_t record) {
  if (!is_punct(t, i, '[')) malformed(record, "unparseable Position: expected '['");
  size_t end = bracket_end(t, i);
  std::vector<CellRef> refs;
  std::optional<std::string> pending;
  for (size_t k = i; k < end; ++k) {
    if (t[k].kind == TokKind::kString) {
      pending = t[k].text;
    } else if (t[k].kind == TokKind::kNumber) {
      if (!pending) malformed(record, "unparseable Position: row without column");
      auto v = parse_number(t[k].text);
      if (!v || *v < 0 || std::floor(*v) != *v) {
        malformed(record, "unparseable Position: row '" + t[k].text + "' is not a row index");
      }
      refs.push_back(CellRef{*pending, static_cast<size_t>(*v)});
      pending.reset();
    }
  }
  i = end;
  if (refs.empty()) malformed(record, "unparseable Position: no [column, row] pair");
  return {refs.front(), refs.back()};
}

std::optional<std::vector<double>> parse_num(const std::vector<Token>& t, size_t& i, size_t record) {
  std::vector<double> values;
  auto take = [&](const Token& tok) {
    if (tok.kind == TokKind::kNumber || tok.kind == TokKind::kString) {
      if (tok.kind == TokKind::kString && (tok.text.empty() || is_null_word(tok.text))) return;
      auto v = parse_number(tok.text);
      if (!v) malformed(record, "unparseable Num value '" + tok.text + "'");
      values.push_back(*v);
    } else if (tok.kind == TokKind::kWord && !is_null_word(tok.text)) {
      malformed(record, "unparseable Num value '" + tok.text + "'");
    }
  };
  if (is_punct(t, i, '[')) {
    size_t end = bracket_end(t, i);
    for (size_t k = i; k < end; ++k) take(t[k]);
    i = end;
  } else if (i < t.size()) {
    take(t[i]);
    ++i;
  } else {
    malformed(record, "missing Num value");
  }
  if (values.empty()) return std::nullopt;
  return values;
}

std::string expect_string(const std::vector<Token>& t, size_t& i, size_t record,
                          const std::string& field) {
  if (i < t.size() && t[i].kind == TokKind::kString) return t[i++].text;
  malformed(record, "field '" + field + "' must be a string");
}

BindingRecord finish(const PartialRecord& p, size_t record) {
  if (!p.object_name) malformed(record, "missing field 'ObjectName'");
  if (!p.data_name) malformed(record, "missing field 'DataName'");
  if (!p.position) malformed(record, "missing field 'Position'");
  if (!p.has_trend) malformed(record, "missing field 'Trend'");
  if (!p.has_num) malformed(record, "missing field 'Num'");
  if (!p.text) malformed(record, "missing field 'Text'");
  BindingRecord r;
  r.object_name = *p.object_name;
  r.data_name = *p.data_name;
  r.position = *p.position;
  r.trend = p.trend;
  r.num = p.num;
  r.text = *p.text;
  return r;
}

}  // namespace

const char* vocab_kind_name(VocabKind kind) {
  switch (kind) {
    case VocabKind::kSubject: return "subject";
    case VocabKind::kTrend: return "trend";
    case VocabKind::kNumerical: return "numerical";
  }
  return "subject";
}

std::optional<VocabKind> parse_vocab_kind(std::string_view name) {
  if (name == "subject") return VocabKind::kSubject;
  if (name == "trend") return VocabKind::kTrend;
  if (name == "numerical") return VocabKind::kNumerical;
  return std::nullopt;
}

std::vector<std::string> validate_binding(const BindingResult& result, const DataTable& table) {
  std::vector<std::string> out;
  const size_t nrows = table.row_count();
  for (size_t i = 0; i < result.records.size(); ++i) {
    const auto& r = result.records[i];
    const std::string prefix = "record " + std::to_string(i + 1) + ": ";
    if (trim(r.object_name).empty()) out.push_back(prefix + "empty ObjectName");
    const bool has_trend = r.trend.has_value();
    const bool has_num = r.num.has_value();
    if (has_trend && has_num) {
      out.push_back(prefix + "Trend and Num are both populated");
    } else if (!has_trend && !has_num) {
      out.push_back(prefix + "neither Trend nor Num is populated");
    }
    if (has_trend && trim(*r.trend).empty()) out.push_back(prefix + "Trend is empty");
    if (has_num && r.num->empty()) out.push_back(prefix + "Num is empty");
    const bool column_ok = is_resolvable_column(table, r.data_name);
    if (!column_ok) {
      out.push_back(prefix + "DataName '" + r.data_name + "' is not a column of the table");
    }
    for (size_t k = 0; k < 2; ++k) {
      const auto& ref = r.position[k];
      if (ref.column != r.data_name) {
        out.push_back(prefix + "Position column '" + ref.column + "' differs from DataName '" +
                      r.data_name + "'");
      }
      if (ref.row < 1 || ref.row > nrows) {
        out.push_back(prefix + "Position row " + std::to_string(ref.row) + " out of range 1.." +
                      std::to_string(nrows));
      }
    }
    if (r.position[0].row > r.position[1].row) {
      out.push_back(prefix + "Position start row " + std::to_string(r.position[0].row) +
                    " is after end row " + std::to_string(r.position[1].row));
    }
  }
  return out;
}

std::string serialize_binding(const BindingResult& result) {
  std::string out = "Result: ";
  if (result.records.empty()) out += "{}";
  for (size_t i = 0; i < result.records.size(); ++i) {
    const auto& r = result.records[i];
    if (i) out += ",\n";
    out += "{\n    \"ObjectName\": ";
    append_json_string(out, r.object_name);
    out += ",\n    \"DataName\": ";
    append_json_string(out, r.data_name);
    out += ",\n    \"Position\": [[";
    append_json_string(out, r.position[0].column);
    out += ", " + std::to_string(r.position[0].row) + "], [";
    append_json_string(out, r.position[1].column);
    out += ", " + std::to_string(r.position[1].row) + "]],\n    \"Trend\": ";
    append_json_string(out, r.trend ? *r.trend : std::string("None"));
    out += ",\n    \"Num\": [";
    if (r.num) {
      for (size_t k = 0; k < r.num->size(); ++k) {
        if (k) out += ", ";
        out += format_number((*r.num)[k]);
      }
    } else {
      out += "Null";
    }
    out += "],\n    \"Text\": ";
    append_json_string(out, r.text);
    out += "}";
  }
  out += "\nReason: ";
  append_json_string(out, result.reason);
  out += "\n";
  return out;
}

BindingResult parse_binding_document(std::string_view raw) {
  const auto toks = tokenize(raw);
  BindingResult result;
  std::optional<PartialRecord> current;
  bool have_reason = false;
  size_t i = 0;
  while (i < toks.size()) {
    auto key = key_at(toks, i);
    if (!key) {
      ++i;
      continue;
    }
    if (*key == "Reason") {
      if (current) {
        result.records.push_back(finish(*current, result.records.size() + 1));
        current.reset();
      }
      i += 2;
      if (i < toks.size() && toks[i].kind == TokKind::kString) {
        result.reason = toks[i].text;
      } else {
        // Unquoted reason: take the remaining raw text verbatim.
        std::ostringstream rest;
        for (size_t k = i; k < toks.size(); ++k) rest << (k > i ? " " : "") << toks[k].text;
        result.reason = rest.str();
      }
      have_reason = true;
      break;
    }
    if (!is_field_name(*key)) {
      i += 2;
      continue;
    }
    if (*key == "ObjectName") {
      if (current) result.records.push_back(finish(*current, result.records.size() + 1));
      current.emplace();
    }
    if (!current) malformed(result.records.size() + 1, "missing field 'ObjectName'");
    const size_t record_no = result.records.size() + 1;
    i += 2;
    if (*key == "ObjectName") {
      current->object_name = expect_string(toks, i, record_no, *key);
    } else if (*key == "DataName") {
      current->data_name = expect_string(toks, i, record_no, *key);
    } else if (*key == "Text") {
      current->text = expect_string(toks, i, record_no, *key);
    } else if (*key == "Position") {
      current->position = parse_position(toks, i, record_no);
    } else if (*key == "Trend") {
      current->has_trend = true;
      if (i < toks.size() && toks[i].kind == TokKind::kString) {
        std::string v = toks[i++].text;
        if (!trim(v).empty() && !is_null_word(trim(v))) current->trend = v;
      } else if (i < toks.size() && toks[i].kind == TokKind::kWord && is_null_word(toks[i].text)) {
        ++i;
      } else if (is_punct(toks, i, '[')) {
        // ["None"] / [null]
        size_t end = bracket_end(toks, i);
        for (size_t k = i; k < end; ++k) {
          if (toks[k].kind == TokKind::kString && !is_null_word(trim(toks[k].text)) &&
              !trim(toks[k].text).empty()) {
            current->trend = toks[k].text;
            break;
          }
        }
        i = end;
      } else {
        malformed(record_no, "field 'Trend' must be a string");
      }
    } else if (*key == "Num") {
      current->has_num = true;
      current->num = parse_num(toks, i, record_no);
    }
  }
  if (current) result.records.push_back(finish(*current, result.records.size() + 1));
  if (!have_reason) {
    if (result.records.empty()) malformed(0, "no binding records or Reason found");
    malformed(0, "missing field 'Reason'");
  }
  return result;
}

}  // namespace layerchart
