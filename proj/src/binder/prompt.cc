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

#include "binder/prompt.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "core/binding.h"
#include "core/error.h"
#include "core/util.h"
#include "layerchart_data/prompt_db_jsonl.h"
#include "trendlex/lexicon.h"

namespace layerchart {
namespace {

constexpr char kSystemInstruction[] =
    "You bind the vocabulary of a financial narrative to cells of a data table. The vocabulary "
    "has three classes: subjects (the entity a sentence is about), trends (phrases describing a "
    "change pattern, a summary indicator such as the maximum, minimum or mean, or a special "
    "event) and numerical values. Every claim in the text becomes one record that names the "
    "subject as written, the table column it refers to, and the first and last table cell it "
    "covers. Rows are numbered from 1 in the order shown in the table.";

constexpr char kOutputTemplate[] =
    "Result: {\n"
    "    \"ObjectName\": \"[MASK]\",\n"
    "    \"DataName\": \"[MASK]\",\n"
    "    \"Position\": [[\"[MASK]\", [MASK]], [\"[MASK]\", [MASK]]],\n"
    "    \"Trend\": \"[MASK]\",\n"
    "    \"Num\": [[MASK]],\n"
    "    \"Text\": \"[MASK]\"},\n"
    "...\n"
    "Reason: \"[MASK]\"\n"
    "Fill every [MASK]. Write one record per claim; repeat the record block as often as "
    "needed. ObjectName is the subject exactly as written in the text. DataName is a column "
    "name copied from the table; when the text analyses two columns jointly, write both names "
    "joined by \" + \". Position gives the start and end cell as [column, row] pairs; use the "
    "same pair twice for a single cell. Trend and Num must not have values simultaneously: a "
    "trend record sets Num to [Null], a numerical record sets Trend to \"None\". Text is the "
    "fragment of the input text that states the claim.";

constexpr char kReasoningInstruction[] =
    "After the records, write a line starting with Reason: followed by a quoted explanation. "
    "Name each object and the column it corresponds to, then, for every trend or numerical "
    "value, state the column and the rows it covers, for example: \"The trend for object 'X' is "
    "'rise', which corresponds to the column 'Y' and from row 3 to row 6.\"";

void add_counts(std::map<std::string, double>& tf, std::string_view text) {
  for (auto& t : tfidf_terms(text)) tf[t] += 1.0;
}

}  // namespace

std::vector<std::string> tfidf_terms(std::string_view text) {
  auto toks = word_tokens(text);
  std::vector<std::string> out;
  out.reserve(toks.size() * 2);
  for (size_t i = 0; i < toks.size(); ++i) {
    out.push_back(toks[i].norm);
    if (i + 1 < toks.size()) out.push_back(toks[i].norm + " " + toks[i + 1].norm);
  }
  return out;
}

double cosine(const FeatureVector& a, const FeatureVector& b) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (const auto& [k, v] : a) {
    na += v * v;
    auto it = b.find(k);
    if (it != b.end()) dot += v * it->second;
  }
  for (const auto& [k, v] : b) nb += v * v;
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

PromptDb::PromptDb(std::vector<PromptExample> examples) : examples_(std::move(examples)) {
  const double n = static_cast<double>(examples_.size());
  std::map<std::string, double> df;
  for (const auto& ex : examples_) {
    auto terms = tfidf_terms(ex.input_text);
    std::set<std::string> uniq(terms.begin(), terms.end());
    for (const auto& t : uniq) df[t] += 1.0;
  }
  for (const auto& [t, d] : df) idf_[t] = std::log((1.0 + n) / (1.0 + d)) + 1.0;
  unseen_idf_ = std::log(1.0 + n) + 1.0;
  for (auto& ex : examples_) ex.feature_vector = vectorize(ex.input_text);
}

FeatureVector PromptDb::vectorize(std::string_view text) const {
  std::map<std::string, double> tf;
  add_counts(tf, text);
  FeatureVector out;
  double norm = 0.0;
  for (const auto& [t, c] : tf) {
    auto it = idf_.find(t);
    double w = c * (it == idf_.end() ? unseen_idf_ : it->second);
    out[t] = w;
    norm += w * w;
  }
  if (norm > 0.0) {
    norm = std::sqrt(norm);
    for (auto& [t, w] : out) w /= norm;
  }
  return out;
}

PromptExample prompt_example_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw Error(ErrorCode::kParse, "prompt example must be an object");
  PromptExample ex;
  auto text = [&](const char* key, bool required) -> std::string {
    if (!doc.contains(key)) {
      if (required) throw Error(ErrorCode::kParse, std::string("prompt example missing '") + key + "'");
      return {};
    }
    if (!doc[key].is_string()) throw Error(ErrorCode::kParse, std::string("'") + key + "' must be a string");
    return doc[key].get<std::string>();
  };
  ex.id = text("id", true);
  ex.input_text = text("inputText", true);
  ex.table_digest = text("tableDigest", true);
  ex.expected_output = text("expectedOutput", true);
  ex.reasoning = text("reasoning", false);
  return ex;
}

nlohmann::json prompt_example_to_json(const PromptExample& ex) {
  return nlohmann::json{{"id", ex.id},
                        {"inputText", ex.input_text},
                        {"tableDigest", ex.table_digest},
                        {"expectedOutput", ex.expected_output},
                        {"reasoning", ex.reasoning}};
}

std::vector<std::string> validate_prompt_example(const PromptExample& ex) {
  std::vector<std::string> out;
  DataTable table;
  try {
    table = parse_table_digest(ex.table_digest);
  } catch (const Error& e) {
    out.push_back(std::string("table digest: ") + e.what());
    return out;
  }
  for (auto& v : validate_table(table)) out.push_back("table digest: " + v);
  try {
    auto result = parse_binding_document(ex.expected_output);
    for (auto& v : validate_binding(result, table)) out.push_back("expected output: " + v);
  } catch (const Error& e) {
    out.push_back(std::string("expected output: ") + e.what());
  }
  return out;
}

PromptDb parse_prompt_db(std::string_view jsonl) {
  std::vector<PromptExample> examples;
  size_t line_no = 0;
  for (const auto& line : split(jsonl, '\n')) {
    ++line_no;
    if (trim(line).empty()) continue;
    try {
      examples.push_back(prompt_example_from_json(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kParse, "prompt db line " + std::to_string(line_no) + ": " + e.what());
    } catch (const Error& e) {
      throw Error(ErrorCode::kParse, "prompt db line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return PromptDb(std::move(examples));
}

PromptDb load_prompt_db(const std::string& path) { return parse_prompt_db(read_file(path)); }

const PromptDb& default_prompt_db() {
  static const PromptDb db = parse_prompt_db(kDefaultPromptDbJsonl);
  return db;
}

void append_prompt_example(const std::string& path, const PromptExample& ex) {
  append_file(path, prompt_example_to_json(ex).dump() + "\n");
}

std::vector<ScoredExample> select_examples(const Narrative& narrative, const PromptDb& db,
                                           const RetrievalConfig& cfg) {
  if (cfg.k == 0) throw Error(ErrorCode::kInvalidArgument, "k must be at least 1");
  const auto query = db.vectorize(narrative.text);
  std::vector<ScoredExample> all;
  all.reserve(db.size());
  for (size_t i = 0; i < db.size(); ++i) {
    all.push_back({db.examples()[i], cosine(query, db.examples()[i].feature_vector), i});
  }
  std::stable_sort(all.begin(), all.end(), [](const ScoredExample& a, const ScoredExample& b) {
    return a.similarity > b.similarity;
  });
  if (all.size() > cfg.k) all.resize(cfg.k);
  std::reverse(all.begin(), all.end());
  return all;
}

PromptSequence build_prompt(const Narrative& narrative, const DataTable& table,
                            const std::vector<ScoredExample>& examples,
                            const RetrievalConfig& cfg) {
  PromptSequence seq;
  seq.system_instruction = kSystemInstruction;
  size_t skip = examples.size() > cfg.k ? examples.size() - cfg.k : 0;
  for (size_t i = skip; i < examples.size(); ++i) seq.examples.push_back(examples[i].example);
  seq.task_table = table_digest(table);
  seq.task_text = narrative.text;
  seq.output_template = kOutputTemplate;
  seq.reasoning_instruction = kReasoningInstruction;
  return seq;
}

std::string render_prompt(const PromptSequence& seq) {
  std::string out;
  if (!seq.examples.empty()) {
    out += "### Examples\n";
    for (size_t i = 0; i < seq.examples.size(); ++i) {
      const auto& ex = seq.examples[i];
      out += "\n#### Example " + std::to_string(i + 1) + "\n";
      out += "Input table:\n" + ex.table_digest;
      if (!ex.table_digest.empty() && ex.table_digest.back() != '\n') out += "\n";
      out += "Input text: " + std::string(trim(ex.input_text)) + "\n";
      out += "Output:\n" + ex.expected_output;
      if (!ex.expected_output.empty() && ex.expected_output.back() != '\n') out += "\n";
    }
    out += "\n";
  }
  out += "### Task\n";
  out += "Input table:\n" + seq.task_table;
  if (!seq.task_table.empty() && seq.task_table.back() != '\n') out += "\n";
  out += "Input text: " + std::string(trim(seq.task_text)) + "\n\n";
  out += "Output format:\n" + seq.output_template + "\n\n";
  out += seq.reasoning_instruction + "\n\n";
  out += "Output:\n";
  return out;
}

}  // namespace layerchart
