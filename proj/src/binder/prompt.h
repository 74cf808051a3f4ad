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

#ifndef LAYERCHART_BINDER_PROMPT_H_
#define LAYERCHART_BINDER_PROMPT_H_

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "binder/segment.h"
#include "core/table.h"
#include "json.hpp"

namespace layerchart {

using FeatureVector = std::map<std::string, double>;

struct PromptExample {
  std::string id;
  std::string input_text;
  std::string table_digest;
  std::string expected_output;  // binding document in wire form
  std::string reasoning;
  FeatureVector feature_vector;  // filled when the example joins a PromptDb
};

PromptExample prompt_example_from_json(const nlohmann::json& doc);
nlohmann::json prompt_example_to_json(const PromptExample& ex);

// Problems with an example: unreadable digest or output, or an output that
// fails validate_binding against its own table.
std::vector<std::string> validate_prompt_example(const PromptExample& ex);

enum class Similarity { kCosineTfidf };

struct RetrievalConfig {
  size_t k = 10;
  Similarity similarity = Similarity::kCosineTfidf;
};

// Few-shot example store with a TF-IDF model (unigrams and bigrams of the
// example input texts) fit on its contents.
class PromptDb {
 public:
  PromptDb() = default;
  explicit PromptDb(std::vector<PromptExample> examples);

  const std::vector<PromptExample>& examples() const { return examples_; }
  size_t size() const { return examples_.size(); }
  bool empty() const { return examples_.empty(); }

  // L2-normalized TF-IDF weights of the text under this DB's model.
  FeatureVector vectorize(std::string_view text) const;

 private:
  std::vector<PromptExample> examples_;
  std::map<std::string, double> idf_;
  double unseen_idf_ = 1.0;
};

double cosine(const FeatureVector& a, const FeatureVector& b);
std::vector<std::string> tfidf_terms(std::string_view text);

// Line-delimited JSON, one example per line; blank lines are skipped.
PromptDb load_prompt_db(const std::string& path);
PromptDb parse_prompt_db(std::string_view jsonl);
// The example set shipped with the library.
const PromptDb& default_prompt_db();
void append_prompt_example(const std::string& path, const PromptExample& ex);

struct ScoredExample {
  PromptExample example;
  double similarity = 0.0;
  size_t db_index = 0;
};

// The min(k, |db|) most similar examples in ascending similarity, so the
// most relevant one comes last.
std::vector<ScoredExample> select_examples(const Narrative& narrative, const PromptDb& db,
                                           const RetrievalConfig& cfg);

struct PromptSequence {
  std::string system_instruction;
  std::vector<PromptExample> examples;
  std::string task_table;
  std::string task_text;
  std::string output_template;
  std::string reasoning_instruction;
};

// Keeps at most cfg.k examples (the most similar ones) in the given order.
PromptSequence build_prompt(const Narrative& narrative, const DataTable& table,
                            const std::vector<ScoredExample>& examples,
                            const RetrievalConfig& cfg);

// User-message text of a prompt sequence. Byte-stable.
std::string render_prompt(const PromptSequence& seq);

}  // namespace layerchart

#endif  // LAYERCHART_BINDER_PROMPT_H_
