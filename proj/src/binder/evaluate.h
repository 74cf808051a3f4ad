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

#ifndef LAYERCHART_BINDER_EVALUATE_H_
#define LAYERCHART_BINDER_EVALUATE_H_

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "core/binding.h"
#include "core/metrics.h"
#include "core/table.h"
#include "json.hpp"

namespace layerchart {

struct LabeledSpan {
  VocabKind kind = VocabKind::kSubject;
  std::string text;
};

struct LabeledNarrative {
  std::string id;
  std::string text;
  std::string table;  // key into the corpus tables; may be empty
  std::vector<LabeledSpan> spans;
};

struct LabelCorpus {
  std::map<std::string, DataTable> tables;
  std::vector<LabeledNarrative> narratives;
};

// {"tables": {name: table document}, "narratives": [{"id", "text",
//  "table", "spans": [{"kind", "text"}]}]}. Throws Error(kParse).
LabelCorpus corpus_from_json(const nlohmann::json& doc);
nlohmann::json corpus_to_json(const LabelCorpus& corpus);
LabelCorpus load_corpus_file(const std::string& path);

// Lowercase, collapsed whitespace, surrounding punctuation removed.
std::string normalize_label(std::string_view text);

struct EvaluationReport {
  Metrics subject;
  Metrics trend;
  Metrics numerical;
  const Metrics& for_kind(VocabKind kind) const;
};

// Per narrative id, a vocabulary counts as a true positive when predicted
// and gold agree on (kind, normalized text).
EvaluationReport evaluate(const std::vector<LabeledNarrative>& predicted,
                          const std::vector<LabeledNarrative>& gold);

// Fixed-width text table with one line per kind.
std::string format_report(const EvaluationReport& report);
nlohmann::json report_to_json(const EvaluationReport& report);

// Locates the vocabulary of a binding in its narrative: object names,
// trend phrases and the written form of every bound number. Spans are
// sorted by offset and deduplicated.
std::vector<VocabSpan> derive_vocab_spans(std::string_view text, const BindingResult& result,
                                          const DataTable& table);

// Labels for evaluation: the derived spans, plus the record strings that do
// not occur verbatim in the text.
std::vector<LabeledSpan> labels_from_binding(std::string_view text, const BindingResult& result,
                                             const DataTable& table);

}  // namespace layerchart

#endif  // LAYERCHART_BINDER_EVALUATE_H_
