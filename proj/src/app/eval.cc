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

#include "app/eval.h"

#include "app/pipeline.h"
#include "binder/fallback.h"
#include "core/error.h"

namespace layerchart {

namespace {

const DataTable& table_of(const LabelCorpus& corpus, const LabeledNarrative& n) {
  auto it = corpus.tables.find(n.table);
  if (it == corpus.tables.end()) {
    throw Error(ErrorCode::kInvalidArgument, "narrative '" + n.id + "' has no table in the corpus");
  }
  return it->second;
}

LabeledNarrative unlabeled(const LabeledNarrative& g) { return LabeledNarrative{g.id, g.text, g.table, {}}; }

}  // namespace

LabelCorpus fallback_labels(const LabelCorpus& gold, const Lexicon& lexicon) {
  LabelCorpus out;
  out.tables = gold.tables;
  for (const auto& g : gold.narratives) {
    const DataTable& table = table_of(gold, g);
    auto p = unlabeled(g);
    try {
      auto result = fallback_bind(Narrative{g.id, 0, g.text, std::nullopt}, table, lexicon);
      p.spans = labels_from_binding(g.text, result, table);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kBindingFailed) throw;
    }
    out.narratives.push_back(std::move(p));
  }
  return out;
}

LabelCorpus engine_labels(const LabelCorpus& gold, const Engine& engine) {
  LabelCorpus out;
  out.tables = gold.tables;
  for (const auto& g : gold.narratives) {
    const DataTable& table = table_of(gold, g);
    auto runs = bind_narratives({Narrative{g.id, 0, g.text, std::nullopt}}, table, engine);
    auto p = unlabeled(g);
    if (runs[0].outcome) p.spans = labels_from_binding(g.text, runs[0].outcome->result, table);
    out.narratives.push_back(std::move(p));
  }
  return out;
}

EvaluationReport evaluate_files(const std::string& pred_path, const std::string& gold_path) {
  auto gold = load_corpus_file(gold_path);
  auto pred = load_corpus_file(pred_path);
  return evaluate(pred.narratives, gold.narratives);
}

}  // namespace layerchart
