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

#ifndef LAYERCHART_BINDER_BIND_H_
#define LAYERCHART_BINDER_BIND_H_

#include <chrono>
#include <string>
#include <string_view>
#include <vector>

#include "binder/prompt.h"
#include "binder/provider.h"
#include "binder/segment.h"
#include "core/binding.h"
#include "core/table.h"
#include "trendlex/detectors.h"
#include "trendlex/lexicon.h"

namespace layerchart {

// parse_binding_document under the name the pipeline uses for model text.
BindingResult parse_binding_response(std::string_view raw);

struct BindConfig {
  RetrievalConfig retrieval;
  // Re-asks after a malformed or invalid response before falling back.
  size_t max_retries = 2;
  // Drops this many of the least similar retrieved examples (regenerate).
  size_t drop_least_similar = 0;
  std::chrono::milliseconds timeout{60000};
  DetectorParams detector;
};

struct BindOutcome {
  BindingResult result;
  bool used_fallback = false;
  size_t attempts = 0;               // provider calls made
  std::vector<double> record_scores;  // 1 = consistent with the table
  std::vector<std::string> notes;     // why attempts were rejected
};

// Model path first (select_examples, build_prompt, provider, parse,
// validate, cross-check), fallback_bind when the provider is absent or every
// attempt fails. The result always passes validate_binding.
// Throws Error(kBindingFailed) only when the fallback finds no subject.
BindOutcome bind_narrative(const Narrative& narrative, const DataTable& table, Provider* provider,
                           const PromptDb& db, const BindConfig& cfg, const Lexicon& lexicon);

BindingResult bind(const Narrative& narrative, const DataTable& table, Provider* provider,
                   const PromptDb& db, const BindConfig& cfg, const Lexicon& lexicon);

// Checks each record against the table: trends with verify_span, numbers
// against the referenced cells. Returns one score per record and appends a
// note to the reason for each mismatch.
std::vector<double> cross_check(BindingResult& result, const DataTable& table,
                                const Lexicon& lexicon, const DetectorParams& params);

}  // namespace layerchart

#endif  // LAYERCHART_BINDER_BIND_H_
