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

#include "binder/bind.h"

#include "binder/fallback.h"
#include "binder/text_match.h"
#include "core/error.h"
#include "core/util.h"

namespace layerchart {

BindingResult parse_binding_response(std::string_view raw) { return parse_binding_document(raw); }

std::vector<double> cross_check(BindingResult& result, const DataTable& table,
                                const Lexicon& lexicon, const DetectorParams& params) {
  std::vector<double> scores;
  for (const auto& r : result.records) {
    double score = 1.0;
    std::string note;
    const size_t a = r.position[0].row;
    const size_t b = r.position[1].row;
    auto series = resolve_series(table, r.data_name);
    if (r.trend) {
      auto m = lexicon.classify(*r.trend);
      if (!m) {
        score = 0.75;
        note = "the trend '" + *r.trend + "' is not in the trend vocabulary";
      } else if (m->pattern != PatternId::kEventPoint &&
                 !verify_span(series, m->pattern, Span{a, b}, params)) {
        score = 0.5;
        note = "the trend '" + *r.trend + "' (" + pattern_name(m->pattern) +
               ") does not hold from row " + std::to_string(a) + " to row " + std::to_string(b) +
               " of the column '" + r.data_name + "'";
      }
    } else if (r.num) {
      bool all_found = true;
      for (double v : *r.num) {
        bool found = false;
        for (size_t row = a; row <= b && row <= series.size(); ++row) {
          const auto& cell = series[row - 1];
          if (cell && values_close(*cell, v)) found = true;
        }
        all_found = all_found && found;
      }
      if (!all_found) {
        score = 0.5;
        note = "the number in the record does not equal the referenced cells of the column '" +
               r.data_name + "'";
      }
    }
    if (!note.empty()) result.reason += "\nCheck: " + note + ".";
    scores.push_back(score);
  }
  return scores;
}

BindOutcome bind_narrative(const Narrative& narrative, const DataTable& table, Provider* provider,
                           const PromptDb& db, const BindConfig& cfg, const Lexicon& lexicon) {
  BindOutcome out;
  if (provider && provider->available()) {
    RetrievalConfig rc = cfg.retrieval;
    auto examples = select_examples(narrative, db, rc);
    size_t drop = std::min(cfg.drop_least_similar, examples.size());
    examples.erase(examples.begin(), examples.begin() + static_cast<std::ptrdiff_t>(drop));
    auto seq = build_prompt(narrative, table, examples, rc);
    for (size_t attempt = 0; attempt <= cfg.max_retries; ++attempt) {
      std::string raw;
      try {
        ++out.attempts;
        raw = provider->send(seq, cfg.timeout);
      } catch (const Error& e) {
        out.notes.push_back(std::string("provider: ") + e.what());
        break;
      }
      try {
        BindingResult r = parse_binding_response(raw);
        auto violations = validate_binding(r, table);
        if (!violations.empty()) {
          out.notes.push_back("attempt " + std::to_string(attempt + 1) +
                              " invalid: " + violations.front());
          continue;
        }
        out.record_scores = cross_check(r, table, lexicon, cfg.detector);
        out.result = std::move(r);
        return out;
      } catch (const Error& e) {
        out.notes.push_back("attempt " + std::to_string(attempt + 1) + " malformed: " + e.what());
      }
    }
  }
  out.used_fallback = true;
  out.result = fallback_bind(narrative, table, lexicon, cfg.detector);
  auto violations = validate_binding(out.result, table);
  if (!violations.empty()) {
    throw Error(ErrorCode::kBindingFailed, "fallback produced an invalid binding: " + violations.front());
  }
  out.record_scores.assign(out.result.records.size(), 1.0);
  return out;
}

BindingResult bind(const Narrative& narrative, const DataTable& table, Provider* provider,
                   const PromptDb& db, const BindConfig& cfg, const Lexicon& lexicon) {
  return bind_narrative(narrative, table, provider, db, cfg, lexicon).result;
}

}  // namespace layerchart
