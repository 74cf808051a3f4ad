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

#include "app/curate.h"

#include <map>
#include <set>

#include "binder/prompt.h"
#include "core/error.h"
#include "core/util.h"

namespace layerchart {

nlohmann::json curation_entry_to_json(const CurationEntry& e) {
  return {{"id", e.id},
          {"timestamp", e.timestamp},
          {"projectId", e.project_id},
          {"narrativeId", e.narrative_id},
          {"text", e.text},
          {"tableDigest", e.table_digest},
          {"span",
           {{"kind", vocab_kind_name(e.span.kind)},
            {"text", e.span.text},
            {"charStart", e.span.char_start},
            {"charEnd", e.span.char_end}}},
          {"correctedBinding", e.corrected_binding},
          {"note", e.note},
          {"reviewed", e.reviewed}};
}

CurationEntry curation_entry_from_json(const nlohmann::json& j) {
  try {
    CurationEntry e;
    e.id = j.at("id").get<std::string>();
    e.timestamp = j.value("timestamp", "");
    e.project_id = j.value("projectId", "");
    e.narrative_id = j.value("narrativeId", "");
    e.text = j.at("text").get<std::string>();
    e.table_digest = j.value("tableDigest", "");
    const auto& s = j.at("span");
    auto kind = parse_vocab_kind(s.at("kind").get<std::string>());
    if (!kind) throw Error(ErrorCode::kParse, "curation entry '" + e.id + "': unknown span kind");
    e.span = VocabSpan{*kind, s.at("text").get<std::string>(), s.value("charStart", size_t{0}),
                       s.value("charEnd", size_t{0})};
    e.corrected_binding = j.value("correctedBinding", "");
    e.note = j.value("note", "");
    e.reviewed = j.value("reviewed", false);
    return e;
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::kParse, std::string("curation entry: ") + ex.what());
  }
}

void append_curation_entry(const std::string& path, const CurationEntry& e) {
  if (trim(e.span.text).empty()) throw Error(ErrorCode::kInvalidArgument, "a mark needs a non-empty span");
  append_file(path, curation_entry_to_json(e).dump() + "\n");
}

void append_review(const std::string& path, const std::string& entry_id) {
  append_file(path, nlohmann::json{{"review", entry_id}, {"timestamp", utc_timestamp()}}.dump() + "\n");
}

std::vector<CurationEntry> load_curation_file(const std::string& path) {
  std::vector<CurationEntry> out;
  if (!file_exists(path)) return out;
  std::map<std::string, size_t> index;
  size_t line_no = 0;
  for (const auto& line : split(read_file(path), '\n')) {
    ++line_no;
    if (trim(line).empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kParse, path + ":" + std::to_string(line_no) + ": " + e.what());
    }
    if (j.contains("review")) {
      auto it = index.find(j["review"].get<std::string>());
      if (it != index.end()) out[it->second].reviewed = true;
      continue;
    }
    auto e = curation_entry_from_json(j);
    index[e.id] = out.size();
    out.push_back(std::move(e));
  }
  return out;
}

CurateResult curate(const std::string& curation_path, const std::string& prompt_db_path) {
  CurateResult res;
  auto entries = load_curation_file(curation_path);
  std::set<std::string> ids;
  std::set<std::pair<std::string, std::string>> contents;
  if (file_exists(prompt_db_path)) {
    const PromptDb existing = load_prompt_db(prompt_db_path);
    for (const auto& ex : existing.examples()) {
      ids.insert(ex.id);
      contents.emplace(ex.input_text, ex.expected_output);
    }
  }
  for (const auto& e : entries) {
    if (!e.reviewed) continue;
    PromptExample ex;
    ex.id = "cur-" + e.id;
    ex.input_text = e.text;
    ex.table_digest = e.table_digest;
    ex.expected_output = e.corrected_binding;
    try {
      ex.reasoning = parse_binding_document(e.corrected_binding).reason;
    } catch (const Error&) {
    }
    if (ids.count(ex.id) || contents.count({ex.input_text, ex.expected_output})) {
      res.warnings.push_back("entry " + e.id + " is already in the prompt DB; skipped");
      continue;
    }
    auto problems = validate_prompt_example(ex);
    if (!problems.empty()) {
      res.warnings.push_back("entry " + e.id + " is not a valid example: " + problems.front());
      continue;
    }
    append_prompt_example(prompt_db_path, ex);
    ids.insert(ex.id);
    contents.emplace(ex.input_text, ex.expected_output);
    ++res.promoted;
  }
  return res;
}

}  // namespace layerchart
