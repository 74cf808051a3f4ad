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

#ifndef LAYERCHART_APP_CURATE_H_
#define LAYERCHART_APP_CURATE_H_

#include <string>
#include <vector>

#include "core/binding.h"
#include "json.hpp"

namespace layerchart {

// A Mark: the narrative text, its table and the span the user flagged,
// plus the binding a reviewer should start from. Stored as one JSON line
// in the append-only curation file.
struct CurationEntry {
  std::string id;
  std::string timestamp;
  std::string project_id;
  std::string narrative_id;
  std::string text;
  std::string table_digest;
  VocabSpan span;
  std::string corrected_binding;  // wire form
  std::string note;
  bool reviewed = false;
};

nlohmann::json curation_entry_to_json(const CurationEntry& e);
CurationEntry curation_entry_from_json(const nlohmann::json& j);

void append_curation_entry(const std::string& path, const CurationEntry& e);
// Review lines {"review": id, "timestamp"} mark an earlier entry reviewed,
// so approving never rewrites the file.
void append_review(const std::string& path, const std::string& entry_id);
// Entries in file order with reviews applied. A missing file reads empty.
std::vector<CurationEntry> load_curation_file(const std::string& path);

struct CurateResult {
  size_t promoted = 0;
  std::vector<std::string> warnings;
};

// Appends every reviewed entry that carries a valid corrected binding to the
// prompt DB as example "cur-<id>". Entries already present (same id, or
// same text and output) are skipped with a warning.
CurateResult curate(const std::string& curation_path, const std::string& prompt_db_path);

}  // namespace layerchart

#endif  // LAYERCHART_APP_CURATE_H_
