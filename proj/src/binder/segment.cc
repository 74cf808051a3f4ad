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

#include "binder/segment.h"

#include <regex>

#include "binder/provider.h"
#include "binder/text_match.h"
#include "core/error.h"
#include "core/util.h"

namespace layerchart {
namespace {

constexpr char kSegmentInstruction[] =
    "You split financial articles into narratives. A narrative is a run of consecutive "
    "sentences about a single subject; the subjects are the numeric columns of the table. "
    "Copy the article text verbatim and keep the original order. Answer with one line per "
    "narrative in the form \"Narrative <n>: <text>\" and nothing else.";

std::vector<Narrative> finish(std::vector<Narrative> out) {
  for (size_t i = 0; i < out.size(); ++i) {
    out[i].order = i;
    out[i].id = narrative_id(i);
  }
  return out;
}

}  // namespace

std::string narrative_id(size_t order) { return "n" + std::to_string(order); }

std::vector<Narrative> segment_deterministic(std::string_view article, const DataTable& table) {
  std::vector<Narrative> out;
  bool open_without_subject = false;
  for (const auto& s : split_sentences(article)) {
    std::string_view text = article.substr(s.start, s.end - s.start);
    auto mentions = find_column_mentions(text, table);
    const ColumnMention* primary = primary_mention(mentions);
    std::optional<std::string> subject;
    if (primary) subject = primary->column;
    if (out.empty()) {
      out.push_back({"", 0, std::string(text), subject});
      open_without_subject = !subject;
      continue;
    }
    Narrative& cur = out.back();
    if (!subject || subject == cur.subject_hint) {
      cur.text += text;
    } else if (open_without_subject) {
      cur.text += text;
      cur.subject_hint = subject;
      open_without_subject = false;
    } else {
      out.push_back({"", 0, std::string(text), subject});
    }
  }
  return finish(std::move(out));
}

std::optional<std::vector<Narrative>> align_segments(std::string_view article,
                                                     const std::vector<std::string>& pieces) {
  if (pieces.empty()) return std::nullopt;
  std::vector<size_t> starts;
  size_t cursor = 0;
  for (const auto& raw : pieces) {
    std::string_view piece = trim(raw);
    if (piece.empty()) return std::nullopt;
    size_t at = article.find(piece, cursor);
    if (at == std::string_view::npos) return std::nullopt;
    if (!trim(article.substr(cursor, at - cursor)).empty()) return std::nullopt;
    starts.push_back(at);
    cursor = at + piece.size();
  }
  if (!trim(article.substr(cursor)).empty()) return std::nullopt;
  std::vector<Narrative> out;
  for (size_t i = 0; i < starts.size(); ++i) {
    size_t begin = i == 0 ? 0 : starts[i];
    size_t end = i + 1 < starts.size() ? starts[i + 1] : article.size();
    out.push_back({"", 0, std::string(article.substr(begin, end - begin)), std::nullopt});
  }
  return finish(std::move(out));
}

std::vector<Narrative> segment_narratives(std::string_view article, const DataTable& table,
                                          Provider* provider,
                                          std::chrono::milliseconds timeout) {
  if (trim(article).empty()) throw Error(ErrorCode::kEmptyArticle, "article is empty");
  if (provider && provider->available()) {
    try {
      ChatRequest req;
      req.purpose = "segment";
      req.system = kSegmentInstruction;
      req.task_text = std::string(article);
      req.user = "Input table:\n" + table_digest(table) + "\nInput text: " + req.task_text;
      std::string reply = provider->complete(req, timeout);
      static const std::regex kLine(R"(^\s*Narrative\s*\d+\s*:\s*(.*?)\s*$)",
                                    std::regex::icase);
      std::vector<std::string> pieces;
      for (const auto& line : split(reply, '\n')) {
        std::smatch m;
        if (std::regex_match(line, m, kLine)) pieces.push_back(m[1].str());
      }
      if (auto aligned = align_segments(article, pieces)) {
        for (auto& n : *aligned) {
          auto mentions = find_column_mentions(n.text, table);
          if (const auto* p = primary_mention(mentions)) n.subject_hint = p->column;
        }
        return *aligned;
      }
    } catch (const Error&) {
      // fall through to the deterministic path
    }
  }
  return segment_deterministic(article, table);
}

}  // namespace layerchart
