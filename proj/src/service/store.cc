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

#include "service/store.h"

#include <sqlite3.h>

#include "core/error.h"
#include "core/util.h"

namespace layerchart {

namespace {

[[noreturn]] void fail(sqlite3* db, const std::string& what) {
  throw Error(ErrorCode::kIo, what + ": " + (db ? sqlite3_errmsg(db) : "sqlite failure"));
}

// Prepared statement with positional binding helpers.
class Stmt {
 public:
  Stmt(sqlite3* db, const char* sql) : db_(db) {
    if (sqlite3_prepare_v2(db, sql, -1, &st_, nullptr) != SQLITE_OK) fail(db, "prepare");
  }
  ~Stmt() { sqlite3_finalize(st_); }
  Stmt(const Stmt&) = delete;
  Stmt& operator=(const Stmt&) = delete;

  Stmt& text(int i, const std::string& v) {
    sqlite3_bind_text(st_, i, v.data(), static_cast<int>(v.size()), SQLITE_TRANSIENT);
    return *this;
  }
  Stmt& opt_text(int i, const std::optional<std::string>& v) {
    if (v) return text(i, *v);
    sqlite3_bind_null(st_, i);
    return *this;
  }
  Stmt& integer(int i, int64_t v) {
    sqlite3_bind_int64(st_, i, v);
    return *this;
  }
  bool step() {
    int rc = sqlite3_step(st_);
    if (rc == SQLITE_ROW) return true;
    if (rc == SQLITE_DONE) return false;
    fail(db_, "step");
  }
  void run() { step(); }
  std::string col_text(int i) const {
    auto* p = sqlite3_column_text(st_, i);
    return p ? std::string(reinterpret_cast<const char*>(p), static_cast<size_t>(sqlite3_column_bytes(st_, i)))
             : std::string();
  }
  std::optional<std::string> col_opt_text(int i) const {
    if (sqlite3_column_type(st_, i) == SQLITE_NULL) return std::nullopt;
    return col_text(i);
  }
  int64_t col_int(int i) const { return sqlite3_column_int64(st_, i); }

 private:
  sqlite3* db_;
  sqlite3_stmt* st_ = nullptr;
};

class Transaction {
 public:
  explicit Transaction(sqlite3* db) : db_(db) { sqlite3_exec(db_, "BEGIN IMMEDIATE", nullptr, nullptr, nullptr); }
  ~Transaction() {
    if (!done_) sqlite3_exec(db_, "ROLLBACK", nullptr, nullptr, nullptr);
  }
  void commit() {
    if (sqlite3_exec(db_, "COMMIT", nullptr, nullptr, nullptr) != SQLITE_OK) fail(db_, "commit");
    done_ = true;
  }

 private:
  sqlite3* db_;
  bool done_ = false;
};

constexpr const char* kSchema = R"sql(
CREATE TABLE IF NOT EXISTS projects (
  id TEXT PRIMARY KEY, created_at TEXT NOT NULL, table_json TEXT NOT NULL, article TEXT NOT NULL);
CREATE TABLE IF NOT EXISTS narratives (
  project_id TEXT NOT NULL, narrative_id TEXT NOT NULL, ord INTEGER NOT NULL, text TEXT NOT NULL,
  epoch INTEGER NOT NULL, binding TEXT, note TEXT NOT NULL, used_fallback INTEGER NOT NULL,
  regenerations INTEGER NOT NULL, base_spec TEXT NOT NULL, spec TEXT NOT NULL,
  PRIMARY KEY (project_id, narrative_id));
CREATE TABLE IF NOT EXISTS edits (
  project_id TEXT NOT NULL, narrative_id TEXT NOT NULL, epoch INTEGER NOT NULL, seq INTEGER NOT NULL,
  op TEXT NOT NULL, inverse TEXT NOT NULL, request_id TEXT NOT NULL, created_at TEXT NOT NULL,
  PRIMARY KEY (project_id, narrative_id, epoch, seq));
CREATE TABLE IF NOT EXISTS feedback (
  id TEXT PRIMARY KEY, project_id TEXT NOT NULL, narrative_id TEXT NOT NULL, kind TEXT NOT NULL,
  payload TEXT NOT NULL, timestamp TEXT NOT NULL);
CREATE TABLE IF NOT EXISTS responses (
  request_id TEXT PRIMARY KEY, status INTEGER NOT NULL, content_type TEXT NOT NULL, body BLOB NOT NULL);
)sql";

}  // namespace

Store::Store(const std::string& path) {
  if (sqlite3_open_v2(path.c_str(), &db_, SQLITE_OPEN_READWRITE | SQLITE_OPEN_CREATE | SQLITE_OPEN_FULLMUTEX,
                      nullptr) != SQLITE_OK) {
    std::string msg = db_ ? sqlite3_errmsg(db_) : "out of memory";
    sqlite3_close(db_);
    db_ = nullptr;
    throw Error(ErrorCode::kIo, "cannot open store " + path + ": " + msg);
  }
  sqlite3_busy_timeout(db_, 5000);
  exec("PRAGMA journal_mode=WAL");
  exec(kSchema);
}

Store::~Store() { sqlite3_close(db_); }

void Store::exec(const char* sql) {
  char* err = nullptr;
  if (sqlite3_exec(db_, sql, nullptr, nullptr, &err) != SQLITE_OK) {
    std::string msg = err ? err : "unknown error";
    sqlite3_free(err);
    throw Error(ErrorCode::kIo, std::string("store: ") + msg);
  }
}

void Store::put_narrative_locked(const StoredNarrative& n) {
  Stmt(db_,
       "INSERT OR REPLACE INTO narratives (project_id, narrative_id, ord, text, epoch, binding, note,"
       " used_fallback, regenerations, base_spec, spec) VALUES (?,?,?,?,?,?,?,?,?,?,?)")
      .text(1, n.project_id)
      .text(2, n.narrative_id)
      .integer(3, static_cast<int64_t>(n.order))
      .text(4, n.text)
      .integer(5, static_cast<int64_t>(n.epoch))
      .opt_text(6, n.binding)
      .text(7, n.note)
      .integer(8, n.used_fallback ? 1 : 0)
      .integer(9, static_cast<int64_t>(n.regenerations))
      .text(10, n.base_spec)
      .text(11, n.spec)
      .run();
}

void Store::put_project(const StoredProject& p, const std::vector<StoredNarrative>& narratives) {
  std::lock_guard lock(mu_);
  Transaction tx(db_);
  Stmt(db_, "INSERT INTO projects (id, created_at, table_json, article) VALUES (?,?,?,?)")
      .text(1, p.id)
      .text(2, p.created_at)
      .text(3, p.table_json)
      .text(4, p.article)
      .run();
  for (const auto& n : narratives) put_narrative_locked(n);
  tx.commit();
}

std::optional<StoredProject> Store::project(const std::string& id) {
  std::lock_guard lock(mu_);
  Stmt st(db_, "SELECT id, created_at, table_json, article FROM projects WHERE id = ?");
  st.text(1, id);
  if (!st.step()) return std::nullopt;
  return StoredProject{st.col_text(0), st.col_text(1), st.col_text(2), st.col_text(3)};
}

std::vector<std::string> Store::project_ids() {
  std::lock_guard lock(mu_);
  Stmt st(db_, "SELECT id FROM projects ORDER BY created_at, id");
  std::vector<std::string> out;
  while (st.step()) out.push_back(st.col_text(0));
  return out;
}

std::vector<StoredNarrative> Store::narratives(const std::string& project_id) {
  std::lock_guard lock(mu_);
  Stmt st(db_,
          "SELECT project_id, narrative_id, ord, text, epoch, binding, note, used_fallback, regenerations,"
          " base_spec, spec FROM narratives WHERE project_id = ? ORDER BY ord");
  st.text(1, project_id);
  std::vector<StoredNarrative> out;
  while (st.step()) {
    StoredNarrative n;
    n.project_id = st.col_text(0);
    n.narrative_id = st.col_text(1);
    n.order = static_cast<size_t>(st.col_int(2));
    n.text = st.col_text(3);
    n.epoch = static_cast<size_t>(st.col_int(4));
    n.binding = st.col_opt_text(5);
    n.note = st.col_text(6);
    n.used_fallback = st.col_int(7) != 0;
    n.regenerations = static_cast<size_t>(st.col_int(8));
    n.base_spec = st.col_text(9);
    n.spec = st.col_text(10);
    out.push_back(std::move(n));
  }
  return out;
}

void Store::put_narratives(const std::vector<StoredNarrative>& narratives) {
  std::lock_guard lock(mu_);
  Transaction tx(db_);
  for (const auto& n : narratives) put_narrative_locked(n);
  tx.commit();
}

size_t Store::put_edit(const StoredNarrative& narrative, StoredEdit edit) {
  std::lock_guard lock(mu_);
  Transaction tx(db_);
  Stmt next(db_,
            "SELECT COALESCE(MAX(seq), 0) + 1 FROM edits WHERE project_id = ? AND narrative_id = ? AND epoch = ?");
  next.text(1, edit.project_id).text(2, edit.narrative_id).integer(3, static_cast<int64_t>(edit.epoch));
  next.step();
  edit.seq = static_cast<size_t>(next.col_int(0));
  Stmt(db_,
       "INSERT INTO edits (project_id, narrative_id, epoch, seq, op, inverse, request_id, created_at)"
       " VALUES (?,?,?,?,?,?,?,?)")
      .text(1, edit.project_id)
      .text(2, edit.narrative_id)
      .integer(3, static_cast<int64_t>(edit.epoch))
      .integer(4, static_cast<int64_t>(edit.seq))
      .text(5, edit.op)
      .text(6, edit.inverse)
      .text(7, edit.request_id)
      .text(8, edit.created_at)
      .run();
  put_narrative_locked(narrative);
  tx.commit();
  return edit.seq;
}

std::vector<StoredEdit> Store::edits(const std::string& project_id, const std::string& narrative_id,
                                     std::optional<size_t> epoch) {
  std::lock_guard lock(mu_);
  Stmt st(db_,
          "SELECT project_id, narrative_id, epoch, seq, op, inverse, request_id, created_at FROM edits"
          " WHERE project_id = ? AND narrative_id = ? AND (? < 0 OR epoch = ?) ORDER BY epoch, seq");
  const int64_t e = epoch ? static_cast<int64_t>(*epoch) : -1;
  st.text(1, project_id).text(2, narrative_id).integer(3, e).integer(4, e);
  std::vector<StoredEdit> out;
  while (st.step()) {
    out.push_back(StoredEdit{st.col_text(0), st.col_text(1), static_cast<size_t>(st.col_int(2)),
                             static_cast<size_t>(st.col_int(3)), st.col_text(4), st.col_text(5),
                             st.col_text(6), st.col_text(7)});
  }
  return out;
}

void Store::append_feedback(const StoredFeedback& f) {
  std::lock_guard lock(mu_);
  Stmt(db_, "INSERT INTO feedback (id, project_id, narrative_id, kind, payload, timestamp) VALUES (?,?,?,?,?,?)")
      .text(1, f.id)
      .text(2, f.project_id)
      .text(3, f.narrative_id)
      .text(4, f.kind)
      .text(5, f.payload)
      .text(6, f.timestamp)
      .run();
}

std::vector<StoredFeedback> Store::feedback(const std::string& project_id) {
  std::lock_guard lock(mu_);
  Stmt st(db_,
          "SELECT id, project_id, narrative_id, kind, payload, timestamp FROM feedback WHERE project_id = ?"
          " ORDER BY rowid");
  st.text(1, project_id);
  std::vector<StoredFeedback> out;
  while (st.step()) {
    out.push_back(StoredFeedback{st.col_text(0), st.col_text(1), st.col_text(2), st.col_text(3),
                                 st.col_text(4), st.col_text(5)});
  }
  return out;
}

std::optional<StoredResponse> Store::response(const std::string& request_id) {
  std::lock_guard lock(mu_);
  Stmt st(db_, "SELECT status, content_type, body FROM responses WHERE request_id = ?");
  st.text(1, request_id);
  if (!st.step()) return std::nullopt;
  return StoredResponse{static_cast<int>(st.col_int(0)), st.col_text(1), st.col_text(2)};
}

void Store::put_response(const std::string& request_id, const StoredResponse& r) {
  std::lock_guard lock(mu_);
  Stmt(db_, "INSERT OR REPLACE INTO responses (request_id, status, content_type, body) VALUES (?,?,?,?)")
      .text(1, request_id)
      .integer(2, r.status)
      .text(3, r.content_type)
      .text(4, r.body)
      .run();
}

}  // namespace layerchart
