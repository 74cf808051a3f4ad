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

#ifndef LAYERCHART_BINDER_PROVIDER_H_
#define LAYERCHART_BINDER_PROVIDER_H_

#include <chrono>
#include <map>
#include <memory>
#include <mutex>
#include <semaphore>
#include <string>
#include <vector>

#include "binder/prompt.h"

namespace layerchart {

// One request to a language model. purpose is "bind" or "segment";
// task_text is the text being analysed, used by fixture lookups.
struct ChatRequest {
  std::string purpose;
  std::string system;
  std::string user;
  std::string task_text;
};

ChatRequest chat_request(const PromptSequence& seq);

// Stable key of a request: hex FNV-1a over purpose, system and user text.
std::string request_hash(const ChatRequest& req);

class Provider {
 public:
  virtual ~Provider() = default;
  virtual std::string name() const = 0;
  // False for the null provider; callers skip straight to the fallback.
  virtual bool available() const { return true; }
  // Raw model text. Throws Error(kProvider) when no response is obtained.
  virtual std::string complete(const ChatRequest& req, std::chrono::milliseconds timeout) = 0;

  std::string send(const PromptSequence& seq, std::chrono::milliseconds timeout) {
    return complete(chat_request(seq), timeout);
  }
};

class NullProvider : public Provider {
 public:
  std::string name() const override { return "null"; }
  bool available() const override { return false; }
  std::string complete(const ChatRequest& req, std::chrono::milliseconds timeout) override;
};

// Replays recorded responses from a directory. A file named
// <request_hash>.txt answers that exact request. Otherwise index.json
// lists entries {"purpose", "match", "responses": [file, ...]}: the first
// entry whose purpose agrees and whose match occurs in the task text
// answers, stepping through its responses on successive calls and
// repeating the last one.
class FixtureProvider : public Provider {
 public:
  explicit FixtureProvider(std::string dir);
  std::string name() const override { return "fixture"; }
  std::string complete(const ChatRequest& req, std::chrono::milliseconds timeout) override;

 private:
  struct Entry {
    std::string purpose;
    std::string match;
    std::vector<std::string> responses;
    size_t next = 0;
  };
  std::string dir_;
  std::vector<Entry> entries_;
  std::mutex mu_;
};

struct HttpProviderConfig {
  std::string endpoint;  // e.g. https://api.example.com/v1/chat/completions
  std::string model;
  std::string api_key_env = "LAYERCHART_API_KEY";
  size_t max_in_flight = 4;
};

// Chat-completion client: posts {model, messages, temperature: 0} and
// reads choices[0].message.content.
class HttpProvider : public Provider {
 public:
  explicit HttpProvider(HttpProviderConfig cfg);
  std::string name() const override { return "http"; }
  std::string complete(const ChatRequest& req, std::chrono::milliseconds timeout) override;

 private:
  HttpProviderConfig cfg_;
  std::string base_;
  std::string path_;
  std::counting_semaphore<64> slots_;
};

struct ProviderConfig {
  std::string kind = "null";  // null | fixture | http
  std::string fixture_dir;
  HttpProviderConfig http;
};

// Throws Error(kInvalidArgument) for an unknown kind or missing settings.
std::unique_ptr<Provider> make_provider(const ProviderConfig& cfg);

}  // namespace layerchart

#endif  // LAYERCHART_BINDER_PROVIDER_H_
