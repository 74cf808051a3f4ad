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

#ifndef LAYERCHART_SERVICE_HTTP_H_
#define LAYERCHART_SERVICE_HTTP_H_

#include <memory>
#include <string>

#include "service/service.h"

namespace layerchart {

// HTTP status for a library error code.
int http_status(ErrorCode code);

// The /v1 API over a Service. POST requests that carry X-Request-Id (or
// Idempotency-Key) are answered once; a retry with the same id, method and
// path gets the stored response with X-Idempotent-Replay: true.
class ApiServer {
 public:
  explicit ApiServer(Service& service);
  ~ApiServer();
  ApiServer(const ApiServer&) = delete;
  ApiServer& operator=(const ApiServer&) = delete;

  // port 0 picks a free port. Returns the bound port; throws Error(kIo).
  int bind(const std::string& host, int port);
  // Blocks until stop().
  void listen();
  void stop();
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace layerchart

#endif  // LAYERCHART_SERVICE_HTTP_H_
