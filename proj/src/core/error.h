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

#ifndef LAYERCHART_CORE_ERROR_H_
#define LAYERCHART_CORE_ERROR_H_

#include <stdexcept>
#include <string>

namespace layerchart {

enum class ErrorCode {
  kInvalidArgument,
  kIo,
  kParse,
  kValidation,
  kEmptyArticle,
  kEmptySeries,
  kSeriesTooShort,
  kMalformedResponse,
  kBindingFailed,
  kProvider,
  kTargetNotInLayout,
  kCanvasTooSmall,
  kNoNumericColumn,
  kEmptyFrameList,
  kDimensionMismatch,
  kUnknownTarget,
  kNotFound,
  kLayout,
};

const char* error_code_name(ErrorCode code);

// All library failures are reported through this type; the C API maps the
// code onto its status enum.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace layerchart

#endif  // LAYERCHART_CORE_ERROR_H_
