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

#include "core/error.h"

namespace layerchart {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kIo: return "Io";
    case ErrorCode::kParse: return "Parse";
    case ErrorCode::kValidation: return "Validation";
    case ErrorCode::kEmptyArticle: return "EmptyArticle";
    case ErrorCode::kEmptySeries: return "EmptySeries";
    case ErrorCode::kSeriesTooShort: return "SeriesTooShort";
    case ErrorCode::kMalformedResponse: return "MalformedResponse";
    case ErrorCode::kBindingFailed: return "BindingFailed";
    case ErrorCode::kProvider: return "Provider";
    case ErrorCode::kTargetNotInLayout: return "TargetNotInLayout";
    case ErrorCode::kCanvasTooSmall: return "CanvasTooSmall";
    case ErrorCode::kNoNumericColumn: return "NoNumericColumn";
    case ErrorCode::kEmptyFrameList: return "EmptyFrameList";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kUnknownTarget: return "UnknownTarget";
    case ErrorCode::kNotFound: return "NotFound";
    case ErrorCode::kLayout: return "Layout";
  }
  return "Unknown";
}

}  // namespace layerchart
