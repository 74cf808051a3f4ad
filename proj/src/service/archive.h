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

#ifndef LAYERCHART_SERVICE_ARCHIVE_H_
#define LAYERCHART_SERVICE_ARCHIVE_H_

#include <string>
#include <utility>
#include <vector>

#include "render/render.h"

namespace layerchart {

struct ArchiveFile {
  std::string name;  // at most 100 bytes
  Bytes data;
};

// POSIX ustar archive, regular files only, mode 0644, mtime 0.
Bytes tar_archive(const std::vector<ArchiveFile>& files);

}  // namespace layerchart

#endif  // LAYERCHART_SERVICE_ARCHIVE_H_
