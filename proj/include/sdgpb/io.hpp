/*
 * Copyright 2026 The sdgpb Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace sdgpb::io {

// Throws MissingInput when the file cannot be opened.
std::string read_file(const std::filesystem::path& path);

// Writes to a sibling temporary file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

// Parses one JSON value per non-blank line. A truncated final line (no
// trailing newline, unparseable) is ignored when `tolerate_torn_tail` is set;
// every other bad line throws MissingInput with the line number.
std::vector<nlohmann::json> read_jsonl(const std::filesystem::path& path, bool tolerate_torn_tail = false);

std::string to_jsonl(const std::vector<nlohmann::json>& rows);

}  // namespace sdgpb::io

namespace sdgpb::io {

// File-name-safe stem for an opaque id. Ids made of [A-Za-z0-9._-] map to
// themselves; anything else is sanitized and suffixed with a short hash so
// distinct ids never collide.
std::string safe_file_stem(std::string_view id);

}  // namespace sdgpb::io
