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
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace sdgpb::pipeline {

// Progress of one document: payloads["1"] .. payloads[last_completed_stage]
// hold each completed stage's parsed output.
struct Checkpoint {
  std::string doc_id;
  int last_completed_stage = 0;
  std::string template_version;
  nlohmann::json payloads = nlohmann::json::object();
};

// JSON-lines checkpoints, one file per document under `dir`; each write
// appends a full snapshot and the last line wins. Writes for one document
// must never move backwards (CheckpointRegression).
class CheckpointStore {
 public:
  explicit CheckpointStore(std::filesystem::path dir);

  std::optional<Checkpoint> load(const std::string& doc_id) const;
  std::vector<Checkpoint> load_all() const;
  void write(const Checkpoint& checkpoint);
  void clear();

  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path file_for(const std::string& doc_id) const;
  static std::optional<Checkpoint> read_file(const std::filesystem::path& file);

  std::filesystem::path dir_;
  mutable std::mutex mutex_;
  std::map<std::string, int> last_stage_;
};

}  // namespace sdgpb::pipeline
