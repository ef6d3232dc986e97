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

#include "sdgpb/pipeline/checkpoint.hpp"

#include <algorithm>
#include <fstream>

#include "sdgpb/error.hpp"
#include "sdgpb/io.hpp"

namespace sdgpb::pipeline {

CheckpointStore::CheckpointStore(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::filesystem::path CheckpointStore::file_for(const std::string& doc_id) const {
  return dir_ / (io::safe_file_stem(doc_id) + ".jsonl");
}

std::optional<Checkpoint> CheckpointStore::read_file(const std::filesystem::path& file) {
  if (!std::filesystem::exists(file)) return std::nullopt;
  const auto rows = io::read_jsonl(file, true);
  if (rows.empty()) return std::nullopt;
  const auto& row = rows.back();
  Checkpoint c;
  c.doc_id = row.value("doc_id", "");
  c.last_completed_stage = row.value("last_completed_stage", 0);
  c.template_version = row.value("template_version", "");
  c.payloads = row.value("payloads", nlohmann::json::object());
  return c;
}

std::optional<Checkpoint> CheckpointStore::load(const std::string& doc_id) const {
  std::lock_guard lock(mutex_);
  return read_file(file_for(doc_id));
}

std::vector<Checkpoint> CheckpointStore::load_all() const {
  std::lock_guard lock(mutex_);
  std::vector<Checkpoint> all;
  if (!std::filesystem::is_directory(dir_)) return all;
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir_)) {
    if (entry.is_regular_file() && entry.path().extension() == ".jsonl") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    if (auto c = read_file(f)) all.push_back(std::move(*c));
  }
  return all;
}

void CheckpointStore::write(const Checkpoint& checkpoint) {
  if (checkpoint.last_completed_stage < 0 || checkpoint.last_completed_stage > 5) {
    throw Error(ErrorKind::CheckpointRegression, "stage out of range for " + checkpoint.doc_id);
  }
  std::lock_guard lock(mutex_);
  const auto file = file_for(checkpoint.doc_id);
  auto it = last_stage_.find(checkpoint.doc_id);
  if (it == last_stage_.end()) {
    const auto existing = read_file(file);
    it = last_stage_.emplace(checkpoint.doc_id, existing ? existing->last_completed_stage : 0).first;
  }
  if (checkpoint.last_completed_stage < it->second) {
    throw Error(ErrorKind::CheckpointRegression,
                checkpoint.doc_id + " checkpoint would move from stage " + std::to_string(it->second) +
                    " back to " + std::to_string(checkpoint.last_completed_stage));
  }

  const nlohmann::json row{{"doc_id", checkpoint.doc_id},
                           {"last_completed_stage", checkpoint.last_completed_stage},
                           {"template_version", checkpoint.template_version},
                           {"payloads", checkpoint.payloads}};
  std::filesystem::create_directories(dir_);
  std::ofstream out(file, std::ios::app | std::ios::binary);
  if (!out) throw Error(ErrorKind::MissingInput, "cannot write checkpoint " + file.string());
  out << row.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace) << '\n';
  out.flush();
  it->second = checkpoint.last_completed_stage;
}

void CheckpointStore::clear() {
  std::lock_guard lock(mutex_);
  std::filesystem::remove_all(dir_);
  last_stage_.clear();
}

}  // namespace sdgpb::pipeline
