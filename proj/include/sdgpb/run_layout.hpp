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

namespace sdgpb {

// Files and directories inside a run directory.
struct RunLayout {
  std::filesystem::path root;

  std::filesystem::path documents() const { return root / "documents.jsonl"; }
  std::filesystem::path checkpoints() const { return root / "checkpoints"; }
  std::filesystem::path results() const { return root / "results" / "results.jsonl"; }
  std::filesystem::path llm_cache() const { return root / "llm_cache"; }
  std::filesystem::path matrix() const { return root / "aggregate" / "matrix.json"; }
  std::filesystem::path report_dir() const { return root / "report"; }
  std::filesystem::path events() const { return root / "logs" / "events.jsonl"; }
};

}  // namespace sdgpb
