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
#include <vector>

#include "json.hpp"
#include "sdgpb/pipeline/types.hpp"

namespace sdgpb::pipeline {

// Result row schema:
//   {"doc_id": str, "template_version": str,
//    "status": {"state": "complete"} | {"state": "failed", "stage": n, "reason": kind}
//              | {"state": "skipped", "reason": kind},
//    "sdgs": [int], "pbs": [int],
//    "pairs": [{"sdg": int, "pb": int, "category": "synergy"|"trade-off"|"neutral",
//               "refined": label|null, "direction": "SDG->PB"|"PB->SDG"|null,
//               "justification": str, "evidence_quote": str}]}
nlohmann::json to_json(const DocumentResult& result);
// Throws MissingInput on schema violations.
DocumentResult document_result_from_json(const nlohmann::json& row);

// Writes rows sorted by doc_id.
void write_results(const std::filesystem::path& path, std::vector<DocumentResult> results);
std::vector<DocumentResult> read_results(const std::filesystem::path& path);

}  // namespace sdgpb::pipeline
