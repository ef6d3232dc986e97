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

#include <optional>
#include <string>
#include <vector>

#include "sdgpb/taxonomy.hpp"

namespace sdgpb::pipeline {

// Stage-3 verdict for one pair.
struct PairVerdict {
  SdgPbPair pair;
  Category category = Category::Neutral;
  std::string justification;
  std::string evidence_quote;

  bool operator==(const PairVerdict&) const = default;
};

// Fully processed pair. `direction` and `refined` are set exactly when the
// category is not Neutral and the document completed.
struct PairClassification {
  SdgPbPair pair;
  Category category = Category::Neutral;
  std::optional<RefinedLabel> refined;
  std::optional<Direction> direction;
  std::string justification;
  std::string evidence_quote;

  bool operator==(const PairClassification&) const = default;
};

enum class DocState { Complete, Failed, Skipped };

struct DocumentStatus {
  DocState state = DocState::Complete;
  int stage = 0;       // Failed only
  std::string reason;  // error kind name for Failed/Skipped

  bool operator==(const DocumentStatus&) const = default;
};

struct DocumentResult {
  std::string doc_id;
  std::vector<SdgId> sdgs;
  std::vector<PbId> pbs;
  std::vector<PairClassification> pairs;  // ascending by (sdg, pb)
  DocumentStatus status;
  std::string template_version;

  bool operator==(const DocumentResult&) const = default;
};

}  // namespace sdgpb::pipeline
