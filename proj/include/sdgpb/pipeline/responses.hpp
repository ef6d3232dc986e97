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

#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "sdgpb/llm/request.hpp"
#include "sdgpb/pipeline/types.hpp"
#include "sdgpb/taxonomy.hpp"

namespace sdgpb::pipeline {

// Structured-output parsers for the five stages. All of them throw
// ResponseError; the kinds are SchemaError, IdOutOfRange, PairSetMismatch,
// ConflictingDuplicate, UnknownCategory, UnknownDirection and
// IllegalRefinement.
//
// A reply must hold exactly one JSON object, optionally wrapped in a
// markdown code fence. Pair replies must cover the batch exactly; repeated
// identical entries are merged, repeated conflicting entries are rejected.

nlohmann::json extract_json_object(std::string_view text);

// Sorted, deduplicated ids from {"sdgs": [...]} or {"pbs": [...]}.
std::vector<int> parse_allocation(const llm::RawResponse& raw, Axis axis);

// Verdicts in batch order.
std::vector<PairVerdict> parse_relationship(const llm::RawResponse& raw, std::span<const SdgPbPair> batch);

std::vector<std::pair<SdgPbPair, Direction>> parse_causality(const llm::RawResponse& raw,
                                                             std::span<const SdgPbPair> batch);

// Each label must be legal for the pair's stage-3 category.
std::vector<std::pair<SdgPbPair, RefinedLabel>> parse_reasoner(const llm::RawResponse& raw,
                                                               std::span<const PairVerdict> batch);

}  // namespace sdgpb::pipeline
