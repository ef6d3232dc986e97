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

#include <algorithm>
#include <span>
#include <stdexcept>
#include <vector>

#include "sdgpb/taxonomy.hpp"

namespace sdgpb::pipeline {

inline constexpr int kDefaultBatchCap = 20;

// Cartesian product sorted ascending by (sdg, pb).
std::vector<SdgPbPair> pair_candidates(std::span<const SdgId> sdgs, std::span<const PbId> pbs);

// Consecutive batches of at most `cap` items; only the last may be short.
// Throws std::invalid_argument for cap < 1.
template <typename T>
std::vector<std::vector<T>> chunk_pairs(const std::vector<T>& items, int cap = kDefaultBatchCap) {
  if (cap < 1) throw std::invalid_argument("batch cap must be at least 1");
  std::vector<std::vector<T>> batches;
  const auto step = static_cast<std::size_t>(cap);
  for (std::size_t i = 0; i < items.size(); i += step) {
    const auto n = std::min(step, items.size() - i);
    batches.emplace_back(items.begin() + static_cast<std::ptrdiff_t>(i),
                         items.begin() + static_cast<std::ptrdiff_t>(i + n));
  }
  return batches;
}

}  // namespace sdgpb::pipeline
