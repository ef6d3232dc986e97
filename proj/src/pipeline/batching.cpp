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

#include "sdgpb/pipeline/batching.hpp"

#include <algorithm>

namespace sdgpb::pipeline {

std::vector<SdgPbPair> pair_candidates(std::span<const SdgId> sdgs, std::span<const PbId> pbs) {
  std::vector<SdgId> s(sdgs.begin(), sdgs.end());
  std::vector<PbId> p(pbs.begin(), pbs.end());
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  std::sort(p.begin(), p.end());
  p.erase(std::unique(p.begin(), p.end()), p.end());

  std::vector<SdgPbPair> pairs;
  pairs.reserve(s.size() * p.size());
  for (const auto& sdg : s) {
    for (const auto& pb : p) pairs.push_back({sdg, pb});
  }
  return pairs;
}

}  // namespace sdgpb::pipeline
