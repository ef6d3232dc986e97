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

#include "sdgpb/net/backoff.hpp"

#include <algorithm>
#include <cmath>

#include "sdgpb/hash.hpp"

namespace sdgpb::net {

std::chrono::milliseconds backoff_delay(const RetryPolicy& policy, std::uint64_t stream,
                                        int retry_index) {
  const double base = static_cast<double>(policy.base_delay.count());
  const double cap = static_cast<double>(policy.max_delay.count());
  const double raw = std::min(cap, base * std::ldexp(1.0, std::clamp(retry_index, 0, 62)));
  const auto bits = mix64(policy.jitter_seed ^ mix64(stream ^ mix64(static_cast<std::uint64_t>(retry_index))));
  const double u = static_cast<double>(bits >> 11) * 0x1.0p-53;
  const double jitter = std::clamp(policy.jitter, 0.0, 1.0);
  return std::chrono::milliseconds{static_cast<std::int64_t>(std::floor(raw * (1.0 - jitter * u)))};
}

}  // namespace sdgpb::net
