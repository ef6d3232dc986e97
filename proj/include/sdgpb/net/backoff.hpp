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

#include <chrono>
#include <cstdint>

namespace sdgpb::net {

struct RetryPolicy {
  int retry_budget = 4;  // retries after the first attempt
  std::chrono::milliseconds base_delay{1'000};
  std::chrono::milliseconds max_delay{60'000};
  double jitter = 0.5;  // fraction of the delay that may be shaved off
  std::uint64_t jitter_seed = 0;
};

// Delay before retry number `retry_index` (0-based) of the request stream
// identified by `stream`:
//
//   min(max_delay, base_delay * 2^retry_index) * (1 - jitter * u)
//
// with u in [0, 1) drawn from a hash of (jitter_seed, stream, retry_index),
// so the schedule is a pure function of its inputs.
std::chrono::milliseconds backoff_delay(const RetryPolicy& policy, std::uint64_t stream,
                                        int retry_index);

inline bool is_retryable_status(int status) {
  return status == 429 || status == 500 || status == 502 || status == 503 || status == 504;
}

}  // namespace sdgpb::net
