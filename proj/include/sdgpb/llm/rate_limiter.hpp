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
#include <deque>
#include <mutex>

#include "sdgpb/clock.hpp"

namespace sdgpb::llm {

// Shared limiter for live dispatches. Keeps the timestamps of the last
// `requests_per_minute` dispatches and blocks until the oldest one leaves the
// trailing 60 s window, so no 60 s window ever holds more than the limit.
// A limit of 0 disables limiting.
class RateLimiter {
 public:
  RateLimiter(int requests_per_minute, Clock& clock);

  // Blocks (via the clock) until a slot is free; returns the dispatch time.
  std::chrono::milliseconds acquire();

  int requests_per_minute() const { return rpm_; }
  std::uint64_t dispatched() const;

 private:
  static constexpr std::chrono::milliseconds kWindow{60'000};

  int rpm_;
  Clock& clock_;
  mutable std::mutex mutex_;
  std::deque<std::chrono::milliseconds> recent_;
  std::uint64_t dispatched_ = 0;
};

}  // namespace sdgpb::llm
