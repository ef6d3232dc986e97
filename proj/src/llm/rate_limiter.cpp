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

#include "sdgpb/llm/rate_limiter.hpp"

namespace sdgpb::llm {

RateLimiter::RateLimiter(int requests_per_minute, Clock& clock)
    : rpm_(requests_per_minute < 0 ? 0 : requests_per_minute), clock_(clock) {}

std::chrono::milliseconds RateLimiter::acquire() {
  std::unique_lock lock(mutex_);
  for (;;) {
    const auto now = clock_.now();
    while (!recent_.empty() && recent_.front() + kWindow <= now) recent_.pop_front();
    if (rpm_ == 0 || static_cast<int>(recent_.size()) < rpm_) {
      if (rpm_ != 0) recent_.push_back(now);
      ++dispatched_;
      return now;
    }
    const auto wait = recent_.front() + kWindow - now;
    lock.unlock();
    clock_.sleep_for(wait);
    lock.lock();
  }
}

std::uint64_t RateLimiter::dispatched() const {
  std::lock_guard lock(mutex_);
  return dispatched_;
}

}  // namespace sdgpb::llm
