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

#include <atomic>
#include <chrono>
#include <cstdint>

namespace sdgpb {

// Time source used by anything that waits (backoff, rate limiting) so tests
// can substitute a simulated clock.
class Clock {
 public:
  virtual ~Clock() = default;
  virtual std::chrono::milliseconds now() const = 0;
  virtual void sleep_for(std::chrono::milliseconds duration) = 0;
};

class SystemClock final : public Clock {
 public:
  std::chrono::milliseconds now() const override;
  void sleep_for(std::chrono::milliseconds duration) override;

  static SystemClock& instance();
};

// Simulated time: sleeping advances the clock immediately.
class ManualClock final : public Clock {
 public:
  explicit ManualClock(std::chrono::milliseconds start = std::chrono::milliseconds{0})
      : now_ms_(start.count()) {}

  std::chrono::milliseconds now() const override { return std::chrono::milliseconds{now_ms_.load()}; }
  void sleep_for(std::chrono::milliseconds duration) override {
    if (duration.count() > 0) now_ms_ += duration.count();
  }
  void advance(std::chrono::milliseconds duration) { sleep_for(duration); }

 private:
  std::atomic<std::int64_t> now_ms_;
};

}  // namespace sdgpb
