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
#include <fstream>
#include <memory>
#include <mutex>
#include <ostream>
#include <string_view>

#include "json.hpp"

namespace sdgpb {

// Structured event log: one JSON object per line, e.g.
//   {"event":"llm_attempt","ts_ms":...,"doc_id":"d01","stage":3,"attempt":2,...}
class EventLog {
 public:
  EventLog() = default;  // discards events
  explicit EventLog(std::ostream& sink) : sink_(&sink) {}
  explicit EventLog(const std::filesystem::path& file);

  void emit(std::string_view event, nlohmann::json fields = nlohmann::json::object());

  static EventLog& discard();

 private:
  std::unique_ptr<std::ofstream> owned_;
  std::ostream* sink_ = nullptr;
  std::mutex mutex_;
};

}  // namespace sdgpb
