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

#include "sdgpb/log.hpp"

#include <chrono>

namespace sdgpb {

EventLog::EventLog(const std::filesystem::path& file) {
  if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
  owned_ = std::make_unique<std::ofstream>(file, std::ios::app);
  sink_ = owned_.get();
}

void EventLog::emit(std::string_view event, nlohmann::json fields) {
  if (sink_ == nullptr) return;
  if (!fields.is_object()) fields = nlohmann::json{{"value", std::move(fields)}};
  fields["event"] = event;
  fields["ts_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::system_clock::now().time_since_epoch())
                        .count();
  const auto line = fields.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
  std::lock_guard lock(mutex_);
  *sink_ << line << '\n';
  sink_->flush();
}

EventLog& EventLog::discard() {
  static EventLog log;
  return log;
}

}  // namespace sdgpb
