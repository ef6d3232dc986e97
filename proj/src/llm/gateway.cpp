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

#include "sdgpb/llm/gateway.hpp"

#include <algorithm>
#include <fstream>

#include "sdgpb/error.hpp"
#include "sdgpb/io.hpp"

namespace sdgpb::llm {

LiveGateway::LiveGateway(std::shared_ptr<CompletionTransport> transport, net::RetryPolicy policy,
                         std::shared_ptr<RateLimiter> limiter, Clock& clock, EventLog& log)
    : transport_(std::move(transport)),
      policy_(policy),
      limiter_(std::move(limiter)),
      clock_(clock),
      log_(log) {}

RawResponse LiveGateway::complete(const PromptRequest& request) {
  const auto key = to_hex(request.payload_digest);
  std::uint64_t stream = 0;
  for (int i = 0; i < 8; ++i) stream = (stream << 8) | request.payload_digest[i];

  const int max_attempts = std::max(0, policy_.retry_budget) + 1;
  TransportReply reply;
  for (int attempt = 1; attempt <= max_attempts; ++attempt) {
    if (limiter_) limiter_->acquire();
    ++dispatched_;
    const auto started = clock_.now();
    reply = transport_->send(request);
    const auto latency = (clock_.now() - started).count();

    log_.emit("llm_attempt", {{"doc_id", request.doc_id},
                              {"stage", request.stage},
                              {"key", key.substr(0, 16)},
                              {"attempt", attempt},
                              {"status", reply.status},
                              {"transport_error", reply.error_message},
                              {"latency_ms", latency}});

    if (reply.error == net::TransportError::None && reply.status >= 200 && reply.status < 300) {
      if (reply.text.empty()) {
        throw BackendFailure(ErrorKind::BackendError, "backend returned an empty completion");
      }
      return RawResponse{std::move(reply.text), transport_->backend_id(request.stage), latency, attempt};
    }
    const bool transient =
        reply.error != net::TransportError::None || net::is_retryable_status(reply.status);
    if (!transient) {
      throw BackendFailure(ErrorKind::BackendError,
                           "backend returned non-retryable HTTP " + std::to_string(reply.status));
    }
    if (attempt < max_attempts) clock_.sleep_for(net::backoff_delay(policy_, stream, attempt - 1));
  }

  if (reply.status == 429) {
    throw BackendFailure(ErrorKind::RateLimited,
                         "still rate limited after " + std::to_string(max_attempts) + " attempts");
  }
  if (reply.error == net::TransportError::Timeout) {
    throw BackendFailure(ErrorKind::Timeout, "timed out after " + std::to_string(max_attempts) + " attempts");
  }
  throw BackendFailure(ErrorKind::BackendError,
                       "backend failing after " + std::to_string(max_attempts) + " attempts: " +
                           (reply.error_message.empty() ? "HTTP " + std::to_string(reply.status)
                                                        : reply.error_message));
}

// ---------------------------------------------------------------------------

RecordStore::RecordStore(std::filesystem::path dir) : dir_(std::move(dir)) {}

void RecordStore::load() {
  namespace fs = std::filesystem;
  std::lock_guard lock(mutex_);
  by_key_.clear();
  if (!fs::is_directory(dir_)) return;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir_)) {
    if (entry.is_regular_file() && entry.path().extension() == ".jsonl") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& file : files) {
    for (const auto& row : io::read_jsonl(file, true)) {
      RecordedEntry e;
      e.key = row.value("key", "");
      e.stage = row.value("stage", 0);
      e.doc_id = row.value("doc_id", "");
      e.occurrence = row.value("occurrence", 0);
      e.text = row.value("text", "");
      e.backend_id = row.value("backend_id", "");
      e.attempt_count = row.value("attempt_count", 1);
      if (e.key.empty()) continue;
      auto& slot = by_key_[e.key];
      // First recording of an occurrence wins.
      const bool dup = std::any_of(slot.begin(), slot.end(),
                                   [&](const RecordedEntry& x) { return x.occurrence == e.occurrence; });
      if (!dup) slot.push_back(std::move(e));
    }
  }
  for (auto& [key, entries] : by_key_) {
    std::stable_sort(entries.begin(), entries.end(),
                     [](const auto& a, const auto& b) { return a.occurrence < b.occurrence; });
  }
}

std::optional<RecordedEntry> RecordStore::find(const std::string& key, int occurrence) const {
  std::lock_guard lock(mutex_);
  auto it = by_key_.find(key);
  if (it == by_key_.end() || it->second.empty()) return std::nullopt;
  const RecordedEntry* best = &it->second.front();
  for (const auto& e : it->second) {
    if (e.occurrence <= occurrence) best = &e;
  }
  return *best;
}

void RecordStore::append(const RecordedEntry& entry) {
  nlohmann::json row{{"key", entry.key},
                     {"stage", entry.stage},
                     {"doc_id", entry.doc_id},
                     {"occurrence", entry.occurrence},
                     {"text", entry.text},
                     {"backend_id", entry.backend_id},
                     {"attempt_count", entry.attempt_count}};
  std::lock_guard lock(mutex_);
  std::filesystem::create_directories(dir_);
  const auto file = dir_ / (io::safe_file_stem(entry.doc_id) + ".jsonl");
  std::ofstream out(file, std::ios::app | std::ios::binary);
  if (!out) throw Error(ErrorKind::MissingInput, "cannot append to " + file.string());
  out << row.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace) << '\n';
  by_key_[entry.key].push_back(entry);
}

std::size_t RecordStore::size() const {
  std::lock_guard lock(mutex_);
  std::size_t n = 0;
  for (const auto& [k, v] : by_key_) n += v.size();
  return n;
}

// ---------------------------------------------------------------------------

RecordingGateway::RecordingGateway(std::unique_ptr<Gateway> inner, std::filesystem::path cache_dir)
    : inner_(std::move(inner)), store_(std::move(cache_dir)) {}

RawResponse RecordingGateway::complete(const PromptRequest& request) {
  auto response = inner_->complete(request);
  const auto key = to_hex(request.payload_digest);
  int occurrence = 0;
  {
    std::lock_guard lock(mutex_);
    occurrence = occurrences_[key]++;
  }
  store_.append(RecordedEntry{key, request.stage, request.doc_id, occurrence, response.text,
                              response.backend_id, response.attempt_count});
  return response;
}

ReplayGateway::ReplayGateway(std::filesystem::path cache_dir) : store_(std::move(cache_dir)) {
  store_.load();
}

RawResponse ReplayGateway::complete(const PromptRequest& request) {
  const auto key = to_hex(request.payload_digest);
  int occurrence = 0;
  {
    std::lock_guard lock(mutex_);
    occurrence = occurrences_[key]++;
  }
  auto entry = store_.find(key, occurrence);
  if (!entry) {
    throw BackendFailure(ErrorKind::ReplayMiss, "no recording for stage " + std::to_string(request.stage) +
                                                    " of " + request.doc_id + " (key " +
                                                    key.substr(0, 16) + ")");
  }
  return RawResponse{std::move(entry->text), "replay", 0, 1};
}

std::unique_ptr<Gateway> record_session(const std::filesystem::path& cache_dir,
                                        std::unique_ptr<Gateway> live) {
  return std::make_unique<RecordingGateway>(std::move(live), cache_dir);
}

std::unique_ptr<Gateway> replay_session(const std::filesystem::path& cache_dir) {
  return std::make_unique<ReplayGateway>(cache_dir);
}

// ---------------------------------------------------------------------------

GeminiTransport::GeminiTransport(std::shared_ptr<net::HttpClient> http, GeminiOptions options)
    : http_(std::move(http)), options_(std::move(options)) {}

std::string GeminiTransport::backend_id(int stage) const {
  const auto idx = static_cast<std::size_t>(std::clamp(stage, 1, 5) - 1);
  return "gemini:" + options_.models[idx];
}

nlohmann::json gemini_request_body(const PromptRequest& request) {
  nlohmann::json body{
      {"contents", nlohmann::json::array({{{"role", "user"}, {"parts", {{{"text", request.user_text}}}}}})},
      {"generationConfig",
       {{"temperature", request.decode.temperature},
        {"maxOutputTokens", request.decode.max_output_tokens},
        {"responseMimeType", "application/json"}}}};
  if (!request.system_text.empty()) {
    body["systemInstruction"] = {{"parts", {{{"text", request.system_text}}}}};
  }
  return body;
}

std::optional<std::string> gemini_response_text(std::string_view body) {
  const auto doc = nlohmann::json::parse(body, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) return std::nullopt;
  const auto candidates = doc.value("candidates", nlohmann::json::array());
  if (!candidates.is_array() || candidates.empty()) return std::nullopt;
  const auto content = candidates[0].value("content", nlohmann::json::object());
  const auto parts = content.value("parts", nlohmann::json::array());
  if (!parts.is_array()) return std::nullopt;
  std::string text;
  bool any = false;
  for (const auto& part : parts) {
    // Thinking models may emit reasoning parts flagged "thought"; skip them.
    if (part.is_object() && part.value("thought", false)) continue;
    if (part.is_object() && part.contains("text") && part["text"].is_string()) {
      text += part["text"].get<std::string>();
      any = true;
    }
  }
  if (!any) return std::nullopt;
  return text;
}

TransportReply GeminiTransport::send(const PromptRequest& request) {
  const auto idx = static_cast<std::size_t>(std::clamp(request.stage, 1, 5) - 1);
  net::HttpRequest http_request;
  http_request.method = "POST";
  http_request.url = options_.endpoint + "/models/" + options_.models[idx] + ":generateContent";
  http_request.headers.emplace_back("x-goog-api-key", options_.api_key);
  http_request.content_type = "application/json";
  http_request.body = gemini_request_body(request).dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);

  const auto response = http_->send(http_request);
  TransportReply reply;
  reply.status = response.status;
  reply.error = response.error;
  reply.error_message = response.error_message;
  if (response.ok()) {
    reply.text = gemini_response_text(response.body).value_or("");
  }
  return reply;
}

}  // namespace sdgpb::llm
