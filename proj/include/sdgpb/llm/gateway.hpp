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

#include <array>
#include <atomic>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "sdgpb/clock.hpp"
#include "sdgpb/llm/rate_limiter.hpp"
#include "sdgpb/llm/request.hpp"
#include "sdgpb/log.hpp"
#include "sdgpb/net/backoff.hpp"
#include "sdgpb/net/http.hpp"

namespace sdgpb::llm {

// Uniform completion interface used by the pipeline. Implementations are safe
// for concurrent use.
class Gateway {
 public:
  virtual ~Gateway() = default;
  // Throws BackendFailure (RateLimited, Timeout, BackendError, ReplayMiss).
  virtual RawResponse complete(const PromptRequest& request) = 0;
};

struct TransportReply {
  int status = 0;
  std::string text;
  net::TransportError error = net::TransportError::None;
  std::string error_message;
};

// One raw dispatch to a completion backend, no retries.
class CompletionTransport {
 public:
  virtual ~CompletionTransport() = default;
  virtual TransportReply send(const PromptRequest& request) = 0;
  virtual std::string backend_id(int stage) const = 0;
};

// Live gateway: rate limiting plus exponential backoff with jitter on 429,
// 5xx, timeouts and connection errors. Each attempt is logged.
class LiveGateway final : public Gateway {
 public:
  LiveGateway(std::shared_ptr<CompletionTransport> transport, net::RetryPolicy policy,
              std::shared_ptr<RateLimiter> limiter, Clock& clock = SystemClock::instance(),
              EventLog& log = EventLog::discard());

  RawResponse complete(const PromptRequest& request) override;

  std::uint64_t dispatched() const { return dispatched_.load(); }

 private:
  std::shared_ptr<CompletionTransport> transport_;
  net::RetryPolicy policy_;
  std::shared_ptr<RateLimiter> limiter_;
  Clock& clock_;
  EventLog& log_;
  std::atomic<std::uint64_t> dispatched_{0};
};

// Recording format: one JSON object per line in <cache_dir>/<doc>.jsonl:
//   {"key": <hex>, "stage": n, "doc_id": ..., "occurrence": k,
//    "text": ..., "backend_id": ..., "attempt_count": n}
// `occurrence` counts how many times the same key was requested before in
// the recording session, so repeated requests replay in order.
struct RecordedEntry {
  std::string key;
  int stage = 0;
  std::string doc_id;
  int occurrence = 0;
  std::string text;
  std::string backend_id;
  int attempt_count = 1;
};

class RecordStore {
 public:
  explicit RecordStore(std::filesystem::path dir);

  // Loads every *.jsonl file in the directory; a missing directory is empty.
  void load();
  // Entry for (key, occurrence), or the last recorded occurrence below it.
  std::optional<RecordedEntry> find(const std::string& key, int occurrence) const;
  void append(const RecordedEntry& entry);

  std::size_t size() const;
  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path dir_;
  mutable std::mutex mutex_;
  std::map<std::string, std::vector<RecordedEntry>> by_key_;
};

// Passes requests to a live gateway and persists every reply.
class RecordingGateway final : public Gateway {
 public:
  RecordingGateway(std::unique_ptr<Gateway> inner, std::filesystem::path cache_dir);
  RawResponse complete(const PromptRequest& request) override;

 private:
  std::unique_ptr<Gateway> inner_;
  RecordStore store_;
  std::mutex mutex_;
  std::map<std::string, int> occurrences_;
};

// Serves recorded replies only; performs no network activity. An unknown key
// throws ReplayMiss.
class ReplayGateway final : public Gateway {
 public:
  explicit ReplayGateway(std::filesystem::path cache_dir);
  RawResponse complete(const PromptRequest& request) override;

  std::size_t recorded() const { return store_.size(); }

 private:
  RecordStore store_;
  std::mutex mutex_;
  std::map<std::string, int> occurrences_;
};

std::unique_ptr<Gateway> record_session(const std::filesystem::path& cache_dir,
                                        std::unique_ptr<Gateway> live);
std::unique_ptr<Gateway> replay_session(const std::filesystem::path& cache_dir);

// Gemini generateContent transport.
struct GeminiOptions {
  std::string endpoint = "https://generativelanguage.googleapis.com/v1beta";
  std::array<std::string, 5> models = {"gemini-1.5-flash", "gemini-1.5-flash", "gemini-1.5-flash",
                                       "gemini-1.5-flash", "gemini-2.0-flash-thinking-exp"};
  std::string api_key;
};

class GeminiTransport final : public CompletionTransport {
 public:
  GeminiTransport(std::shared_ptr<net::HttpClient> http, GeminiOptions options);

  TransportReply send(const PromptRequest& request) override;
  std::string backend_id(int stage) const override;

 private:
  std::shared_ptr<net::HttpClient> http_;
  GeminiOptions options_;
};

nlohmann::json gemini_request_body(const PromptRequest& request);
// Concatenated text parts of the first candidate; nullopt if absent.
std::optional<std::string> gemini_response_text(std::string_view body);

}  // namespace sdgpb::llm
