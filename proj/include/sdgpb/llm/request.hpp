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

#include <cstdint>
#include <string>
#include <string_view>

#include "sdgpb/hash.hpp"

namespace sdgpb::llm {

struct DecodeParams {
  double temperature = 0.0;
  int max_output_tokens = 8192;

  bool operator==(const DecodeParams&) const = default;
};

// One stage-tagged completion request. `payload_digest` is the record/replay
// key and is always equal to record_key(*this); build requests with
// make_request to keep it in sync.
struct PromptRequest {
  int stage = 1;
  std::string doc_id;
  std::string system_text;
  std::string user_text;
  DecodeParams decode;
  Digest payload_digest{};
};

struct RawResponse {
  std::string text;
  std::string backend_id;
  std::int64_t latency_ms = 0;
  int attempt_count = 1;
};

// Lines between these markers list SDG-PB pairs, one per line. Their order is
// not part of a request's identity.
inline constexpr std::string_view kPairBlockBegin = "[pairs]";
inline constexpr std::string_view kPairBlockEnd = "[/pairs]";

// Sorts every pair block ascending by the (SDG, PB) numbers found on each
// line; everything else is left byte-for-byte intact.
std::string canonicalize_user_text(std::string_view user_text);

// SHA-256 over stage, doc_id and the canonical user text.
Digest record_key(const PromptRequest& request);

PromptRequest make_request(int stage, std::string doc_id, std::string system_text,
                           std::string user_text, DecodeParams decode);

}  // namespace sdgpb::llm
