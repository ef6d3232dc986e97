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
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>

namespace sdgpb {

enum class Backend { Live, Record, Replay };

std::string_view to_string(Backend b);
std::optional<Backend> parse_backend(std::string_view text);

// Run configuration. The file is one JSON object; every key is optional and
// unknown keys are rejected. Relative paths resolve against the file's
// directory. The API key is read from SDGPB_API_KEY only.
//
//   {
//     "corpus_dir": "corpus",             // *.tei.xml input
//     "run_dir": "run",
//     "backend": "replay",                // live | record | replay
//     "cache_dir": null,                  // default <run_dir>/llm_cache
//     "template_dir": null,               // default: built-in templates
//     "catalog": null,                    // default: built-in catalog
//     "llm": {
//       "endpoint": "https://generativelanguage.googleapis.com/v1beta",
//       "models": ["m1", "m2", "m3", "m4", "m5"],   // per stage
//       "temperature": 0,
//       "max_output_tokens": [2048, 2048, 16384, 8192, 16384],
//       "context_budget_tokens": 1000000,
//       "rpm_limit": 60,
//       "retry_budget": 4,
//       "base_delay_ms": 1000,
//       "max_delay_ms": 60000,
//       "jitter": 0.5,
//       "timeout_s": 120
//     },
//     "pipeline": {"batch_cap": 20, "worker_count": 4},
//     "fetch": {
//       "base_url": "https://api.openalex.org",
//       "query": "sustainable development goals planetary boundaries",
//       "filters": {"type": "article"},
//       "per_page": 200,
//       "max_works": 1000,
//       "mailto": "",
//       "extraction_url": "http://localhost:8070",
//       "pdf_dir": null                   // default <run_dir>/pdf
//     }
//   }
struct LlmConfig {
  std::string endpoint = "https://generativelanguage.googleapis.com/v1beta";
  std::array<std::string, 5> models = {"gemini-1.5-flash", "gemini-1.5-flash", "gemini-1.5-flash",
                                       "gemini-1.5-flash", "gemini-2.0-flash-thinking-exp"};
  double temperature = 0.0;
  std::array<int, 5> max_output_tokens = {2048, 2048, 16384, 8192, 16384};
  std::int64_t context_budget_tokens = 1'000'000;
  int rpm_limit = 60;
  int retry_budget = 4;
  std::int64_t base_delay_ms = 1000;
  std::int64_t max_delay_ms = 60'000;
  double jitter = 0.5;
  int timeout_s = 120;
};

struct FetchConfig {
  std::string base_url = "https://api.openalex.org";
  std::string query = "sustainable development goals planetary boundaries";
  std::map<std::string, std::string> filters;
  int per_page = 200;
  int max_works = 1000;
  std::string mailto;
  std::string extraction_url = "http://localhost:8070";
  std::optional<std::filesystem::path> pdf_dir;
};

struct RunConfig {
  std::filesystem::path corpus_dir = "corpus";
  std::filesystem::path run_dir = "run";
  Backend backend = Backend::Replay;
  std::optional<std::filesystem::path> cache_dir;
  std::optional<std::filesystem::path> template_dir;
  std::optional<std::filesystem::path> catalog;
  LlmConfig llm;
  int batch_cap = 20;
  int worker_count = 4;
  FetchConfig fetch;
  std::string api_key;  // from the environment

  std::filesystem::path effective_cache_dir() const;
};

// Throws ConfigError.
RunConfig parse_config(std::string_view json_text, const std::filesystem::path& base_dir = ".");
RunConfig load_config(const std::filesystem::path& path);
// Checks ranges (batch_cap >= 1, worker_count >= 1, ...). Throws ConfigError.
void validate(const RunConfig& config);

}  // namespace sdgpb
