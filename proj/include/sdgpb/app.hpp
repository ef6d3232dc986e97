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
#include <memory>
#include <string>
#include <vector>

#include "sdgpb/analytics/matrix.hpp"
#include "sdgpb/config.hpp"
#include "sdgpb/corpus/tei.hpp"
#include "sdgpb/error.hpp"
#include "sdgpb/llm/gateway.hpp"
#include "sdgpb/log.hpp"
#include "sdgpb/net/http.hpp"
#include "sdgpb/pipeline/processor.hpp"

// The subcommands as library calls. The CLI only parses flags and maps
// errors to exit codes.
namespace sdgpb::app {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitInput = 3;
inline constexpr int kExitBackend = 4;
inline constexpr int kExitGolden = 5;
inline constexpr int kExitInterrupted = 130;

int exit_code_for(ErrorKind kind);

struct FetchSummary {
  int works = 0;
  int converted = 0;
  int failed = 0;
};

// Lists works, downloads their PDFs and converts them to TEI in corpus_dir.
// Writes <run_dir>/manifest.jsonl.
FetchSummary fetch(const RunConfig& config, net::HttpClient& http, EventLog& log);

// Parses and prunes corpus_dir into <run_dir>/documents.jsonl. Throws
// MissingInput when no document survives.
corpus::IngestResult ingest(const RunConfig& config, EventLog& log);

// <run_dir>/documents.jsonl, ingesting first when it does not exist.
std::vector<corpus::CleanDocument> load_or_ingest(const RunConfig& config, EventLog& log);

// Gateway for the configured backend. Replay requires an existing cache
// directory; live and record require an API key (ConfigError). `http`
// replaces the default HTTPS client for live calls.
std::unique_ptr<llm::Gateway> make_gateway(const RunConfig& config, EventLog& log,
                                           std::shared_ptr<net::HttpClient> http = nullptr);

struct RunSummary {
  int complete = 0;
  int failed = 0;
  int skipped = 0;
  bool backend_failure = false;  // some document failed for a backend reason
  bool interrupted = false;
};

// Runs or resumes the pipeline over the run directory. `gateway` overrides
// the configured backend when given.
RunSummary run_pipeline(const RunConfig& config, bool resume, EventLog& log, pipeline::RunControl* control = nullptr,
                        llm::Gateway* gateway = nullptr);

// Results -> <run_dir>/aggregate/matrix.json. Throws EmptyMatrix.
analytics::InteractionMatrix aggregate(const RunConfig& config, EventLog& log);

// matrix.json -> summary.json, matrix.csv and figure1.svg in `out_dir`
// (default <run_dir>/report).
void report(const RunConfig& config, EventLog& log, const std::filesystem::path& out_dir = {});

// Files compared by validate_fixtures, relative to the fixture golden
// directory, with their location inside a run directory.
struct GoldenFile {
  std::string name;
  std::filesystem::path run_relative;
};
std::vector<GoldenFile> golden_files();

// Replays the fixture corpus (<fixtures>/corpus, <fixtures>/llm_cache) in
// `work_dir` and diffs every golden. With `update`, rewrites the goldens
// instead. Returns the names of mismatching files.
std::vector<std::string> validate_fixtures(const std::filesystem::path& fixture_dir,
                                           const std::filesystem::path& work_dir, bool update,
                                           EventLog& log = EventLog::discard(), int worker_count = 4);

}  // namespace sdgpb::app
