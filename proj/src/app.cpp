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

#include "sdgpb/app.hpp"

#include <chrono>

#include "sdgpb/corpus/works.hpp"
#include "sdgpb/io.hpp"
#include "sdgpb/pipeline/results.hpp"
#include "sdgpb/report/figure.hpp"
#include "sdgpb/report/tables.hpp"
#include "sdgpb/run_layout.hpp"

namespace sdgpb::app {

namespace {

Catalog load_catalog(const RunConfig& config) {
  return config.catalog ? Catalog::load(*config.catalog) : Catalog::builtin();
}

pipeline::TemplateSet load_templates(const RunConfig& config) {
  return config.template_dir ? pipeline::TemplateSet::load(*config.template_dir)
                             : pipeline::TemplateSet::builtin();
}

pipeline::PromptSettings prompt_settings(const RunConfig& config) {
  pipeline::PromptSettings s;
  s.context_budget_tokens = config.llm.context_budget_tokens;
  s.temperature = config.llm.temperature;
  s.max_output_tokens = config.llm.max_output_tokens;
  return s;
}

bool is_backend_reason(const std::string& reason) {
  for (const auto kind : {ErrorKind::RateLimited, ErrorKind::Timeout, ErrorKind::BackendError, ErrorKind::ReplayMiss})
    if (reason == to_string(kind)) return true;
  return false;
}

std::string work_stem(const std::string& work_id) {
  const auto slash = work_id.find_last_of('/');
  return io::safe_file_stem(slash == std::string::npos ? work_id : work_id.substr(slash + 1));
}

}  // namespace

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ConfigError:
    case ErrorKind::TemplateError:
    case ErrorKind::TemplateVersionMismatch: return kExitConfig;
    case ErrorKind::MissingInput:
    case ErrorKind::EmptyMatrix:
    case ErrorKind::EmptyDocument:
    case ErrorKind::MalformedXml:
    case ErrorKind::NotTei:
    case ErrorKind::ZeroCorpus:
    case ErrorKind::DuplicateRecord:
    case ErrorKind::OutOfRange: return kExitInput;
    case ErrorKind::HttpFailure:
    case ErrorKind::InvalidCursor:
    case ErrorKind::QuotaExceeded:
    case ErrorKind::RateLimited:
    case ErrorKind::Timeout:
    case ErrorKind::BackendError:
    case ErrorKind::ReplayMiss: return kExitBackend;
    case ErrorKind::GoldenMismatch: return kExitGolden;
    case ErrorKind::Interrupted: return kExitInterrupted;
    default: return 1;
  }
}

FetchSummary fetch(const RunConfig& config, net::HttpClient& http, EventLog& log) {
  corpus::WorksClientOptions options;
  options.base_url = config.fetch.base_url;
  options.per_page = config.fetch.per_page;
  options.mailto = config.fetch.mailto;
  options.retry.retry_budget = config.llm.retry_budget;
  corpus::WorksClient client(http, options);

  std::vector<corpus::WorkRecord> works;
  std::optional<std::string> cursor;
  do {
    auto page = client.fetch_works(config.fetch.query, config.fetch.filters, cursor);
    for (auto& w : page.works) {
      if (static_cast<int>(works.size()) >= config.fetch.max_works) break;
      works.push_back(std::move(w));
    }
    cursor = page.next_cursor;
    log.emit("works_page", {{"total", works.size()}});
  } while (cursor && static_cast<int>(works.size()) < config.fetch.max_works);

  const RunLayout layout{config.run_dir};
  corpus::write_manifest(layout.root / "manifest.jsonl", works);

  const auto pdf_dir = config.fetch.pdf_dir ? *config.fetch.pdf_dir : layout.root / "pdf";
  std::filesystem::create_directories(pdf_dir);
  std::filesystem::create_directories(config.corpus_dir);
  corpus::ExtractionClient extraction(http, config.fetch.extraction_url);
  FetchSummary summary;
  summary.works = static_cast<int>(works.size());
  for (const auto& w : works) {
    if (!w.open_access_url) continue;
    const auto stem = work_stem(w.work_id);
    const auto tei_path = config.corpus_dir / (stem + ".tei.xml");
    if (std::filesystem::exists(tei_path)) {
      ++summary.converted;
      continue;
    }
    try {
      const auto pdf = corpus::download(http, *w.open_access_url);
      io::write_file_atomic(pdf_dir / (stem + ".pdf"), pdf);
      io::write_file_atomic(tei_path, extraction.pdf_to_tei(pdf, stem + ".pdf"));
      ++summary.converted;
    } catch (const Error& e) {
      ++summary.failed;
      log.emit("fetch_failed", {{"work_id", w.work_id}, {"kind", e.kind_name()}, {"message", e.what()}});
    }
  }
  return summary;
}

corpus::IngestResult ingest(const RunConfig& config, EventLog& log) {
  if (!std::filesystem::is_directory(config.corpus_dir))
    throw Error(ErrorKind::MissingInput, "corpus directory " + config.corpus_dir.string() + " does not exist");
  auto result = corpus::ingest_directory(config.corpus_dir);
  for (const auto& skip : result.skipped)
    log.emit("document_skipped", {{"doc_id", skip.doc_id}, {"reason", skip.reason}});
  if (result.documents.empty())
    throw Error(ErrorKind::MissingInput, "no usable documents in " + config.corpus_dir.string());
  corpus::write_documents(RunLayout{config.run_dir}.documents(), result.documents);
  log.emit("ingest_complete", {{"documents", result.documents.size()}, {"skipped", result.skipped.size()}});
  return result;
}

std::vector<corpus::CleanDocument> load_or_ingest(const RunConfig& config, EventLog& log) {
  const auto path = RunLayout{config.run_dir}.documents();
  if (std::filesystem::exists(path)) return corpus::read_documents(path);
  return ingest(config, log).documents;
}

std::unique_ptr<llm::Gateway> make_gateway(const RunConfig& config, EventLog& log,
                                           std::shared_ptr<net::HttpClient> http) {
  const auto cache = config.effective_cache_dir();
  if (config.backend == Backend::Replay) {
    if (!std::filesystem::is_directory(cache))
      throw Error(ErrorKind::ConfigError, "replay backend needs an existing cache at " + cache.string());
    return llm::replay_session(cache);
  }
  if (config.api_key.empty()) throw Error(ErrorKind::ConfigError, "SDGPB_API_KEY is not set");
  net::HttpClientOptions http_options;
  http_options.read_timeout = std::chrono::seconds(config.llm.timeout_s);
  if (!http) http = net::make_http_client(http_options);
  llm::GeminiOptions gemini;
  gemini.endpoint = config.llm.endpoint;
  gemini.models = config.llm.models;
  gemini.api_key = config.api_key;
  net::RetryPolicy policy;
  policy.retry_budget = config.llm.retry_budget;
  policy.base_delay = std::chrono::milliseconds(config.llm.base_delay_ms);
  policy.max_delay = std::chrono::milliseconds(config.llm.max_delay_ms);
  policy.jitter = config.llm.jitter;
  auto live = std::make_unique<llm::LiveGateway>(
      std::make_shared<llm::GeminiTransport>(http, gemini), policy,
      std::make_shared<llm::RateLimiter>(config.llm.rpm_limit, SystemClock::instance()), SystemClock::instance(), log);
  if (config.backend == Backend::Record) return llm::record_session(cache, std::move(live));
  return live;
}

RunSummary run_pipeline(const RunConfig& config, bool resume, EventLog& log, pipeline::RunControl* control,
                        llm::Gateway* gateway) {
  const auto docs = load_or_ingest(config, log);
  const auto catalog = load_catalog(config);
  const pipeline::PromptBuilder prompts(load_templates(config), catalog, prompt_settings(config));
  std::unique_ptr<llm::Gateway> owned;
  if (gateway == nullptr) {
    owned = make_gateway(config, log);
    gateway = owned.get();
  }
  const RunLayout layout{config.run_dir};
  const pipeline::PipelineOptions options{config.batch_cap, config.worker_count};
  const auto outcome = resume ? pipeline::resume(docs, layout, prompts, *gateway, options, log, control)
                              : pipeline::run(docs, layout, prompts, *gateway, options, log, control);
  RunSummary summary;
  summary.interrupted = outcome.interrupted;
  for (const auto& r : outcome.results) {
    switch (r.status.state) {
      case pipeline::DocState::Complete: ++summary.complete; break;
      case pipeline::DocState::Failed:
        ++summary.failed;
        if (is_backend_reason(r.status.reason)) summary.backend_failure = true;
        break;
      case pipeline::DocState::Skipped: ++summary.skipped; break;
    }
  }
  return summary;
}

analytics::InteractionMatrix aggregate(const RunConfig& config, EventLog& log) {
  const RunLayout layout{config.run_dir};
  if (!std::filesystem::exists(layout.results()))
    throw Error(ErrorKind::MissingInput, "no results at " + layout.results().string());
  const auto results = pipeline::read_results(layout.results());
  const auto flat = analytics::flatten(results);
  const auto matrix = analytics::build_matrix(flat.records, flat.total_docs);
  if (matrix.total_records == 0) throw Error(ErrorKind::EmptyMatrix, "results hold no interaction records");
  io::write_file_atomic(layout.matrix(), analytics::to_json(matrix).dump(2) + "\n");
  log.emit("aggregate_complete", {{"documents", matrix.total_docs}, {"records", matrix.total_records}});
  return matrix;
}

void report(const RunConfig& config, EventLog& log, const std::filesystem::path& out_dir) {
  const RunLayout layout{config.run_dir};
  const auto dir = out_dir.empty() ? layout.report_dir() : out_dir;
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(io::read_file(layout.matrix()));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::MissingInput, std::string("bad matrix file: ") + e.what());
  }
  const auto matrix = analytics::matrix_from_json(j);
  const auto catalog = load_catalog(config);
  const auto svg = report::render_svg(report::figure_spec(matrix, catalog));
  io::write_file_atomic(dir / "summary.json", report::emit_summary_json(matrix, catalog));
  io::write_file_atomic(dir / "matrix.csv", report::emit_matrix_csv(matrix));
  io::write_file_atomic(dir / "figure1.svg", svg);
  log.emit("report_complete", {{"dir", dir.string()}});
}

std::vector<GoldenFile> golden_files() {
  return {{"documents.jsonl", "documents.jsonl"},
          {"results.jsonl", "results/results.jsonl"},
          {"matrix.json", "aggregate/matrix.json"},
          {"summary.json", "report/summary.json"},
          {"matrix.csv", "report/matrix.csv"},
          {"figure1.svg", "report/figure1.svg"}};
}

std::vector<std::string> validate_fixtures(const std::filesystem::path& fixture_dir,
                                           const std::filesystem::path& work_dir, bool update, EventLog& log,
                                           int worker_count) {
  RunConfig config;
  config.corpus_dir = fixture_dir / "corpus";
  config.run_dir = work_dir;
  config.backend = Backend::Replay;
  config.cache_dir = fixture_dir / "llm_cache";
  config.worker_count = worker_count;
  std::filesystem::remove_all(work_dir);
  ingest(config, log);
  run_pipeline(config, false, log);
  aggregate(config, log);
  report(config, log);

  std::vector<std::string> mismatched;
  const auto golden = fixture_dir / "golden";
  for (const auto& g : golden_files()) {
    const auto produced = io::read_file(work_dir / g.run_relative);
    if (update) {
      io::write_file_atomic(golden / g.name, produced);
      continue;
    }
    const auto expected_path = golden / g.name;
    if (!std::filesystem::exists(expected_path) || io::read_file(expected_path) != produced) {
      mismatched.push_back(g.name);
      log.emit("golden_mismatch", {{"file", g.name}});
    }
  }
  return mismatched;
}

}  // namespace sdgpb::app
