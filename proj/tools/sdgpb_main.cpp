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

#include <csignal>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <unistd.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "sdgpb/app.hpp"
#include "sdgpb/run_layout.hpp"

#ifndef SDGPB_DEFAULT_FIXTURE_DIR
#define SDGPB_DEFAULT_FIXTURE_DIR "fixtures"
#endif

namespace {

using namespace sdgpb;

pipeline::RunControl* g_control = nullptr;

extern "C" void on_sigint(int) {
  if (g_control != nullptr) g_control->request_stop();
}

struct CommonFlags {
  std::string config;
  std::string run_dir;
  std::string corpus_dir;
  std::string backend;
  std::string cache_dir;
  std::optional<int> batch_cap;
  std::optional<int> workers;
};

void add_common(CLI::App* cmd, CommonFlags& f, bool pipeline_flags) {
  cmd->add_option("-c,--config", f.config, "JSON config file")->check(CLI::ExistingFile);
  cmd->add_option("--run-dir", f.run_dir, "Run directory (overrides config)");
  cmd->add_option("--corpus-dir", f.corpus_dir, "Directory of *.tei.xml files (overrides config)");
  if (pipeline_flags) {
    cmd->add_option("--backend", f.backend, "live, record or replay (overrides config)")
        ->check(CLI::IsMember({"live", "record", "replay"}));
    cmd->add_option("--cache-dir", f.cache_dir, "Record/replay cache (default <run-dir>/llm_cache)");
    cmd->add_option("--batch-cap", f.batch_cap, "Maximum SDG-PB pairs per stage 3-5 request (default 20)");
    cmd->add_option("--workers", f.workers, "Documents processed in parallel");
  }
}

RunConfig resolve(const CommonFlags& f) {
  RunConfig c = f.config.empty() ? parse_config("{}") : load_config(f.config);
  if (!f.run_dir.empty()) c.run_dir = f.run_dir;
  if (!f.corpus_dir.empty()) c.corpus_dir = f.corpus_dir;
  if (!f.backend.empty()) c.backend = *parse_backend(f.backend);
  if (!f.cache_dir.empty()) c.cache_dir = std::filesystem::path(f.cache_dir);
  if (f.batch_cap) c.batch_cap = *f.batch_cap;
  if (f.workers) c.worker_count = *f.workers;
  validate(c);
  return c;
}

void print(const nlohmann::json& j) { std::cout << j.dump() << std::endl; }

int fail(ErrorKind kind, const std::string& message) {
  std::cerr << nlohmann::json{{"error", to_string(kind)}, {"message", message}}.dump() << std::endl;
  return app::exit_code_for(kind);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"SDG / planetary-boundary interaction mining"};
  cli.require_subcommand(1);

  CommonFlags fetch_f, ingest_f, run_f, resume_f, aggregate_f, report_f;
  auto* fetch_cmd = cli.add_subcommand("fetch", "List open-access works, download PDFs and convert them to TEI");
  add_common(fetch_cmd, fetch_f, false);
  auto* ingest_cmd = cli.add_subcommand("ingest", "Parse and prune TEI files into <run-dir>/documents.jsonl");
  add_common(ingest_cmd, ingest_f, false);
  auto* run_cmd = cli.add_subcommand("run", "Classify every document from scratch");
  add_common(run_cmd, run_f, true);
  auto* resume_cmd = cli.add_subcommand("resume", "Continue an interrupted run from its checkpoints");
  add_common(resume_cmd, resume_f, true);
  auto* aggregate_cmd = cli.add_subcommand("aggregate", "Build <run-dir>/aggregate/matrix.json from the results");
  add_common(aggregate_cmd, aggregate_f, false);
  auto* report_cmd = cli.add_subcommand("report", "Write summary.json, matrix.csv and figure1.svg");
  add_common(report_cmd, report_f, false);
  std::string report_out;
  report_cmd->add_option("--out-dir", report_out, "Output directory (default <run-dir>/report)");

  auto* validate_cmd =
      cli.add_subcommand("validate-fixtures", "Replay the bundled fixture corpus and compare against goldens");
  std::string fixtures = SDGPB_DEFAULT_FIXTURE_DIR;
  std::string work_dir;
  bool update = false;
  int validate_workers = 4;
  validate_cmd->add_option("--fixtures", fixtures, "Fixture directory")->capture_default_str();
  validate_cmd->add_option("--work-dir", work_dir, "Scratch run directory (default: a temporary directory)");
  validate_cmd->add_option("--workers", validate_workers, "Documents processed in parallel")->capture_default_str();
  validate_cmd->add_flag("--update", update, "Rewrite the goldens instead of comparing");
  std::string validate_log;
  validate_cmd->add_option("--log", validate_log, "Event log file (default: none)");

  CLI11_PARSE(cli, argc, argv);

  try {
    if (*validate_cmd) {
      const auto work = work_dir.empty()
                            ? std::filesystem::temp_directory_path() / ("sdgpb-validate-" + std::to_string(::getpid()))
                            : std::filesystem::path(work_dir);
      std::optional<EventLog> file_log;
      if (!validate_log.empty()) file_log.emplace(std::filesystem::path(validate_log));
      EventLog& log = file_log ? *file_log : EventLog::discard();
      const auto mismatched = app::validate_fixtures(fixtures, work, update, log, validate_workers);
      if (work_dir.empty()) std::filesystem::remove_all(work);
      print({{"golden_files", app::golden_files().size()}, {"mismatched", mismatched}, {"updated", update}});
      if (!mismatched.empty()) return fail(ErrorKind::GoldenMismatch, "outputs differ from goldens");
      return app::kExitOk;
    }

    CLI::App* active = cli.get_subcommands().front();
    const std::string name = active->get_name();
    const CommonFlags& flags = name == "fetch"       ? fetch_f
                               : name == "ingest"    ? ingest_f
                               : name == "run"       ? run_f
                               : name == "resume"    ? resume_f
                               : name == "aggregate" ? aggregate_f
                                                     : report_f;
    const auto config = resolve(flags);
    EventLog log(RunLayout{config.run_dir}.events());

    if (name == "fetch") {
      const auto http = net::make_http_client();
      const auto s = app::fetch(config, *http, log);
      print({{"works", s.works}, {"converted", s.converted}, {"failed", s.failed}});
    } else if (name == "ingest") {
      const auto r = app::ingest(config, log);
      print({{"documents", r.documents.size()}, {"skipped", r.skipped.size()}});
    } else if (name == "run" || name == "resume") {
      pipeline::RunControl control;
      g_control = &control;
      std::signal(SIGINT, on_sigint);
      const auto s = app::run_pipeline(config, name == "resume", log, &control);
      g_control = nullptr;
      print({{"complete", s.complete}, {"failed", s.failed}, {"skipped", s.skipped}, {"interrupted", s.interrupted}});
      if (s.interrupted) return fail(ErrorKind::Interrupted, "stopped; continue with `resume`");
      if (s.backend_failure) return fail(ErrorKind::BackendError, "some documents failed for backend reasons");
    } else if (name == "aggregate") {
      const auto m = app::aggregate(config, log);
      print({{"documents", m.total_docs}, {"records", m.total_records}});
    } else {
      app::report(config, log, report_out);
      print({{"report", report_out.empty() ? (RunLayout{config.run_dir}.report_dir()).string() : report_out}});
    }
    return app::kExitOk;
  } catch (const Error& e) {
    return fail(e.kind(), e.what());
  } catch (const std::exception& e) {
    std::cerr << nlohmann::json{{"error", "Internal"}, {"message", e.what()}}.dump() << std::endl;
    return 1;
  }
}
