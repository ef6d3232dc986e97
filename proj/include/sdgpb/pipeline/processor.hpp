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
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "sdgpb/corpus/tei.hpp"
#include "sdgpb/llm/gateway.hpp"
#include "sdgpb/log.hpp"
#include "sdgpb/pipeline/checkpoint.hpp"
#include "sdgpb/pipeline/prompts.hpp"
#include "sdgpb/pipeline/types.hpp"
#include "sdgpb/run_layout.hpp"

namespace sdgpb::pipeline {

struct PipelineOptions {
  int batch_cap = 20;
  int worker_count = 1;
};

// Cooperative cancellation. The stop flag is checked before each stage;
// `on_stage_complete` runs after every checkpoint write.
class RunControl {
 public:
  void request_stop() { stop_.store(true); }
  bool stop_requested() const { return stop_.load(); }

  std::function<void(const std::string& doc_id, int stage)> on_stage_complete;

 private:
  std::atomic<bool> stop_{false};
};

// True when the whitespace-normalized quote occurs in `normalized_body`.
bool evidence_supported(std::string_view normalized_body, std::string_view quote);

// Runs the five stages for one document, resuming from its checkpoint.
//
// Reply defects get a repair reprompt, then one full retry of the original
// request, then fail the document at that stage. Backend failures fail the
// document at once; an over-budget prompt skips it. A stop request raises
// Interrupted and leaves the checkpoint at the last finished stage.
class DocumentProcessor {
 public:
  DocumentProcessor(const PromptBuilder& prompts, llm::Gateway& gateway, CheckpointStore& checkpoints,
                    PipelineOptions options = {}, EventLog& log = EventLog::discard(),
                    RunControl* control = nullptr);

  // Throws TemplateVersionMismatch when the checkpoint came from other
  // templates, and Interrupted on a stop request.
  DocumentResult process(const corpus::CleanDocument& doc);

 private:
  const PromptBuilder& prompts_;
  llm::Gateway& gateway_;
  CheckpointStore& checkpoints_;
  PipelineOptions options_;
  EventLog& log_;
  RunControl* control_;
};

struct RunOutcome {
  std::vector<DocumentResult> results;  // sorted by doc_id
  bool interrupted = false;
};

// Processes documents on `options.worker_count` threads.
RunOutcome process_documents(const std::vector<corpus::CleanDocument>& docs, DocumentProcessor& processor,
                             int worker_count, RunControl* control = nullptr);

// Fresh run: clears checkpoints and results under the run directory, then
// processes everything. Results are written only if the run finished.
RunOutcome run(const std::vector<corpus::CleanDocument>& docs, const RunLayout& layout,
               const PromptBuilder& prompts, llm::Gateway& gateway, PipelineOptions options = {},
               EventLog& log = EventLog::discard(), RunControl* control = nullptr);

// Continues from existing checkpoints. Throws TemplateVersionMismatch if any
// checkpoint was written with different templates.
RunOutcome resume(const std::vector<corpus::CleanDocument>& docs, const RunLayout& layout,
                  const PromptBuilder& prompts, llm::Gateway& gateway, PipelineOptions options = {},
                  EventLog& log = EventLog::discard(), RunControl* control = nullptr);

}  // namespace sdgpb::pipeline
