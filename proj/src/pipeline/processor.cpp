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

#include "sdgpb/pipeline/processor.hpp"

#include <algorithm>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <thread>

#include "sdgpb/error.hpp"
#include "sdgpb/pipeline/batching.hpp"
#include "sdgpb/pipeline/responses.hpp"
#include "sdgpb/pipeline/results.hpp"

namespace sdgpb::pipeline {

namespace {

using nlohmann::json;

struct Progress {
  std::vector<SdgId> sdgs;
  std::vector<PbId> pbs;
  std::vector<PairVerdict> verdicts;
  std::map<SdgPbPair, Direction> directions;
  std::map<SdgPbPair, RefinedLabel> refined;
};

json pair_json(const SdgPbPair& p) { return {{"sdg", p.sdg.value()}, {"pb", p.pb.value()}}; }

SdgPbPair pair_from(const json& j) { return {SdgId(j.at("sdg").get<int>()), PbId(j.at("pb").get<int>())}; }

json stage_payload(int stage, const Progress& p) {
  json out = json::object();
  switch (stage) {
    case 1: {
      json ids = json::array();
      for (const auto& s : p.sdgs) ids.push_back(s.value());
      out["sdgs"] = ids;
      break;
    }
    case 2: {
      json ids = json::array();
      for (const auto& b : p.pbs) ids.push_back(b.value());
      out["pbs"] = ids;
      break;
    }
    case 3: {
      json rows = json::array();
      for (const auto& v : p.verdicts) {
        auto row = pair_json(v.pair);
        row["category"] = to_string(v.category);
        row["justification"] = v.justification;
        row["evidence_quote"] = v.evidence_quote;
        rows.push_back(row);
      }
      out["verdicts"] = rows;
      break;
    }
    case 4: {
      json rows = json::array();
      for (const auto& [pair, d] : p.directions) {
        auto row = pair_json(pair);
        row["direction"] = to_string(d);
        rows.push_back(row);
      }
      out["directions"] = rows;
      break;
    }
    case 5: {
      json rows = json::array();
      for (const auto& [pair, l] : p.refined) {
        auto row = pair_json(pair);
        row["label"] = to_string(l);
        rows.push_back(row);
      }
      out["refined"] = rows;
      break;
    }
    default: throw std::logic_error("bad stage");
  }
  return out;
}

Progress restore(const Checkpoint& cp) {
  Progress p;
  const auto& pl = cp.payloads;
  auto payload = [&](int stage) -> const json& { return pl.at(std::to_string(stage)); };
  try {
    if (cp.last_completed_stage >= 1)
      for (const auto& id : payload(1).at("sdgs")) p.sdgs.emplace_back(id.get<int>());
    if (cp.last_completed_stage >= 2)
      for (const auto& id : payload(2).at("pbs")) p.pbs.emplace_back(id.get<int>());
    if (cp.last_completed_stage >= 3)
      for (const auto& row : payload(3).at("verdicts")) {
        const auto category = parse_category(row.at("category").get<std::string>());
        if (!category) throw std::runtime_error("bad category");
        p.verdicts.push_back({pair_from(row), *category, row.at("justification").get<std::string>(),
                              row.at("evidence_quote").get<std::string>()});
      }
    if (cp.last_completed_stage >= 4)
      for (const auto& row : payload(4).at("directions")) {
        const auto d = parse_direction(row.at("direction").get<std::string>());
        if (!d) throw std::runtime_error("bad direction");
        p.directions[pair_from(row)] = *d;
      }
    if (cp.last_completed_stage >= 5)
      for (const auto& row : payload(5).at("refined")) {
        const auto l = parse_refined_label(row.at("label").get<std::string>());
        if (!l) throw std::runtime_error("bad label");
        p.refined[pair_from(row)] = *l;
      }
  } catch (const std::exception& e) {
    throw Error(ErrorKind::MissingInput, "corrupt checkpoint for " + cp.doc_id + ": " + e.what());
  }
  return p;
}

std::vector<PairVerdict> linked(const std::vector<PairVerdict>& verdicts) {
  std::vector<PairVerdict> out;
  for (const auto& v : verdicts)
    if (v.category != Category::Neutral) out.push_back(v);
  return out;
}

std::vector<SdgPbPair> pairs_of(const std::vector<PairVerdict>& batch) {
  std::vector<SdgPbPair> out;
  out.reserve(batch.size());
  for (const auto& v : batch) out.push_back(v.pair);
  return out;
}

}  // namespace

bool evidence_supported(std::string_view normalized_body, std::string_view quote) {
  const auto q = corpus::normalize_whitespace(quote);
  return !q.empty() && normalized_body.find(q) != std::string_view::npos;
}

DocumentProcessor::DocumentProcessor(const PromptBuilder& prompts, llm::Gateway& gateway,
                                     CheckpointStore& checkpoints, PipelineOptions options, EventLog& log,
                                     RunControl* control)
    : prompts_(prompts), gateway_(gateway), checkpoints_(checkpoints), options_(options), log_(log),
      control_(control) {
  if (options_.batch_cap < 1) throw std::invalid_argument("batch cap must be at least 1");
}

DocumentResult DocumentProcessor::process(const corpus::CleanDocument& doc) {
  const auto& version = prompts_.template_version();
  Checkpoint cp{doc.doc_id, 0, version, json::object()};
  if (auto existing = checkpoints_.load(doc.doc_id)) {
    if (existing->template_version != version)
      throw Error(ErrorKind::TemplateVersionMismatch,
                  doc.doc_id + ": checkpoint has " + existing->template_version + ", templates are " + version);
    cp = std::move(*existing);
  }
  Progress p = restore(cp);
  const auto body = corpus::normalize_whitespace(doc.body_text);

  // Reply defects: repair reprompt, then a full retry of the original.
  auto ask = [&](const llm::PromptRequest& request, auto parse) {
    const auto first = gateway_.complete(request);
    try {
      return parse(first);
    } catch (const ResponseError& e) {
      log_.emit("reply_rejected", {{"doc_id", doc.doc_id}, {"stage", request.stage}, {"attempt", "original"},
                                   {"kind", e.kind_name()}, {"message", e.what()}});
      const auto fixed = gateway_.complete(prompts_.repair(request, e.what(), first.text));
      try {
        return parse(fixed);
      } catch (const ResponseError& e2) {
        log_.emit("reply_rejected", {{"doc_id", doc.doc_id}, {"stage", request.stage}, {"attempt", "repair"},
                                     {"kind", e2.kind_name()}, {"message", e2.what()}});
        return parse(gateway_.complete(request));
      }
    }
  };

  auto run_stage = [&](int stage) {
    switch (stage) {
      case 1: {
        const auto ids = ask(prompts_.allocation(doc, Axis::Sdg),
                             [](const llm::RawResponse& r) { return parse_allocation(r, Axis::Sdg); });
        p.sdgs.clear();
        for (const int id : ids) p.sdgs.emplace_back(id);
        break;
      }
      case 2: {
        const auto ids = ask(prompts_.allocation(doc, Axis::Pb),
                             [](const llm::RawResponse& r) { return parse_allocation(r, Axis::Pb); });
        p.pbs.clear();
        for (const int id : ids) p.pbs.emplace_back(id);
        break;
      }
      case 3: {
        p.verdicts.clear();
        for (const auto& batch : chunk_pairs(pair_candidates(p.sdgs, p.pbs), options_.batch_cap)) {
          auto verdicts = ask(prompts_.relationship(doc, batch),
                              [&](const llm::RawResponse& r) { return parse_relationship(r, batch); });
          for (auto& v : verdicts) {
            if (v.category != Category::Neutral && !evidence_supported(body, v.evidence_quote)) {
              log_.emit("evidence_downgrade", {{"doc_id", doc.doc_id},
                                               {"pair", to_string(v.pair)},
                                               {"category", to_string(v.category)},
                                               {"evidence_quote", v.evidence_quote}});
              v.category = Category::Neutral;
            }
            p.verdicts.push_back(std::move(v));
          }
        }
        std::sort(p.verdicts.begin(), p.verdicts.end(),
                  [](const auto& a, const auto& b) { return a.pair < b.pair; });
        break;
      }
      case 4: {
        p.directions.clear();
        for (const auto& batch : chunk_pairs(linked(p.verdicts), options_.batch_cap)) {
          const auto pairs = pairs_of(batch);
          const auto dirs = ask(prompts_.causality(doc, batch),
                                [&](const llm::RawResponse& r) { return parse_causality(r, pairs); });
          for (const auto& [pair, d] : dirs) p.directions[pair] = d;
        }
        break;
      }
      case 5: {
        p.refined.clear();
        for (const auto& batch : chunk_pairs(linked(p.verdicts), options_.batch_cap)) {
          const auto labels = ask(prompts_.reasoner(doc, batch),
                                  [&](const llm::RawResponse& r) { return parse_reasoner(r, batch); });
          for (const auto& [pair, l] : labels) p.refined[pair] = l;
        }
        break;
      }
      default: throw std::logic_error("bad stage");
    }
  };

  DocumentResult result;
  result.doc_id = doc.doc_id;
  result.template_version = version;

  int stage = cp.last_completed_stage + 1;
  try {
    for (; stage <= 5; ++stage) {
      if (control_ && control_->stop_requested())
        throw Error(ErrorKind::Interrupted, "stopped before stage " + std::to_string(stage) + " of " + doc.doc_id);
      run_stage(stage);
      cp.last_completed_stage = stage;
      cp.payloads[std::to_string(stage)] = stage_payload(stage, p);
      checkpoints_.write(cp);
      log_.emit("stage_complete", {{"doc_id", doc.doc_id}, {"stage", stage}});
      if (control_ && control_->on_stage_complete) control_->on_stage_complete(doc.doc_id, stage);
    }
  } catch (const ResponseError& e) {
    result.status = {DocState::Failed, stage, std::string(e.kind_name())};
  } catch (const BackendFailure& e) {
    result.status = {DocState::Failed, stage, std::string(e.kind_name())};
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::OverContext) throw;
    result.status = {DocState::Skipped, 0, std::string(e.kind_name())};
  }
  if (result.status.state != DocState::Complete)
    log_.emit("document_not_complete", {{"doc_id", doc.doc_id},
                                        {"stage", result.status.stage},
                                        {"reason", result.status.reason}});

  result.sdgs = p.sdgs;
  result.pbs = p.pbs;
  if (result.status.state == DocState::Complete) {
    for (const auto& v : p.verdicts) {
      PairClassification pc{v.pair, v.category, std::nullopt, std::nullopt, v.justification, v.evidence_quote};
      if (v.category != Category::Neutral) {
        pc.direction = p.directions.at(v.pair);
        pc.refined = p.refined.at(v.pair);
      }
      result.pairs.push_back(std::move(pc));
    }
  }
  return result;
}

RunOutcome process_documents(const std::vector<corpus::CleanDocument>& docs, DocumentProcessor& processor,
                             int worker_count, RunControl* control) {
  RunOutcome outcome;
  std::vector<std::optional<DocumentResult>> slots(docs.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> interrupted{false};
  std::mutex error_mutex;
  std::exception_ptr first_error;

  auto worker = [&] {
    for (;;) {
      if (interrupted.load() || (control && control->stop_requested())) return;
      {
        std::lock_guard lock(error_mutex);
        if (first_error) return;
      }
      const auto i = next.fetch_add(1);
      if (i >= docs.size()) return;
      try {
        slots[i] = processor.process(docs[i]);
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::Interrupted) {
          interrupted.store(true);
          return;
        }
        std::lock_guard lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  const int n = std::max(1, std::min<int>(worker_count, static_cast<int>(std::max<std::size_t>(docs.size(), 1))));
  {
    std::vector<std::jthread> pool;
    for (int i = 0; i < n; ++i) pool.emplace_back(worker);
  }
  if (first_error) std::rethrow_exception(first_error);

  for (auto& slot : slots) {
    if (slot)
      outcome.results.push_back(std::move(*slot));
    else
      outcome.interrupted = true;
  }
  std::sort(outcome.results.begin(), outcome.results.end(),
            [](const auto& a, const auto& b) { return a.doc_id < b.doc_id; });
  return outcome;
}

namespace {

RunOutcome execute(const std::vector<corpus::CleanDocument>& docs, const RunLayout& layout,
                   const PromptBuilder& prompts, llm::Gateway& gateway, PipelineOptions options, EventLog& log,
                   RunControl* control, bool fresh) {
  CheckpointStore checkpoints(layout.checkpoints());
  if (fresh) {
    checkpoints.clear();
    std::filesystem::remove(layout.results());
  } else {
    for (const auto& cp : checkpoints.load_all())
      if (cp.template_version != prompts.template_version())
        throw Error(ErrorKind::TemplateVersionMismatch, cp.doc_id + ": checkpoint has " + cp.template_version +
                                                            ", templates are " + prompts.template_version());
  }
  log.emit(fresh ? "run_start" : "resume_start",
           {{"documents", docs.size()}, {"template_version", prompts.template_version()},
            {"workers", options.worker_count}, {"batch_cap", options.batch_cap}});
  DocumentProcessor processor(prompts, gateway, checkpoints, options, log, control);
  auto outcome = process_documents(docs, processor, options.worker_count, control);
  if (!outcome.interrupted) write_results(layout.results(), outcome.results);
  log.emit("run_end", {{"interrupted", outcome.interrupted}, {"results", outcome.results.size()}});
  return outcome;
}

}  // namespace

RunOutcome run(const std::vector<corpus::CleanDocument>& docs, const RunLayout& layout, const PromptBuilder& prompts,
               llm::Gateway& gateway, PipelineOptions options, EventLog& log, RunControl* control) {
  return execute(docs, layout, prompts, gateway, options, log, control, true);
}

RunOutcome resume(const std::vector<corpus::CleanDocument>& docs, const RunLayout& layout,
                  const PromptBuilder& prompts, llm::Gateway& gateway, PipelineOptions options, EventLog& log,
                  RunControl* control) {
  return execute(docs, layout, prompts, gateway, options, log, control, false);
}

}  // namespace sdgpb::pipeline
