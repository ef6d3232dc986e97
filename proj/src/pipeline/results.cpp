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

#include "sdgpb/pipeline/results.hpp"

#include <algorithm>

#include "sdgpb/error.hpp"
#include "sdgpb/io.hpp"

namespace sdgpb::pipeline {

nlohmann::json to_json(const DocumentResult& result) {
  nlohmann::json status;
  switch (result.status.state) {
    case DocState::Complete: status = {{"state", "complete"}}; break;
    case DocState::Failed:
      status = {{"state", "failed"}, {"stage", result.status.stage}, {"reason", result.status.reason}};
      break;
    case DocState::Skipped: status = {{"state", "skipped"}, {"reason", result.status.reason}}; break;
  }
  nlohmann::json sdgs = nlohmann::json::array();
  for (const auto& s : result.sdgs) sdgs.push_back(s.value());
  nlohmann::json pbs = nlohmann::json::array();
  for (const auto& p : result.pbs) pbs.push_back(p.value());
  nlohmann::json pairs = nlohmann::json::array();
  for (const auto& p : result.pairs) {
    pairs.push_back({{"sdg", p.pair.sdg.value()},
                     {"pb", p.pair.pb.value()},
                     {"category", to_string(p.category)},
                     {"refined", p.refined ? nlohmann::json(to_string(*p.refined)) : nlohmann::json()},
                     {"direction", p.direction ? nlohmann::json(to_string(*p.direction)) : nlohmann::json()},
                     {"justification", p.justification},
                     {"evidence_quote", p.evidence_quote}});
  }
  return {{"doc_id", result.doc_id},
          {"template_version", result.template_version},
          {"status", status},
          {"sdgs", sdgs},
          {"pbs", pbs},
          {"pairs", pairs}};
}

DocumentResult document_result_from_json(const nlohmann::json& row) {
  try {
    DocumentResult r;
    r.doc_id = row.at("doc_id").get<std::string>();
    r.template_version = row.value("template_version", "");
    const auto& status = row.at("status");
    const auto state = status.at("state").get<std::string>();
    if (state == "complete") {
      r.status.state = DocState::Complete;
    } else if (state == "failed") {
      r.status = {DocState::Failed, status.at("stage").get<int>(), status.at("reason").get<std::string>()};
    } else if (state == "skipped") {
      r.status = {DocState::Skipped, 0, status.at("reason").get<std::string>()};
    } else {
      throw Error(ErrorKind::MissingInput, "unknown document state " + state);
    }
    for (const auto& s : row.at("sdgs")) r.sdgs.emplace_back(s.get<int>());
    for (const auto& p : row.at("pbs")) r.pbs.emplace_back(p.get<int>());
    for (const auto& item : row.at("pairs")) {
      PairClassification pc{{SdgId(item.at("sdg").get<int>()), PbId(item.at("pb").get<int>())},
                            Category::Neutral, std::nullopt, std::nullopt, {}, {}};
      const auto category = parse_category(item.at("category").get<std::string>());
      if (!category) throw Error(ErrorKind::MissingInput, "bad category in results");
      pc.category = *category;
      if (item.contains("refined") && item["refined"].is_string()) {
        pc.refined = parse_refined_label(item["refined"].get<std::string>());
        if (!pc.refined) throw Error(ErrorKind::MissingInput, "bad refined label in results");
      }
      if (item.contains("direction") && item["direction"].is_string()) {
        pc.direction = parse_direction(item["direction"].get<std::string>());
        if (!pc.direction) throw Error(ErrorKind::MissingInput, "bad direction in results");
      }
      pc.justification = item.value("justification", "");
      pc.evidence_quote = item.value("evidence_quote", "");
      r.pairs.push_back(std::move(pc));
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::MissingInput, std::string("bad result row: ") + e.what());
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::OutOfRange) throw Error(ErrorKind::MissingInput, e.what());
    throw;
  }
}

void write_results(const std::filesystem::path& path, std::vector<DocumentResult> results) {
  std::sort(results.begin(), results.end(),
            [](const auto& a, const auto& b) { return a.doc_id < b.doc_id; });
  std::vector<nlohmann::json> rows;
  rows.reserve(results.size());
  for (const auto& r : results) rows.push_back(to_json(r));
  io::write_file_atomic(path, io::to_jsonl(rows));
}

std::vector<DocumentResult> read_results(const std::filesystem::path& path) {
  std::vector<DocumentResult> out;
  for (const auto& row : io::read_jsonl(path)) out.push_back(document_result_from_json(row));
  return out;
}

}  // namespace sdgpb::pipeline
