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
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "sdgpb/corpus/tei.hpp"
#include "sdgpb/llm/request.hpp"
#include "sdgpb/pipeline/types.hpp"
#include "sdgpb/taxonomy.hpp"

namespace sdgpb::pipeline {

// The versioned prompt templates. Placeholders are written `{{name}}`.
class TemplateSet {
 public:
  static constexpr std::array<std::string_view, 6> kNames = {
      "allocation_sdg", "allocation_pb", "relationship", "causality", "reasoner", "repair"};

  // Templates compiled into the binary (templates/*.txt).
  static TemplateSet builtin();
  // Reads <dir>/<name>.txt for every name. Throws TemplateError.
  static TemplateSet load(const std::filesystem::path& dir);

  const std::string& get(std::string_view name) const;

  // Short hash over every template, the fixed system text and the catalog
  // fingerprint. Stored with checkpoints and results.
  std::string version(const Catalog& catalog) const;

 private:
  static TemplateSet from_map(std::map<std::string, std::string, std::less<>> texts);
  std::map<std::string, std::string, std::less<>> texts_;
};

// Substitutes `{{name}}` placeholders in one pass (substituted text is not
// rescanned). Throws TemplateError for placeholders without a value.
std::string render_template(std::string_view text, const std::map<std::string, std::string>& values);

// System instruction sent with every request.
inline constexpr std::string_view kSystemText =
    "You are a careful research analyst. Base every answer only on the article text you are "
    "given. Reply with a single JSON object and nothing else.";

struct PromptSettings {
  std::int64_t context_budget_tokens = 1'000'000;
  double temperature = 0.0;
  // Output budgets for stages 1..5.
  std::array<int, 5> max_output_tokens = {2048, 2048, 16384, 8192, 16384};
};

// Builds the five stage requests for a document. Every builder throws
// OverContext when the rendered prompt's token estimate exceeds the budget.
class PromptBuilder {
 public:
  PromptBuilder(TemplateSet templates, const Catalog& catalog, PromptSettings settings = {});

  llm::PromptRequest allocation(const corpus::CleanDocument& doc, Axis axis) const;
  llm::PromptRequest relationship(const corpus::CleanDocument& doc, std::span<const SdgPbPair> batch) const;
  // Every verdict must be Synergy or TradeOff (std::invalid_argument otherwise).
  llm::PromptRequest causality(const corpus::CleanDocument& doc, std::span<const PairVerdict> batch) const;
  llm::PromptRequest reasoner(const corpus::CleanDocument& doc, std::span<const PairVerdict> batch) const;
  llm::PromptRequest repair(const llm::PromptRequest& original, std::string_view error,
                            std::string_view previous_reply) const;

  const std::string& template_version() const { return version_; }
  const Catalog& catalog() const { return catalog_; }
  const PromptSettings& settings() const { return settings_; }

 private:
  llm::PromptRequest finish(int stage, const corpus::CleanDocument& doc, std::string user_text) const;
  std::map<std::string, std::string> pair_context(const corpus::CleanDocument& doc,
                                                  std::span<const SdgPbPair> pairs,
                                                  std::string pair_lines) const;
  std::string pair_line(const SdgPbPair& pair) const;

  TemplateSet templates_;
  const Catalog& catalog_;
  PromptSettings settings_;
  std::string version_;
};

}  // namespace sdgpb::pipeline
