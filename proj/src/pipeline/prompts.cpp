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

#include "sdgpb/pipeline/prompts.hpp"

#include <set>
#include <stdexcept>

#include "sdgpb/error.hpp"
#include "sdgpb/hash.hpp"
#include "sdgpb/io.hpp"
#include "sdgpb/resources.hpp"

namespace sdgpb::pipeline {
namespace {

// Placeholders each template must use.
const std::map<std::string_view, std::vector<std::string_view>>& required_placeholders() {
  static const std::map<std::string_view, std::vector<std::string_view>> table = {
      {"allocation_sdg", {"definitions", "title", "body"}},
      {"allocation_pb", {"definitions", "title", "body"}},
      {"relationship", {"pairs", "title", "body"}},
      {"causality", {"pairs", "title", "body"}},
      {"reasoner", {"pairs", "title", "body"}},
      {"repair", {"original_prompt", "error", "previous_reply"}},
  };
  return table;
}

std::string goal_block(std::string_view prefix, const GoalDescriptor& g) {
  return std::string(prefix) + std::to_string(g.id) + " - " + g.short_name + ": " + g.definition;
}

}  // namespace

std::string render_template(std::string_view text, const std::map<std::string, std::string>& values) {
  std::string out;
  out.reserve(text.size());
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto open = text.find("{{", pos);
    if (open == std::string_view::npos) {
      out.append(text.substr(pos));
      break;
    }
    const auto close = text.find("}}", open + 2);
    if (close == std::string_view::npos) {
      throw Error(ErrorKind::TemplateError, "unterminated placeholder");
    }
    out.append(text.substr(pos, open - pos));
    const std::string name(text.substr(open + 2, close - open - 2));
    const auto it = values.find(name);
    if (it == values.end()) throw Error(ErrorKind::TemplateError, "no value for {{" + name + "}}");
    out.append(it->second);
    pos = close + 2;
  }
  return out;
}

TemplateSet TemplateSet::from_map(std::map<std::string, std::string, std::less<>> texts) {
  for (const auto& [name, required] : required_placeholders()) {
    const auto it = texts.find(name);
    if (it == texts.end()) {
      throw Error(ErrorKind::TemplateError, "missing template " + std::string(name));
    }
    for (auto placeholder : required) {
      if (it->second.find("{{" + std::string(placeholder) + "}}") == std::string::npos) {
        throw Error(ErrorKind::TemplateError, "template " + std::string(name) + " lacks {{" +
                                                  std::string(placeholder) + "}}");
      }
    }
  }
  TemplateSet set;
  set.texts_ = std::move(texts);
  return set;
}

TemplateSet TemplateSet::builtin() {
  std::map<std::string, std::string, std::less<>> texts;
  for (auto name : kNames) {
    texts.emplace(std::string(name), std::string(resources::get("templates/" + std::string(name) + ".txt")));
  }
  return from_map(std::move(texts));
}

TemplateSet TemplateSet::load(const std::filesystem::path& dir) {
  std::map<std::string, std::string, std::less<>> texts;
  for (auto name : kNames) {
    const auto path = dir / (std::string(name) + ".txt");
    try {
      texts.emplace(std::string(name), io::read_file(path));
    } catch (const Error&) {
      throw Error(ErrorKind::TemplateError, "cannot read template " + path.string());
    }
  }
  return from_map(std::move(texts));
}

const std::string& TemplateSet::get(std::string_view name) const {
  const auto it = texts_.find(name);
  if (it == texts_.end()) throw Error(ErrorKind::TemplateError, "unknown template " + std::string(name));
  return it->second;
}

std::string TemplateSet::version(const Catalog& catalog) const {
  static constexpr std::string_view kSep("\0", 1);
  Sha256 h;
  h.update(kSystemText).update(kSep);
  for (const auto& [name, text] : texts_) h.update(name).update(kSep).update(text).update(kSep);
  h.update(catalog.fingerprint());
  return "tv1-" + to_hex(h.finish()).substr(0, 16);
}

// ---------------------------------------------------------------------------

PromptBuilder::PromptBuilder(TemplateSet templates, const Catalog& catalog, PromptSettings settings)
    : templates_(std::move(templates)),
      catalog_(catalog),
      settings_(settings),
      version_(templates_.version(catalog)) {}

llm::PromptRequest PromptBuilder::finish(int stage, const corpus::CleanDocument& doc,
                                         std::string user_text) const {
  const auto estimate = corpus::estimate_tokens(kSystemText) + corpus::estimate_tokens(user_text);
  if (estimate > settings_.context_budget_tokens) {
    throw Error(ErrorKind::OverContext, doc.doc_id + " stage " + std::to_string(stage) + " prompt needs ~" +
                                            std::to_string(estimate) + " tokens, budget " +
                                            std::to_string(settings_.context_budget_tokens));
  }
  return llm::make_request(stage, doc.doc_id, std::string(kSystemText), std::move(user_text),
                           {settings_.temperature, settings_.max_output_tokens[stage - 1]});
}

llm::PromptRequest PromptBuilder::allocation(const corpus::CleanDocument& doc, Axis axis) const {
  std::string definitions;
  const auto goals = axis == Axis::Sdg ? catalog_.sdgs() : catalog_.pbs();
  for (const auto& g : goals) {
    definitions += goal_block(axis == Axis::Sdg ? "SDG" : "PB", g);
    definitions += "\n\n";
  }
  if (!definitions.empty()) definitions.resize(definitions.size() - 2);

  const auto& tmpl = templates_.get(axis == Axis::Sdg ? "allocation_sdg" : "allocation_pb");
  auto text = render_template(tmpl, {{"definitions", definitions}, {"title", doc.title}, {"body", doc.body_text}});
  return finish(axis == Axis::Sdg ? 1 : 2, doc, std::move(text));
}

std::string PromptBuilder::pair_line(const SdgPbPair& pair) const {
  return "- SDG" + std::to_string(pair.sdg.value()) + " (" + catalog_.sdg(pair.sdg).short_name + ") x PB" +
         std::to_string(pair.pb.value()) + " (" + catalog_.pb(pair.pb).short_name + ")";
}

std::map<std::string, std::string> PromptBuilder::pair_context(const corpus::CleanDocument& doc,
                                                               std::span<const SdgPbPair> pairs,
                                                               std::string pair_lines) const {
  std::set<SdgId> sdgs;
  std::set<PbId> pbs;
  for (const auto& p : pairs) {
    sdgs.insert(p.sdg);
    pbs.insert(p.pb);
  }
  std::string sdg_defs;
  for (const auto& id : sdgs) {
    if (!sdg_defs.empty()) sdg_defs += "\n\n";
    sdg_defs += goal_block("SDG", catalog_.sdg(id));
  }
  std::string pb_defs;
  for (const auto& id : pbs) {
    if (!pb_defs.empty()) pb_defs += "\n\n";
    pb_defs += goal_block("PB", catalog_.pb(id));
  }
  return {{"sdg_definitions", sdg_defs},
          {"pb_definitions", pb_defs},
          {"pairs", std::move(pair_lines)},
          {"pair_count", std::to_string(pairs.size())},
          {"title", doc.title},
          {"body", doc.body_text}};
}

llm::PromptRequest PromptBuilder::relationship(const corpus::CleanDocument& doc,
                                               std::span<const SdgPbPair> batch) const {
  if (batch.empty()) throw std::invalid_argument("relationship batch is empty");
  std::vector<SdgPbPair> sorted(batch.begin(), batch.end());
  std::sort(sorted.begin(), sorted.end());
  std::string lines;
  for (const auto& p : sorted) {
    if (!lines.empty()) lines += '\n';
    lines += pair_line(p);
  }
  auto text = render_template(templates_.get("relationship"), pair_context(doc, sorted, std::move(lines)));
  return finish(3, doc, std::move(text));
}

llm::PromptRequest PromptBuilder::causality(const corpus::CleanDocument& doc,
                                            std::span<const PairVerdict> batch) const {
  if (batch.empty()) throw std::invalid_argument("causality batch is empty");
  std::vector<PairVerdict> sorted(batch.begin(), batch.end());
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.pair < b.pair; });
  std::vector<SdgPbPair> pairs;
  std::string lines;
  for (const auto& v : sorted) {
    if (v.category == Category::Neutral) throw std::invalid_argument("causality batch holds a neutral pair");
    pairs.push_back(v.pair);
    if (!lines.empty()) lines += '\n';
    lines += pair_line(v.pair) + ": " + std::string(to_string(v.category));
  }
  auto text = render_template(templates_.get("causality"), pair_context(doc, pairs, std::move(lines)));
  return finish(4, doc, std::move(text));
}

llm::PromptRequest PromptBuilder::reasoner(const corpus::CleanDocument& doc,
                                           std::span<const PairVerdict> batch) const {
  if (batch.empty()) throw std::invalid_argument("reasoner batch is empty");
  std::vector<PairVerdict> sorted(batch.begin(), batch.end());
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.pair < b.pair; });
  std::vector<SdgPbPair> pairs;
  std::string lines;
  for (const auto& v : sorted) {
    if (v.category == Category::Neutral) throw std::invalid_argument("reasoner batch holds a neutral pair");
    pairs.push_back(v.pair);
    if (!lines.empty()) lines += '\n';
    lines += pair_line(v.pair) + ": " + std::string(to_string(v.category)) +
             ". Justification: " + corpus::normalize_whitespace(v.justification);
  }
  auto text = render_template(templates_.get("reasoner"), pair_context(doc, pairs, std::move(lines)));
  return finish(5, doc, std::move(text));
}

llm::PromptRequest PromptBuilder::repair(const llm::PromptRequest& original, std::string_view error,
                                         std::string_view previous_reply) const {
  auto text = render_template(templates_.get("repair"), {{"error", std::string(error)},
                                                         {"previous_reply", std::string(previous_reply)},
                                                         {"original_prompt", original.user_text}});
  return llm::make_request(original.stage, original.doc_id, original.system_text, std::move(text),
                           original.decode);
}

}  // namespace sdgpb::pipeline
