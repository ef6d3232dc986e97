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

#include "sdgpb/pipeline/responses.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <optional>

#include "sdgpb/error.hpp"

namespace sdgpb::pipeline {
namespace {

[[noreturn]] void reject(ErrorKind kind, const std::string& message) { throw ResponseError(kind, message); }

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string_view strip_fence(std::string_view text) {
  text = trim(text);
  if (!text.starts_with("```")) return text;
  const auto first_newline = text.find('\n');
  if (first_newline == std::string_view::npos) return text;
  text.remove_prefix(first_newline + 1);
  text = trim(text);
  if (text.ends_with("```")) text.remove_suffix(3);
  return trim(text);
}

// Integer id, also accepting "13", "SDG13" or "PB 6" strings.
std::optional<int> read_id(const nlohmann::json& v) {
  if (v.is_number_integer()) return v.get<int>();
  if (v.is_number_unsigned()) return static_cast<int>(std::min<std::uint64_t>(v.get<std::uint64_t>(), 1'000'000));
  if (!v.is_string()) return std::nullopt;
  auto s = trim(v.get_ref<const std::string&>());
  std::string upper;
  for (char c : s) upper.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  std::string_view u = upper;
  if (u.starts_with("SDG")) u.remove_prefix(3);
  else if (u.starts_with("PB")) u.remove_prefix(2);
  u = trim(u);
  if (u.empty() || u.size() > 6 || !std::all_of(u.begin(), u.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    return std::nullopt;
  }
  return std::stoi(std::string(u));
}

std::string field_string(const nlohmann::json& item, const char* key, bool required) {
  if (!item.contains(key) || item[key].is_null()) {
    if (required) reject(ErrorKind::SchemaError, std::string("entry lacks \"") + key + "\"");
    return {};
  }
  if (!item[key].is_string()) reject(ErrorKind::SchemaError, std::string("\"") + key + "\" must be a string");
  return item[key].get<std::string>();
}

SdgPbPair read_pair(const nlohmann::json& item) {
  if (!item.is_object()) reject(ErrorKind::SchemaError, "pair entry is not an object");
  if (!item.contains("sdg") || !item.contains("pb")) reject(ErrorKind::SchemaError, "pair entry lacks sdg or pb");
  const auto sdg = read_id(item["sdg"]);
  const auto pb = read_id(item["pb"]);
  if (!sdg || !pb) reject(ErrorKind::SchemaError, "pair ids must be integers");
  if (*sdg < 1 || *sdg > kSdgCount || *pb < 1 || *pb > kPbCount) {
    reject(ErrorKind::IdOutOfRange, "pair SDG" + std::to_string(*sdg) + "-PB" + std::to_string(*pb) + " out of range");
  }
  return {SdgId(*sdg), PbId(*pb)};
}

template <typename Value>
bool same_verdict(const Value& a, const Value& b) {
  return a == b;
}

// Two relationship entries agree when their categories do; the first
// justification is kept.
bool same_verdict(const PairVerdict& a, const PairVerdict& b) { return a.category == b.category; }

// Reads the "pairs" array, maps each entry through `read_value`, merges
// identical repeats, and checks the pair set against the batch. Returns the
// values in batch order.
template <typename Value>
std::vector<std::pair<SdgPbPair, Value>> read_pair_entries(
    const llm::RawResponse& raw, std::span<const SdgPbPair> batch,
    const std::function<Value(const nlohmann::json&, const SdgPbPair&)>& read_value) {
  const auto doc = extract_json_object(raw.text);
  if (!doc.contains("pairs") || !doc["pairs"].is_array()) reject(ErrorKind::SchemaError, "reply lacks a \"pairs\" array");

  std::map<SdgPbPair, Value> seen;
  for (const auto& item : doc["pairs"]) {
    const auto pair = read_pair(item);
    auto value = read_value(item, pair);
    auto [it, inserted] = seen.emplace(pair, value);
    if (!inserted && !same_verdict(it->second, value)) {
      reject(ErrorKind::ConflictingDuplicate, to_string(pair) + " returned twice with different verdicts");
    }
  }

  std::vector<std::pair<SdgPbPair, Value>> out;
  out.reserve(batch.size());
  for (const auto& pair : batch) {
    const auto it = seen.find(pair);
    if (it == seen.end()) reject(ErrorKind::PairSetMismatch, "reply omits " + to_string(pair));
    out.emplace_back(pair, it->second);
  }
  if (seen.size() != out.size()) {
    for (const auto& [pair, v] : seen) {
      if (std::find(batch.begin(), batch.end(), pair) == batch.end()) {
        reject(ErrorKind::PairSetMismatch, "reply adds unrequested " + to_string(pair));
      }
    }
  }
  return out;
}

}  // namespace

nlohmann::json extract_json_object(std::string_view text) {
  const auto body = strip_fence(text);
  auto doc = nlohmann::json::parse(body, nullptr, false);
  if (doc.is_discarded()) {
    // Tolerate prose around a single object.
    const auto open = body.find('{');
    const auto close = body.rfind('}');
    if (open != std::string_view::npos && close != std::string_view::npos && close > open) {
      doc = nlohmann::json::parse(body.substr(open, close - open + 1), nullptr, false);
    }
  }
  if (doc.is_discarded()) reject(ErrorKind::SchemaError, "reply is not valid JSON");
  if (!doc.is_object()) reject(ErrorKind::SchemaError, "reply is not a JSON object");
  return doc;
}

std::vector<int> parse_allocation(const llm::RawResponse& raw, Axis axis) {
  const auto doc = extract_json_object(raw.text);
  const char* key = axis == Axis::Sdg ? "sdgs" : "pbs";
  const int upper = axis == Axis::Sdg ? kSdgCount : kPbCount;
  if (!doc.contains(key) || !doc[key].is_array()) {
    reject(ErrorKind::SchemaError, std::string("reply lacks a \"") + key + "\" array");
  }
  std::vector<int> ids;
  for (const auto& v : doc[key]) {
    const auto id = read_id(v);
    if (!id) reject(ErrorKind::SchemaError, std::string("\"") + key + "\" must hold integers");
    if (*id < 1 || *id > upper) {
      reject(ErrorKind::IdOutOfRange, std::string(key) + " id " + std::to_string(*id) + " outside [1," +
                                          std::to_string(upper) + "]");
    }
    ids.push_back(*id);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

std::vector<PairVerdict> parse_relationship(const llm::RawResponse& raw, std::span<const SdgPbPair> batch) {
  const std::function<PairVerdict(const nlohmann::json&, const SdgPbPair&)> read =
      [](const nlohmann::json& item, const SdgPbPair& pair) {
        const auto label = field_string(item, "category", true);
        const auto category = parse_category(label);
        if (!category) reject(ErrorKind::UnknownCategory, "unknown category \"" + label + "\" for " + to_string(pair));
        PairVerdict v{pair, *category, field_string(item, "justification", false),
                      field_string(item, "evidence_quote", true)};
        if (v.category != Category::Neutral && trim(v.justification).empty()) {
          reject(ErrorKind::SchemaError, to_string(pair) + " lacks a justification");
        }
        return v;
      };
  std::vector<PairVerdict> out;
  for (auto& [pair, verdict] : read_pair_entries(raw, batch, read)) out.push_back(std::move(verdict));
  return out;
}

std::vector<std::pair<SdgPbPair, Direction>> parse_causality(const llm::RawResponse& raw,
                                                             std::span<const SdgPbPair> batch) {
  const std::function<Direction(const nlohmann::json&, const SdgPbPair&)> read =
      [](const nlohmann::json& item, const SdgPbPair& pair) {
        const auto label = field_string(item, "direction", true);
        const auto direction = parse_direction(label);
        if (!direction) {
          reject(ErrorKind::UnknownDirection, "unknown direction \"" + label + "\" for " + to_string(pair));
        }
        return *direction;
      };
  return read_pair_entries(raw, batch, read);
}

std::vector<std::pair<SdgPbPair, RefinedLabel>> parse_reasoner(const llm::RawResponse& raw,
                                                               std::span<const PairVerdict> batch) {
  std::map<SdgPbPair, Category> categories;
  std::vector<SdgPbPair> pairs;
  for (const auto& v : batch) {
    categories.emplace(v.pair, v.category);
    pairs.push_back(v.pair);
  }
  const std::function<RefinedLabel(const nlohmann::json&, const SdgPbPair&)> read =
      [&categories](const nlohmann::json& item, const SdgPbPair& pair) {
        const auto text = field_string(item, "label", true);
        const auto label = parse_refined_label(text);
        if (!label) reject(ErrorKind::SchemaError, "unknown refined label \"" + text + "\" for " + to_string(pair));
        const auto it = categories.find(pair);
        if (it != categories.end()) {
          const auto legal = refined_labels_for(it->second);
          if (std::find(legal.begin(), legal.end(), *label) == legal.end()) {
            reject(ErrorKind::IllegalRefinement, std::string(to_string(*label)) + " is not a " +
                                                     std::string(to_string(it->second)) + " refinement for " +
                                                     to_string(pair));
          }
        }
        return *label;
      };
  return read_pair_entries(raw, pairs, read);
}

}  // namespace sdgpb::pipeline
