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

#include "sdgpb/taxonomy.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "sdgpb/error.hpp"
#include "sdgpb/hash.hpp"
#include "sdgpb/resources.hpp"

namespace sdgpb {
namespace {

// Lowercase and drop everything that is not a letter or digit.
std::string fold(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (unsigned char c : text) {
    if (std::isalnum(c)) out.push_back(static_cast<char>(std::tolower(c)));
  }
  return out;
}

constexpr std::array<RefinedLabel, 3> kSynergyLabels = {
    RefinedLabel::Generality, RefinedLabel::MisledByPositivity, RefinedLabel::ActualSynergy};
constexpr std::array<RefinedLabel, 3> kTradeOffLabels = {RefinedLabel::ActualTradeOff,
                                                         RefinedLabel::GenericNegativeAssociation,
                                                         RefinedLabel::DoubleNegative};

}  // namespace

SdgId::SdgId(int value) : value_(value) {
  if (value < 1 || value > kSdgCount) {
    throw Error(ErrorKind::OutOfRange, "SDG id " + std::to_string(value) + " outside [1,17]");
  }
}

PbId::PbId(int value) : value_(value) {
  if (value < 1 || value > kPbCount) {
    throw Error(ErrorKind::OutOfRange, "PB id " + std::to_string(value) + " outside [1,9]");
  }
}

std::string to_string(const SdgPbPair& pair) {
  return "SDG" + std::to_string(pair.sdg.value()) + "-PB" + std::to_string(pair.pb.value());
}

std::string_view to_string(Category c) {
  switch (c) {
    case Category::Synergy: return "synergy";
    case Category::TradeOff: return "trade-off";
    case Category::Neutral: return "neutral";
  }
  return "?";
}

std::string_view to_string(RefinedLabel l) {
  switch (l) {
    case RefinedLabel::Generality: return "Generality";
    case RefinedLabel::MisledByPositivity: return "Misled by Positivity";
    case RefinedLabel::ActualSynergy: return "Actual Synergy";
    case RefinedLabel::ActualTradeOff: return "Actual Trade-off";
    case RefinedLabel::GenericNegativeAssociation: return "Generic Negative Association";
    case RefinedLabel::DoubleNegative: return "Double Negative (Co-Degradation)";
  }
  return "?";
}

std::string_view to_string(ReportBucket b) {
  switch (b) {
    case ReportBucket::TS: return "TS";
    case ReportBucket::TT: return "TT";
    case ReportBucket::DP: return "DP";
    case ReportBucket::DN: return "DN";
    case ReportBucket::GenericPositive: return "GenericPositive";
    case ReportBucket::GenericNegative: return "GenericNegative";
    case ReportBucket::Neutral: return "Neutral";
  }
  return "?";
}

std::string_view to_string(Direction d) {
  return d == Direction::SdgToPb ? "SDG->PB" : "PB->SDG";
}

std::optional<Category> parse_category(std::string_view text) {
  const auto f = fold(text);
  if (f == "synergy") return Category::Synergy;
  if (f == "tradeoff") return Category::TradeOff;
  if (f == "neutral") return Category::Neutral;
  return std::nullopt;
}

std::optional<RefinedLabel> parse_refined_label(std::string_view text) {
  const auto f = fold(text);
  if (f == "generality") return RefinedLabel::Generality;
  if (f == "misledbypositivity") return RefinedLabel::MisledByPositivity;
  if (f == "actualsynergy") return RefinedLabel::ActualSynergy;
  if (f == "actualtradeoff") return RefinedLabel::ActualTradeOff;
  if (f == "genericnegativeassociation") return RefinedLabel::GenericNegativeAssociation;
  if (f == "doublenegative" || f == "doublenegativecodegradation" || f == "codegradation") {
    return RefinedLabel::DoubleNegative;
  }
  return std::nullopt;
}

std::optional<Direction> parse_direction(std::string_view text) {
  const auto f = fold(text);
  if (f == "sdgpb" || f == "sdgtopb") return Direction::SdgToPb;
  if (f == "pbsdg" || f == "pbtosdg") return Direction::PbToSdg;
  return std::nullopt;
}

std::optional<ReportBucket> parse_bucket(std::string_view text) {
  for (auto b : kAllBuckets) {
    if (to_string(b) == text) return b;
  }
  return std::nullopt;
}

std::span<const RefinedLabel> refined_labels_for(Category category) {
  switch (category) {
    case Category::Synergy: return kSynergyLabels;
    case Category::TradeOff: return kTradeOffLabels;
    case Category::Neutral: break;
  }
  return {};
}

ReportBucket bucket(Category category, std::optional<RefinedLabel> refined) {
  if (category == Category::Neutral) {
    if (refined) {
      throw Error(ErrorKind::IllegalRefinement,
                  "neutral links take no refinement, got " + std::string(to_string(*refined)));
    }
    return ReportBucket::Neutral;
  }
  if (!refined) {
    throw Error(ErrorKind::IllegalRefinement,
                std::string(to_string(category)) + " link requires a refined label");
  }
  const auto legal = refined_labels_for(category);
  if (std::find(legal.begin(), legal.end(), *refined) == legal.end()) {
    throw Error(ErrorKind::IllegalRefinement, std::string(to_string(*refined)) + " is not a " +
                                                  std::string(to_string(category)) + " refinement");
  }
  switch (*refined) {
    case RefinedLabel::ActualSynergy: return ReportBucket::TS;
    case RefinedLabel::MisledByPositivity: return ReportBucket::DP;
    case RefinedLabel::Generality: return ReportBucket::GenericPositive;
    case RefinedLabel::ActualTradeOff: return ReportBucket::TT;
    case RefinedLabel::DoubleNegative: return ReportBucket::DN;
    case RefinedLabel::GenericNegativeAssociation: return ReportBucket::GenericNegative;
  }
  return ReportBucket::Neutral;
}

Category category_of(ReportBucket b) {
  switch (b) {
    case ReportBucket::TS:
    case ReportBucket::DP:
    case ReportBucket::GenericPositive: return Category::Synergy;
    case ReportBucket::TT:
    case ReportBucket::DN:
    case ReportBucket::GenericNegative: return Category::TradeOff;
    case ReportBucket::Neutral: break;
  }
  return Category::Neutral;
}

namespace {

std::vector<GoalDescriptor> read_goals(const nlohmann::json& doc, const char* key, int expected) {
  if (!doc.contains(key) || !doc[key].is_array()) {
    throw Error(ErrorKind::ConfigError, std::string("catalog lacks array '") + key + "'");
  }
  std::vector<GoalDescriptor> goals(expected);
  std::vector<bool> seen(expected, false);
  for (const auto& entry : doc[key]) {
    if (!entry.is_object() || !entry.contains("id") || !entry["id"].is_number_integer()) {
      throw Error(ErrorKind::ConfigError, std::string("catalog '") + key + "' entry without integer id");
    }
    const int id = entry["id"].get<int>();
    if (id < 1 || id > expected || seen[id - 1]) {
      throw Error(ErrorKind::ConfigError, std::string("catalog '") + key + "' has bad or repeated id " +
                                              std::to_string(id));
    }
    GoalDescriptor g;
    g.id = id;
    g.short_name = entry.value("short_name", "");
    g.definition = entry.value("definition", "");
    if (g.short_name.empty() || g.definition.empty()) {
      throw Error(ErrorKind::ConfigError, std::string("catalog '") + key + "' entry " +
                                              std::to_string(id) + " lacks name or definition");
    }
    seen[id - 1] = true;
    goals[id - 1] = std::move(g);
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
    throw Error(ErrorKind::ConfigError, std::string("catalog '") + key + "' must list exactly " +
                                            std::to_string(expected) + " entries");
  }
  return goals;
}

}  // namespace

Catalog Catalog::from_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::ConfigError, std::string("catalog is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorKind::ConfigError, "catalog must be a JSON object");
  Catalog c;
  c.version_ = doc.value("catalog_version", "unversioned");
  c.sdgs_ = read_goals(doc, "sdgs", kSdgCount);
  c.pbs_ = read_goals(doc, "pbs", kPbCount);

  Sha256 h;
  h.update(c.version_).update(std::string_view("\0", 1));
  for (const auto* goals : {&c.sdgs_, &c.pbs_}) {
    for (const auto& g : *goals) {
      h.update(std::to_string(g.id)).update(std::string_view("\0", 1));
      h.update(g.short_name).update(std::string_view("\0", 1));
      h.update(g.definition).update(std::string_view("\0", 1));
    }
  }
  c.fingerprint_ = to_hex(h.finish());
  return c;
}

Catalog Catalog::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ConfigError, "cannot read catalog " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

const Catalog& Catalog::builtin() {
  static const Catalog catalog = from_json(resources::get("catalog.json"));
  return catalog;
}

const GoalDescriptor& Catalog::sdg_descriptor(int id) const { return sdg(SdgId(id)); }
const GoalDescriptor& Catalog::pb_descriptor(int id) const { return pb(PbId(id)); }

const GoalDescriptor& sdg_descriptor(int id) { return Catalog::builtin().sdg_descriptor(id); }
const GoalDescriptor& pb_descriptor(int id) { return Catalog::builtin().pb_descriptor(id); }

}  // namespace sdgpb
