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
#include <compare>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sdgpb {

inline constexpr int kSdgCount = 17;
inline constexpr int kPbCount = 9;

// Sustainable Development Goal number, always within [1, 17].
class SdgId {
 public:
  explicit SdgId(int value);
  int value() const noexcept { return value_; }
  auto operator<=>(const SdgId&) const = default;

 private:
  int value_;
};

// Planetary Boundary number, always within [1, 9].
class PbId {
 public:
  explicit PbId(int value);
  int value() const noexcept { return value_; }
  auto operator<=>(const PbId&) const = default;

 private:
  int value_;
};

struct SdgPbPair {
  SdgId sdg;
  PbId pb;
  auto operator<=>(const SdgPbPair&) const = default;
};

std::string to_string(const SdgPbPair& pair);  // "SDG13-PB6"

enum class Axis { Sdg, Pb };

struct GoalDescriptor {
  int id = 0;
  std::string short_name;
  std::string definition;

  bool operator==(const GoalDescriptor&) const = default;
};

enum class Category { Synergy, TradeOff, Neutral };

enum class RefinedLabel {
  Generality,
  MisledByPositivity,
  ActualSynergy,
  ActualTradeOff,
  GenericNegativeAssociation,
  DoubleNegative,
};

// Reporting buckets; the order is the column order used by every table.
enum class ReportBucket { TS, TT, DP, DN, GenericPositive, GenericNegative, Neutral };
inline constexpr int kBucketCount = 7;
inline constexpr std::array<ReportBucket, kBucketCount> kAllBuckets = {
    ReportBucket::TS,          ReportBucket::TT,
    ReportBucket::DP,          ReportBucket::DN,
    ReportBucket::GenericPositive, ReportBucket::GenericNegative,
    ReportBucket::Neutral};
inline constexpr std::array<Category, 3> kAllCategories = {Category::Synergy, Category::Neutral,
                                                          Category::TradeOff};

enum class Direction { SdgToPb, PbToSdg };

std::string_view to_string(Category c);
std::string_view to_string(RefinedLabel l);
std::string_view to_string(ReportBucket b);
std::string_view to_string(Direction d);

// Lenient readers for model output and stored files. Case and separator
// insensitive ("Trade-off", "trade_off", "TradeOff" all match).
std::optional<Category> parse_category(std::string_view text);
std::optional<RefinedLabel> parse_refined_label(std::string_view text);
std::optional<Direction> parse_direction(std::string_view text);
std::optional<ReportBucket> parse_bucket(std::string_view text);

std::span<const RefinedLabel> refined_labels_for(Category category);

// Throws IllegalRefinement when `refined` is not legal for `category`
// (any label on Neutral, a missing label on Synergy/TradeOff, or a label of
// the other category).
ReportBucket bucket(Category category, std::optional<RefinedLabel> refined);
Category category_of(ReportBucket b);

constexpr int index_of(ReportBucket b) { return static_cast<int>(b); }

// The SDG and PB descriptors fed into prompts. Immutable after construction.
class Catalog {
 public:
  // Compiled-in catalog (data/catalog.json).
  static const Catalog& builtin();
  // Throws ConfigError on schema violations.
  static Catalog from_json(std::string_view text);
  static Catalog load(const std::filesystem::path& path);

  const GoalDescriptor& sdg(SdgId id) const { return sdgs_[id.value() - 1]; }
  const GoalDescriptor& pb(PbId id) const { return pbs_[id.value() - 1]; }
  // Range-checked lookups by plain integer; throw OutOfRange.
  const GoalDescriptor& sdg_descriptor(int id) const;
  const GoalDescriptor& pb_descriptor(int id) const;

  std::span<const GoalDescriptor> sdgs() const { return sdgs_; }
  std::span<const GoalDescriptor> pbs() const { return pbs_; }
  const std::string& version() const { return version_; }
  // Hex digest of the canonical catalog content.
  const std::string& fingerprint() const { return fingerprint_; }

 private:
  Catalog() = default;

  std::string version_;
  std::string fingerprint_;
  std::vector<GoalDescriptor> sdgs_;
  std::vector<GoalDescriptor> pbs_;
};

const GoalDescriptor& sdg_descriptor(int id);
const GoalDescriptor& pb_descriptor(int id);

}  // namespace sdgpb
