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
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "sdgpb/pipeline/types.hpp"
#include "sdgpb/taxonomy.hpp"

namespace sdgpb::analytics {

// One classified SDG-PB link of one document. Neutral links are records too.
struct InteractionRecord {
  std::string doc_id;
  SdgPbPair pair;
  Category category = Category::Neutral;
  ReportBucket bucket = ReportBucket::Neutral;
  std::optional<Direction> direction;

  bool operator==(const InteractionRecord&) const = default;
};

struct Flattened {
  std::vector<InteractionRecord> records;
  std::int64_t total_docs = 0;  // Complete documents
};

// Records of every Complete document; Failed and Skipped documents are left
// out of both the records and the document count.
Flattened flatten(std::span<const pipeline::DocumentResult> results);

using BucketCounts = std::array<std::int64_t, kBucketCount>;
using DirectionCounts = std::array<std::int64_t, 2>;  // SdgToPb, PbToSdg

struct InteractionMatrix {
  std::array<std::array<BucketCounts, kPbCount>, kSdgCount> counts{};
  std::array<std::array<DirectionCounts, kPbCount>, kSdgCount> directions{};
  std::array<std::int64_t, kSdgCount> doc_presence_sdg{};
  std::array<std::int64_t, kPbCount> doc_presence_pb{};
  std::int64_t total_docs = 0;
  std::int64_t total_records = 0;

  const BucketCounts& cell(SdgId s, PbId p) const { return counts[s.value() - 1][p.value() - 1]; }
  std::int64_t links(SdgId s, PbId p) const;

  bool operator==(const InteractionMatrix&) const = default;
};

// Throws DuplicateRecord for a repeated (doc_id, sdg, pb), and
// std::invalid_argument when more distinct documents than `total_docs`
// carry records.
InteractionMatrix build_matrix(std::span<const InteractionRecord> records, std::int64_t total_docs);

// Sum of two matrices built from disjoint sets of documents.
InteractionMatrix merge(const InteractionMatrix& a, const InteractionMatrix& b);

// Shares over one group of links. Within-category shares are absent when the
// category has no links.
struct Shares {
  std::int64_t links = 0;
  double synergy = 0;
  double neutral = 0;
  double tradeoff = 0;
  double tradeoff_excluding_dn = 0;
  std::array<double, kBucketCount> buckets{};
  std::optional<double> ts_of_synergy;
  std::optional<double> dp_of_synergy;
  std::optional<double> tt_of_tradeoff;
  std::optional<double> dn_of_tradeoff;

  bool operator==(const Shares&) const = default;
};

// nullopt when `counts` is all zero.
std::optional<Shares> shares_of(const BucketCounts& counts);

std::optional<Shares> cell_proportions(const InteractionMatrix& m, SdgId sdg, PbId pb);
// All links of one SDG (over the nine PBs) or one PB (over the 17 SDGs).
std::optional<Shares> axis_proportions(const InteractionMatrix& m, Axis axis, int id);
// Throws EmptyMatrix.
Shares global_proportions(const InteractionMatrix& m);

// Fraction of documents with at least one link involving the goal or
// boundary. Throws ZeroCorpus, or OutOfRange for a bad id.
double presence_share(const InteractionMatrix& m, Axis axis, int id);

// PbToSdg over records that carry a direction. Throws NoDirectedRecords.
double directionality_share(std::span<const InteractionRecord> records);
double directionality_share(const InteractionMatrix& m);

// Link counts of the SDG's nine cells over their maximum. Throws EmptyPanel.
std::array<double, kPbCount> normalize_bars(const InteractionMatrix& m, SdgId sdg);

// Throws ZeroGlobal when global_share is not positive.
double ratio_to_global(double cell_share, double global_share);

// "33.8%"
std::string format_percent(double share);

// Matrix file: {"total_docs", "total_records", "doc_presence_sdg": [17],
// "doc_presence_pb": [9], "cells": [{"sdg", "pb", "buckets": {name: n},
// "directions": {"SDG->PB": n, "PB->SDG": n}}]} with only non-empty cells.
nlohmann::json to_json(const InteractionMatrix& m);
// Throws MissingInput on schema violations.
InteractionMatrix matrix_from_json(const nlohmann::json& j);

}  // namespace sdgpb::analytics
