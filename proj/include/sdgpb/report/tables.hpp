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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "sdgpb/analytics/matrix.hpp"
#include "sdgpb/taxonomy.hpp"

namespace sdgpb::report {

// CSV columns, one row per (sdg, pb) cell in ascending order:
//   sdg, pb, links, synergy, neutral, tradeoff, TS, TT, DP, DN,
//   GenericPositive, GenericNegative, sdg_to_pb, pb_to_sdg,
//   synergy_share, neutral_share, tradeoff_share, tradeoff_share_excluding_dn,
//   ts_share, tt_share
// Shares are 0 for empty cells.
inline constexpr std::string_view kMatrixCsvHeader =
    "sdg,pb,links,synergy,neutral,tradeoff,TS,TT,DP,DN,GenericPositive,GenericNegative,sdg_to_pb,pb_to_sdg,"
    "synergy_share,neutral_share,tradeoff_share,tradeoff_share_excluding_dn,ts_share,tt_share";

std::string emit_matrix_csv(const analytics::InteractionMatrix& m);

struct AxisSummary {
  int id = 0;
  std::string name;
  std::int64_t documents = 0;
  std::optional<double> presence;  // absent when there are no documents
  std::optional<analytics::Shares> shares;

  bool operator==(const AxisSummary&) const = default;
};

struct CellSummary {
  int sdg = 0;
  int pb = 0;
  std::optional<analytics::Shares> shares;
  // Cell trade-off share over the global trade-off share.
  std::optional<double> tradeoff_ratio_to_global;
  std::int64_t sdg_to_pb = 0;
  std::int64_t pb_to_sdg = 0;

  bool operator==(const CellSummary&) const = default;
};

// Every statistic derived from a matrix.
struct Summary {
  std::int64_t total_docs = 0;
  std::int64_t total_records = 0;
  std::optional<analytics::Shares> global;
  std::int64_t directed_records = 0;
  std::optional<double> pb_to_sdg_share;
  std::vector<AxisSummary> sdgs;
  std::vector<AxisSummary> pbs;
  std::vector<CellSummary> cells;  // 153

  bool operator==(const Summary&) const = default;
};

Summary summarize(const analytics::InteractionMatrix& m, const Catalog& catalog = Catalog::builtin());

// Doubles are written at full precision next to one-decimal "display"
// strings; summary_from_json(to_json(s)) == s.
nlohmann::json to_json(const Summary& s);
Summary summary_from_json(const nlohmann::json& j);

std::string emit_summary_json(const analytics::InteractionMatrix& m, const Catalog& catalog = Catalog::builtin());

}  // namespace sdgpb::report
