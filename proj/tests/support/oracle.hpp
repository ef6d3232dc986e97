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
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "sdgpb/analytics/matrix.hpp"

namespace sdgpb::testing {

// Random records with unique (doc, pair) keys over `docs` documents.
std::vector<analytics::InteractionRecord> random_records(std::mt19937_64& rng, int docs, int max_per_doc);

// A record list with the given number of records in each bucket, spread
// over `docs` documents.
std::vector<analytics::InteractionRecord> records_with_buckets(const std::map<ReportBucket, int>& counts,
                                                               int docs = 1);

// Shares computed by scanning a record list, one filter per statistic.
struct OracleShares {
  std::int64_t n = 0;
  double synergy = 0, neutral = 0, tradeoff = 0, tradeoff_excluding_dn = 0;
  std::map<ReportBucket, double> buckets;
};

std::optional<OracleShares> oracle_of(const std::vector<ReportBucket>& buckets);
std::optional<OracleShares> oracle_shares(const std::vector<analytics::InteractionRecord>& records,
                                          std::optional<int> sdg = std::nullopt, std::optional<int> pb = std::nullopt);

double oracle_presence(const std::vector<analytics::InteractionRecord>& records, Axis axis, int id,
                       std::int64_t total_docs);

// Largest absolute difference between the oracle and the library shares.
double share_error(const OracleShares& o, const analytics::Shares& s);

}  // namespace sdgpb::testing
