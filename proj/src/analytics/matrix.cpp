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

#include "sdgpb/analytics/matrix.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <stdexcept>
#include <tuple>

#include "sdgpb/error.hpp"

namespace sdgpb::analytics {

namespace {

constexpr int kTS = index_of(ReportBucket::TS);
constexpr int kTT = index_of(ReportBucket::TT);
constexpr int kDP = index_of(ReportBucket::DP);
constexpr int kDN = index_of(ReportBucket::DN);
constexpr int kGP = index_of(ReportBucket::GenericPositive);
constexpr int kGN = index_of(ReportBucket::GenericNegative);
constexpr int kNeutral = index_of(ReportBucket::Neutral);

std::int64_t sum(const BucketCounts& c) {
  std::int64_t n = 0;
  for (const auto v : c) n += v;
  return n;
}

void add(BucketCounts& into, const BucketCounts& from) {
  for (int i = 0; i < kBucketCount; ++i) into[i] += from[i];
}

std::optional<double> ratio(std::int64_t num, std::int64_t den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

Flattened flatten(std::span<const pipeline::DocumentResult> results) {
  Flattened out;
  for (const auto& doc : results) {
    if (doc.status.state != pipeline::DocState::Complete) continue;
    ++out.total_docs;
    for (const auto& p : doc.pairs) {
      out.records.push_back({doc.doc_id, p.pair, p.category, bucket(p.category, p.refined), p.direction});
    }
  }
  return out;
}

std::int64_t InteractionMatrix::links(SdgId s, PbId p) const { return sum(cell(s, p)); }

InteractionMatrix build_matrix(std::span<const InteractionRecord> records, std::int64_t total_docs) {
  InteractionMatrix m;
  m.total_docs = total_docs;
  std::set<std::tuple<std::string, int, int>> seen;
  std::set<std::pair<int, std::string>> sdg_docs, pb_docs;
  std::set<std::string> docs;
  for (const auto& r : records) {
    const int s = r.pair.sdg.value();
    const int p = r.pair.pb.value();
    if (!seen.emplace(r.doc_id, s, p).second)
      throw Error(ErrorKind::DuplicateRecord, r.doc_id + " " + to_string(r.pair));
    if (category_of(r.bucket) != r.category)
      throw std::invalid_argument("bucket inconsistent with category for " + r.doc_id + " " + to_string(r.pair));
    ++m.counts[s - 1][p - 1][index_of(r.bucket)];
    if (r.direction) ++m.directions[s - 1][p - 1][static_cast<int>(*r.direction)];
    sdg_docs.emplace(s, r.doc_id);
    pb_docs.emplace(p, r.doc_id);
    docs.insert(r.doc_id);
    ++m.total_records;
  }
  if (static_cast<std::int64_t>(docs.size()) > total_docs)
    throw std::invalid_argument("records span more documents than total_docs");
  for (const auto& [s, doc] : sdg_docs) ++m.doc_presence_sdg[s - 1];
  for (const auto& [p, doc] : pb_docs) ++m.doc_presence_pb[p - 1];
  return m;
}

InteractionMatrix merge(const InteractionMatrix& a, const InteractionMatrix& b) {
  InteractionMatrix m = a;
  for (int s = 0; s < kSdgCount; ++s) {
    for (int p = 0; p < kPbCount; ++p) {
      add(m.counts[s][p], b.counts[s][p]);
      m.directions[s][p][0] += b.directions[s][p][0];
      m.directions[s][p][1] += b.directions[s][p][1];
    }
    m.doc_presence_sdg[s] += b.doc_presence_sdg[s];
  }
  for (int p = 0; p < kPbCount; ++p) m.doc_presence_pb[p] += b.doc_presence_pb[p];
  m.total_docs += b.total_docs;
  m.total_records += b.total_records;
  return m;
}

std::optional<Shares> shares_of(const BucketCounts& c) {
  const auto n = sum(c);
  if (n == 0) return std::nullopt;
  const auto d = static_cast<double>(n);
  const auto syn = c[kTS] + c[kDP] + c[kGP];
  const auto trade = c[kTT] + c[kDN] + c[kGN];
  Shares s;
  s.links = n;
  s.synergy = static_cast<double>(syn) / d;
  s.neutral = static_cast<double>(c[kNeutral]) / d;
  s.tradeoff = static_cast<double>(trade) / d;
  s.tradeoff_excluding_dn = static_cast<double>(c[kTT] + c[kGN]) / d;
  for (int i = 0; i < kBucketCount; ++i) s.buckets[i] = static_cast<double>(c[i]) / d;
  s.ts_of_synergy = ratio(c[kTS], syn);
  s.dp_of_synergy = ratio(c[kDP], syn);
  s.tt_of_tradeoff = ratio(c[kTT], trade);
  s.dn_of_tradeoff = ratio(c[kDN], trade);
  return s;
}

std::optional<Shares> cell_proportions(const InteractionMatrix& m, SdgId sdg, PbId pb) {
  return shares_of(m.cell(sdg, pb));
}

std::optional<Shares> axis_proportions(const InteractionMatrix& m, Axis axis, int id) {
  BucketCounts total{};
  if (axis == Axis::Sdg) {
    const SdgId s(id);
    for (int p = 1; p <= kPbCount; ++p) add(total, m.cell(s, PbId(p)));
  } else {
    const PbId p(id);
    for (int s = 1; s <= kSdgCount; ++s) add(total, m.cell(SdgId(s), p));
  }
  return shares_of(total);
}

Shares global_proportions(const InteractionMatrix& m) {
  BucketCounts total{};
  for (const auto& row : m.counts)
    for (const auto& c : row) add(total, c);
  auto s = shares_of(total);
  if (!s) throw Error(ErrorKind::EmptyMatrix, "no interaction records");
  return *s;
}

double presence_share(const InteractionMatrix& m, Axis axis, int id) {
  const auto n = axis == Axis::Sdg ? m.doc_presence_sdg[SdgId(id).value() - 1]
                                   : m.doc_presence_pb[PbId(id).value() - 1];
  if (m.total_docs <= 0) throw Error(ErrorKind::ZeroCorpus, "no documents");
  return static_cast<double>(n) / static_cast<double>(m.total_docs);
}

double directionality_share(std::span<const InteractionRecord> records) {
  std::int64_t directed = 0, pb_to_sdg = 0;
  for (const auto& r : records) {
    if (!r.direction) continue;
    ++directed;
    if (*r.direction == Direction::PbToSdg) ++pb_to_sdg;
  }
  if (directed == 0) throw Error(ErrorKind::NoDirectedRecords, "no record carries a direction");
  return static_cast<double>(pb_to_sdg) / static_cast<double>(directed);
}

double directionality_share(const InteractionMatrix& m) {
  std::int64_t directed = 0, pb_to_sdg = 0;
  for (const auto& row : m.directions)
    for (const auto& d : row) {
      directed += d[0] + d[1];
      pb_to_sdg += d[static_cast<int>(Direction::PbToSdg)];
    }
  if (directed == 0) throw Error(ErrorKind::NoDirectedRecords, "no record carries a direction");
  return static_cast<double>(pb_to_sdg) / static_cast<double>(directed);
}

std::array<double, kPbCount> normalize_bars(const InteractionMatrix& m, SdgId sdg) {
  std::array<std::int64_t, kPbCount> n{};
  for (int p = 0; p < kPbCount; ++p) n[p] = m.links(sdg, PbId(p + 1));
  const auto max = *std::max_element(n.begin(), n.end());
  if (max == 0) throw Error(ErrorKind::EmptyPanel, "SDG" + std::to_string(sdg.value()) + " has no links");
  std::array<double, kPbCount> out{};
  for (int p = 0; p < kPbCount; ++p) out[p] = static_cast<double>(n[p]) / static_cast<double>(max);
  return out;
}

double ratio_to_global(double cell_share, double global_share) {
  if (!(global_share > 0)) throw Error(ErrorKind::ZeroGlobal, "global share is zero");
  return cell_share / global_share;
}

std::string format_percent(double share) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f%%", share * 100.0);
  return buf;
}

nlohmann::json to_json(const InteractionMatrix& m) {
  nlohmann::json cells = nlohmann::json::array();
  for (int s = 0; s < kSdgCount; ++s)
    for (int p = 0; p < kPbCount; ++p) {
      const auto& c = m.counts[s][p];
      const auto& d = m.directions[s][p];
      if (sum(c) == 0 && d[0] == 0 && d[1] == 0) continue;
      nlohmann::json buckets = nlohmann::json::object();
      for (const auto b : kAllBuckets) buckets[std::string(to_string(b))] = c[index_of(b)];
      cells.push_back({{"sdg", s + 1},
                       {"pb", p + 1},
                       {"buckets", buckets},
                       {"directions",
                        {{std::string(to_string(Direction::SdgToPb)), d[0]},
                         {std::string(to_string(Direction::PbToSdg)), d[1]}}}});
    }
  return {{"total_docs", m.total_docs},
          {"total_records", m.total_records},
          {"doc_presence_sdg", m.doc_presence_sdg},
          {"doc_presence_pb", m.doc_presence_pb},
          {"cells", cells}};
}

InteractionMatrix matrix_from_json(const nlohmann::json& j) {
  try {
    InteractionMatrix m;
    m.total_docs = j.at("total_docs").get<std::int64_t>();
    m.total_records = j.at("total_records").get<std::int64_t>();
    m.doc_presence_sdg = j.at("doc_presence_sdg").get<std::array<std::int64_t, kSdgCount>>();
    m.doc_presence_pb = j.at("doc_presence_pb").get<std::array<std::int64_t, kPbCount>>();
    std::int64_t records = 0;
    for (const auto& cell : j.at("cells")) {
      const SdgId s(cell.at("sdg").get<int>());
      const PbId p(cell.at("pb").get<int>());
      auto& c = m.counts[s.value() - 1][p.value() - 1];
      for (const auto& [name, n] : cell.at("buckets").items()) {
        const auto b = parse_bucket(name);
        if (!b) throw Error(ErrorKind::MissingInput, "unknown bucket " + name);
        c[index_of(*b)] = n.get<std::int64_t>();
        records += c[index_of(*b)];
      }
      auto& d = m.directions[s.value() - 1][p.value() - 1];
      for (const auto& [name, n] : cell.at("directions").items()) {
        const auto dir = parse_direction(name);
        if (!dir) throw Error(ErrorKind::MissingInput, "unknown direction " + name);
        d[static_cast<int>(*dir)] = n.get<std::int64_t>();
      }
    }
    if (records != m.total_records) throw Error(ErrorKind::MissingInput, "total_records does not match cells");
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::MissingInput, std::string("bad matrix file: ") + e.what());
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::OutOfRange) throw Error(ErrorKind::MissingInput, e.what());
    throw;
  }
}

}  // namespace sdgpb::analytics
