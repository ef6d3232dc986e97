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

#include "sdgpb/report/tables.hpp"

#include <cstdio>

#include "sdgpb/error.hpp"

namespace sdgpb::report {

namespace {

using analytics::InteractionMatrix;
using analytics::Shares;
using nlohmann::json;

std::string exact(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(); }

std::optional<double> read_optional(const json& j, const char* key) {
  const auto& v = j.at(key);
  if (v.is_null()) return std::nullopt;
  return v.get<double>();
}

json shares_json(const std::optional<Shares>& s) {
  if (!s) return nullptr;
  json buckets = json::object();
  json bucket_display = json::object();
  for (const auto b : kAllBuckets) {
    buckets[std::string(to_string(b))] = s->buckets[index_of(b)];
    bucket_display[std::string(to_string(b))] = analytics::format_percent(s->buckets[index_of(b)]);
  }
  json display = {{"synergy", analytics::format_percent(s->synergy)},
                  {"neutral", analytics::format_percent(s->neutral)},
                  {"tradeoff", analytics::format_percent(s->tradeoff)},
                  {"tradeoff_excluding_dn", analytics::format_percent(s->tradeoff_excluding_dn)},
                  {"buckets", bucket_display}};
  for (const auto& [key, v] : {std::pair{"ts_of_synergy", s->ts_of_synergy},
                               std::pair{"dp_of_synergy", s->dp_of_synergy},
                               std::pair{"tt_of_tradeoff", s->tt_of_tradeoff},
                               std::pair{"dn_of_tradeoff", s->dn_of_tradeoff}})
    display[key] = v ? json(analytics::format_percent(*v)) : json();
  return {{"links", s->links},
          {"synergy", s->synergy},
          {"neutral", s->neutral},
          {"tradeoff", s->tradeoff},
          {"tradeoff_excluding_dn", s->tradeoff_excluding_dn},
          {"buckets", buckets},
          {"ts_of_synergy", optional_number(s->ts_of_synergy)},
          {"dp_of_synergy", optional_number(s->dp_of_synergy)},
          {"tt_of_tradeoff", optional_number(s->tt_of_tradeoff)},
          {"dn_of_tradeoff", optional_number(s->dn_of_tradeoff)},
          {"display", display}};
}

std::optional<Shares> shares_from(const json& j) {
  if (j.is_null()) return std::nullopt;
  Shares s;
  s.links = j.at("links").get<std::int64_t>();
  s.synergy = j.at("synergy").get<double>();
  s.neutral = j.at("neutral").get<double>();
  s.tradeoff = j.at("tradeoff").get<double>();
  s.tradeoff_excluding_dn = j.at("tradeoff_excluding_dn").get<double>();
  for (const auto b : kAllBuckets) s.buckets[index_of(b)] = j.at("buckets").at(std::string(to_string(b))).get<double>();
  s.ts_of_synergy = read_optional(j, "ts_of_synergy");
  s.dp_of_synergy = read_optional(j, "dp_of_synergy");
  s.tt_of_tradeoff = read_optional(j, "tt_of_tradeoff");
  s.dn_of_tradeoff = read_optional(j, "dn_of_tradeoff");
  return s;
}

json axis_json(const AxisSummary& a) {
  return {{"id", a.id},
          {"name", a.name},
          {"documents", a.documents},
          {"presence", optional_number(a.presence)},
          {"presence_display", a.presence ? json(analytics::format_percent(*a.presence)) : json()},
          {"shares", shares_json(a.shares)}};
}

AxisSummary axis_from(const json& j) {
  return {j.at("id").get<int>(), j.at("name").get<std::string>(), j.at("documents").get<std::int64_t>(),
          read_optional(j, "presence"), shares_from(j.at("shares"))};
}

}  // namespace

std::string emit_matrix_csv(const InteractionMatrix& m) {
  std::string out(kMatrixCsvHeader);
  out += "\n";
  for (int s = 1; s <= kSdgCount; ++s)
    for (int p = 1; p <= kPbCount; ++p) {
      const auto& c = m.cell(SdgId(s), PbId(p));
      const auto& d = m.directions[s - 1][p - 1];
      const auto shares = analytics::cell_proportions(m, SdgId(s), PbId(p)).value_or(Shares{});
      const auto count = [&](ReportBucket b) { return c[index_of(b)]; };
      const std::int64_t synergy = count(ReportBucket::TS) + count(ReportBucket::DP) +
                                   count(ReportBucket::GenericPositive);
      const std::int64_t tradeoff = count(ReportBucket::TT) + count(ReportBucket::DN) +
                                    count(ReportBucket::GenericNegative);
      const std::int64_t cols[] = {s,
                                   p,
                                   synergy + tradeoff + count(ReportBucket::Neutral),
                                   synergy,
                                   count(ReportBucket::Neutral),
                                   tradeoff,
                                   count(ReportBucket::TS),
                                   count(ReportBucket::TT),
                                   count(ReportBucket::DP),
                                   count(ReportBucket::DN),
                                   count(ReportBucket::GenericPositive),
                                   count(ReportBucket::GenericNegative),
                                   d[0],
                                   d[1]};
      for (const auto v : cols) out += std::to_string(v) + ",";
      const double fractions[] = {shares.synergy, shares.neutral, shares.tradeoff, shares.tradeoff_excluding_dn,
                                  shares.buckets[index_of(ReportBucket::TS)],
                                  shares.buckets[index_of(ReportBucket::TT)]};
      for (std::size_t i = 0; i < std::size(fractions); ++i) {
        out += exact(fractions[i]);
        out += i + 1 < std::size(fractions) ? "," : "\n";
      }
    }
  return out;
}

Summary summarize(const InteractionMatrix& m, const Catalog& catalog) {
  Summary s;
  s.total_docs = m.total_docs;
  s.total_records = m.total_records;
  if (m.total_records > 0) s.global = analytics::global_proportions(m);
  for (const auto& row : m.directions)
    for (const auto& d : row) s.directed_records += d[0] + d[1];
  if (s.directed_records > 0) s.pb_to_sdg_share = analytics::directionality_share(m);

  const auto presence = [&](Axis axis, int id) -> std::optional<double> {
    if (m.total_docs <= 0) return std::nullopt;
    return analytics::presence_share(m, axis, id);
  };
  for (int i = 1; i <= kSdgCount; ++i)
    s.sdgs.push_back({i, catalog.sdg(SdgId(i)).short_name, m.doc_presence_sdg[i - 1], presence(Axis::Sdg, i),
                      analytics::axis_proportions(m, Axis::Sdg, i)});
  for (int i = 1; i <= kPbCount; ++i)
    s.pbs.push_back({i, catalog.pb(PbId(i)).short_name, m.doc_presence_pb[i - 1], presence(Axis::Pb, i),
                     analytics::axis_proportions(m, Axis::Pb, i)});
  for (int a = 1; a <= kSdgCount; ++a)
    for (int b = 1; b <= kPbCount; ++b) {
      CellSummary c;
      c.sdg = a;
      c.pb = b;
      c.shares = analytics::cell_proportions(m, SdgId(a), PbId(b));
      if (c.shares && s.global && s.global->tradeoff > 0)
        c.tradeoff_ratio_to_global = analytics::ratio_to_global(c.shares->tradeoff, s.global->tradeoff);
      c.sdg_to_pb = m.directions[a - 1][b - 1][0];
      c.pb_to_sdg = m.directions[a - 1][b - 1][1];
      s.cells.push_back(std::move(c));
    }
  return s;
}

nlohmann::json to_json(const Summary& s) {
  json sdgs = json::array();
  for (const auto& a : s.sdgs) sdgs.push_back(axis_json(a));
  json pbs = json::array();
  for (const auto& a : s.pbs) pbs.push_back(axis_json(a));
  json cells = json::array();
  for (const auto& c : s.cells)
    cells.push_back({{"sdg", c.sdg},
                     {"pb", c.pb},
                     {"shares", shares_json(c.shares)},
                     {"tradeoff_ratio_to_global", optional_number(c.tradeoff_ratio_to_global)},
                     {"sdg_to_pb", c.sdg_to_pb},
                     {"pb_to_sdg", c.pb_to_sdg}});
  return {{"total_docs", s.total_docs},
          {"total_records", s.total_records},
          {"global", shares_json(s.global)},
          {"directionality",
           {{"directed_records", s.directed_records},
            {"pb_to_sdg_share", optional_number(s.pb_to_sdg_share)},
            {"pb_to_sdg_display",
             s.pb_to_sdg_share ? json(analytics::format_percent(*s.pb_to_sdg_share)) : json()}}},
          {"sdgs", sdgs},
          {"pbs", pbs},
          {"cells", cells}};
}

Summary summary_from_json(const nlohmann::json& j) {
  try {
    Summary s;
    s.total_docs = j.at("total_docs").get<std::int64_t>();
    s.total_records = j.at("total_records").get<std::int64_t>();
    s.global = shares_from(j.at("global"));
    s.directed_records = j.at("directionality").at("directed_records").get<std::int64_t>();
    s.pb_to_sdg_share = read_optional(j.at("directionality"), "pb_to_sdg_share");
    for (const auto& a : j.at("sdgs")) s.sdgs.push_back(axis_from(a));
    for (const auto& a : j.at("pbs")) s.pbs.push_back(axis_from(a));
    for (const auto& c : j.at("cells"))
      s.cells.push_back({c.at("sdg").get<int>(), c.at("pb").get<int>(), shares_from(c.at("shares")),
                         read_optional(c, "tradeoff_ratio_to_global"), c.at("sdg_to_pb").get<std::int64_t>(),
                         c.at("pb_to_sdg").get<std::int64_t>()});
    return s;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::MissingInput, std::string("bad summary file: ") + e.what());
  }
}

std::string emit_summary_json(const InteractionMatrix& m, const Catalog& catalog) {
  return to_json(summarize(m, catalog)).dump(2) + "\n";
}

}  // namespace sdgpb::report
