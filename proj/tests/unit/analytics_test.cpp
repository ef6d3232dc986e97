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

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "doctest.h"
#include "oracle.hpp"
#include "sdgpb/analytics/matrix.hpp"
#include "test_util.hpp"

using namespace sdgpb;
using namespace sdgpb::analytics;
using sdgpb::testing::kind_of;
using sdgpb::testing::oracle_presence;
using sdgpb::testing::oracle_shares;
using sdgpb::testing::random_records;
using sdgpb::testing::records_with_buckets;
using sdgpb::testing::share_error;

namespace {

InteractionRecord rec(std::string doc, int s, int p, ReportBucket b, std::optional<Direction> d = std::nullopt) {
  if (!d && b != ReportBucket::Neutral) d = Direction::SdgToPb;
  return {std::move(doc), {SdgId(s), PbId(p)}, category_of(b), b, d};
}

// `n` records in one cell, each from its own document.
void fill_cell(std::vector<InteractionRecord>& out, int s, int p, ReportBucket b, int n, int& doc) {
  for (int i = 0; i < n; ++i) out.push_back(rec("d" + std::to_string(doc++), s, p, b));
}

}  // namespace

TEST_SUITE("matrix") {
  TEST_CASE("empty input") {
    const auto m = build_matrix({}, 10);
    CHECK(m.total_records == 0);
    CHECK(m.total_docs == 10);
    CHECK(presence_share(m, Axis::Pb, 6) == 0.0);
    CHECK_FALSE(cell_proportions(m, SdgId(1), PbId(1)).has_value());
    CHECK(kind_of([&] { global_proportions(m); }) == ErrorKind::EmptyMatrix);
  }

  TEST_CASE("presence counts documents") {
    const std::vector<InteractionRecord> r = {rec("a", 2, 6, ReportBucket::TS), rec("a", 6, 6, ReportBucket::Neutral)};
    const auto m = build_matrix(r, 1);
    CHECK(m.total_records == 2);
    CHECK(m.doc_presence_sdg[1] == 1);
    CHECK(m.doc_presence_sdg[5] == 1);
    CHECK(m.doc_presence_pb[5] == 1);
    CHECK(m.links(SdgId(2), PbId(6)) == 1);
    CHECK(m.directions[1][5][0] == 1);
  }

  TEST_CASE("invalid record streams") {
    const std::vector<InteractionRecord> dup = {rec("a", 2, 6, ReportBucket::TS), rec("a", 2, 6, ReportBucket::TT)};
    CHECK(kind_of([&] { build_matrix(dup, 1); }) == ErrorKind::DuplicateRecord);
    auto bad = rec("a", 1, 1, ReportBucket::TS);
    bad.category = Category::TradeOff;
    CHECK_THROWS_AS(build_matrix(std::vector{bad}, 1), std::invalid_argument);
    CHECK_THROWS_AS(build_matrix(std::vector{rec("a", 1, 1, ReportBucket::TS), rec("b", 1, 1, ReportBucket::TS)}, 1),
                    std::invalid_argument);
  }

  TEST_CASE("flatten keeps completed documents only") {
    pipeline::DocumentResult ok{"a", {SdgId(2)}, {PbId(6)}, {}, {}, "tv"};
    ok.pairs.push_back({{SdgId(2), PbId(6)}, Category::TradeOff, RefinedLabel::DoubleNegative, Direction::PbToSdg, "j", "q"});
    pipeline::DocumentResult empty{"b", {}, {}, {}, {}, "tv"};
    pipeline::DocumentResult failed{"c", {SdgId(1)}, {PbId(1)}, {}, {pipeline::DocState::Failed, 3, "SchemaError"}, "tv"};
    const std::vector<pipeline::DocumentResult> results = {ok, empty, failed};
    const auto f = flatten(results);
    CHECK(f.total_docs == 2);
    REQUIRE(f.records.size() == 1);
    CHECK(f.records[0].bucket == ReportBucket::DN);
    CHECK(f.records[0].direction == Direction::PbToSdg);
  }
}

TEST_SUITE("proportions") {
  TEST_CASE("cell shares") {
    std::vector<InteractionRecord> r;
    int doc = 0;
    fill_cell(r, 14, 2, ReportBucket::TT, 20, doc);
    fill_cell(r, 14, 2, ReportBucket::DN, 735, doc);
    fill_cell(r, 14, 2, ReportBucket::TS, 145, doc);
    fill_cell(r, 14, 2, ReportBucket::Neutral, 100, doc);
    fill_cell(r, 1, 1, ReportBucket::GenericPositive, 3, doc);
    const auto m = build_matrix(r, doc);
    const auto s = cell_proportions(m, SdgId(14), PbId(2));
    REQUIRE(s.has_value());
    CHECK(s->links == 1000);
    CHECK(format_percent(s->tradeoff) == "75.5%");
    CHECK(s->tradeoff == doctest::Approx(0.755).epsilon(1e-15));
    CHECK(s->tradeoff_excluding_dn == doctest::Approx(0.02));
    CHECK(s->synergy + s->neutral + s->tradeoff == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::accumulate(s->buckets.begin(), s->buckets.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(*s->ts_of_synergy == 1.0);
    CHECK_FALSE(cell_proportions(m, SdgId(14), PbId(3)).has_value());
    const auto all_syn = cell_proportions(m, SdgId(1), PbId(1));
    CHECK(all_syn->synergy == 1.0);
    CHECK(all_syn->neutral == 0.0);
    CHECK(all_syn->tradeoff == 0.0);
    CHECK(*all_syn->ts_of_synergy == 0.0);
    CHECK_FALSE(all_syn->tt_of_tradeoff.has_value());
  }

  TEST_CASE("double-negative share of trade-offs") {
    std::vector<InteractionRecord> r;
    int doc = 0;
    fill_cell(r, 7, 1, ReportBucket::DN, 975, doc);
    fill_cell(r, 7, 1, ReportBucket::TT, 25, doc);
    const auto s = cell_proportions(build_matrix(r, doc), SdgId(7), PbId(1));
    CHECK(*s->dn_of_tradeoff == doctest::Approx(0.975));
    CHECK(format_percent(*s->dn_of_tradeoff) == "97.5%");
  }

  TEST_CASE("global category and bucket shares") {
    const auto m1 = build_matrix(records_with_buckets({{ReportBucket::GenericPositive, 338},
                                                       {ReportBucket::GenericNegative, 449},
                                                       {ReportBucket::Neutral, 195}}, 50), 50);
    const auto g1 = global_proportions(m1);
    CHECK(g1.links == 982);
    const auto m2 = build_matrix(records_with_buckets({{ReportBucket::TS, 283}, {ReportBucket::TT, 211},
                                                       {ReportBucket::Neutral, 195}, {ReportBucket::DN, 311}}, 50),
                                 50);
    const auto g2 = global_proportions(m2);
    CHECK(format_percent(g2.buckets[index_of(ReportBucket::TS)]) == "28.3%");
    CHECK(format_percent(g2.buckets[index_of(ReportBucket::TT)]) == "21.1%");
    CHECK(format_percent(g2.neutral) == "19.5%");
    CHECK(g2.synergy + g2.neutral + g2.tradeoff == doctest::Approx(1.0).epsilon(1e-12));
  }

  TEST_CASE("axis shares pool the row or column") {
    std::vector<InteractionRecord> r;
    int doc = 0;
    fill_cell(r, 2, 6, ReportBucket::TT, 3, doc);
    fill_cell(r, 2, 1, ReportBucket::TS, 1, doc);
    fill_cell(r, 5, 6, ReportBucket::Neutral, 4, doc);
    const auto m = build_matrix(r, doc);
    CHECK(axis_proportions(m, Axis::Sdg, 2)->tradeoff == 0.75);
    CHECK(axis_proportions(m, Axis::Pb, 6)->neutral == 4.0 / 7.0);
    CHECK_FALSE(axis_proportions(m, Axis::Sdg, 17).has_value());
  }

  TEST_CASE("presence") {
    std::vector<InteractionRecord> r;
    for (int d = 0; d < 421; ++d) r.push_back(rec("d" + std::to_string(d), 1 + d % 17, 6, ReportBucket::Neutral));
    for (int d = 0; d < 120; ++d) r.push_back(rec("d" + std::to_string(d), 1 + d % 17, 2, ReportBucket::Neutral));
    const auto m = build_matrix(r, 1000);
    CHECK(presence_share(m, Axis::Pb, 6) == 0.421);
    CHECK(presence_share(m, Axis::Pb, 2) == 0.12);
    CHECK(presence_share(m, Axis::Pb, 9) == 0.0);
    CHECK(kind_of([] { presence_share(build_matrix({}, 0), Axis::Sdg, 1); }) == ErrorKind::ZeroCorpus);
  }

  TEST_CASE("directionality") {
    std::vector<InteractionRecord> r;
    for (int i = 0; i < 1000; ++i)
      r.push_back(rec("d" + std::to_string(i), 3, 4, ReportBucket::TT, i < 694 ? Direction::PbToSdg : Direction::SdgToPb));
    r.push_back(rec("n", 3, 4, ReportBucket::Neutral));
    CHECK(directionality_share(r) == 0.694);
    CHECK(directionality_share(build_matrix(r, 1001)) == 0.694);
    CHECK(format_percent(directionality_share(r)) == "69.4%");
    const std::vector<InteractionRecord> forward = {rec("a", 1, 1, ReportBucket::TS, Direction::SdgToPb)};
    CHECK(directionality_share(forward) == 0.0);
    const std::vector<InteractionRecord> neutral = {rec("a", 1, 1, ReportBucket::Neutral)};
    CHECK(kind_of([&] { directionality_share(neutral); }) == ErrorKind::NoDirectedRecords);
    CHECK(kind_of([&] { directionality_share(build_matrix(neutral, 1)); }) == ErrorKind::NoDirectedRecords);
  }

  TEST_CASE("bar normalisation") {
    std::vector<InteractionRecord> r;
    int doc = 0;
    fill_cell(r, 4, 1, ReportBucket::TS, 10, doc);
    fill_cell(r, 4, 2, ReportBucket::TT, 5, doc);
    for (int p = 1; p <= 9; ++p) fill_cell(r, 8, p, ReportBucket::Neutral, 3, doc);
    const auto m = build_matrix(r, doc);
    const auto bars = normalize_bars(m, SdgId(4));
    CHECK(bars[0] == 1.0);
    CHECK(bars[1] == 0.5);
    CHECK(std::all_of(bars.begin() + 2, bars.end(), [](double b) { return b == 0.0; }));
    const auto even = normalize_bars(m, SdgId(8));
    CHECK(std::all_of(even.begin(), even.end(), [](double b) { return b == 1.0; }));
    CHECK(kind_of([&] { normalize_bars(m, SdgId(9)); }) == ErrorKind::EmptyPanel);
  }

  TEST_CASE("ratio to global") {
    CHECK(ratio_to_global(0.755, 0.449) == doctest::Approx(1.6815).epsilon(1e-4));
    CHECK(ratio_to_global(0.3, 0.3) == 1.0);
    CHECK(kind_of([] { ratio_to_global(0.3, 0.0); }) == ErrorKind::ZeroGlobal);
  }

  TEST_CASE("percent formatting") {
    CHECK(format_percent(0.3379) == "33.8%");
    CHECK(format_percent(0.0) == "0.0%");
    CHECK(format_percent(1.0) == "100.0%");
  }
}

TEST_SUITE("analytics_properties") {
  TEST_CASE("every statistic matches a brute-force recount") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 60; ++trial) {
      const int docs = 1 + static_cast<int>(rng() % 300);
      const auto records = random_records(rng, docs, 1 + static_cast<int>(rng() % 40));
      const auto m = build_matrix(records, docs);
      CHECK(m.total_records == static_cast<std::int64_t>(records.size()));
      double worst = 0;
      if (const auto o = oracle_shares(records)) worst = std::max(worst, share_error(*o, global_proportions(m)));
      for (int s = 1; s <= kSdgCount; ++s) {
        for (int p = 1; p <= kPbCount; ++p) {
          const auto o = oracle_shares(records, s, p);
          const auto c = cell_proportions(m, SdgId(s), PbId(p));
          REQUIRE(o.has_value() == c.has_value());
          if (o) worst = std::max(worst, share_error(*o, *c));
        }
        worst = std::max(worst, std::abs(oracle_presence(records, Axis::Sdg, s, docs) - presence_share(m, Axis::Sdg, s)));
      }
      for (int p = 1; p <= kPbCount; ++p)
        worst = std::max(worst, std::abs(oracle_presence(records, Axis::Pb, p, docs) - presence_share(m, Axis::Pb, p)));
      CHECK(worst <= 1e-12);
    }
  }

  TEST_CASE("permutations and merges do not change the matrix") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
      auto records = random_records(rng, 80, 12);
      const auto m = build_matrix(records, 80);
      std::shuffle(records.begin(), records.end(), rng);
      CHECK(build_matrix(records, 80) == m);

      // Split by document so each part stays internally consistent.
      std::vector<InteractionRecord> a, b, c;
      for (const auto& r : records) {
        const auto h = std::hash<std::string>{}(r.doc_id) % 3;
        (h == 0 ? a : h == 1 ? b : c).push_back(r);
      }
      const auto distinct = [](const std::vector<InteractionRecord>& v) {
        std::set<std::string> ids;
        for (const auto& r : v) ids.insert(r.doc_id);
        return static_cast<std::int64_t>(ids.size());
      };
      const auto ta = distinct(a), tb = distinct(b);
      const auto ma = build_matrix(a, ta), mb = build_matrix(b, tb), mc = build_matrix(c, 80 - ta - tb);
      const auto left = merge(merge(ma, mb), mc);
      const auto right = merge(ma, merge(mb, mc));
      CHECK(left == right);
      CHECK(left == m);
    }
  }

  TEST_CASE("json round trip is exact") {
    std::mt19937_64 rng(3);
    const auto m = build_matrix(random_records(rng, 50, 20), 50);
    CHECK(matrix_from_json(to_json(m)) == m);
    CHECK(matrix_from_json(nlohmann::json::parse(to_json(m).dump())) == m);
    CHECK(kind_of([] { matrix_from_json(nlohmann::json::object()); }) == ErrorKind::MissingInput);
  }
}
