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

#include <random>
#include <sstream>

#include "doctest.h"
#include "oracle.hpp"
#include "sdgpb/report/figure.hpp"
#include "sdgpb/report/style.hpp"
#include "sdgpb/report/tables.hpp"
#include "svg_probe.hpp"
#include "test_util.hpp"

using namespace sdgpb;
using namespace sdgpb::analytics;
using namespace sdgpb::report;
using sdgpb::testing::kind_of;
using sdgpb::testing::parse_svg;
using sdgpb::testing::random_records;

namespace {

InteractionMatrix sample(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return build_matrix(random_records(rng, 120, 25), 150);
}

// One cell with 69.2% synergy, 88.8% of which is TS.
InteractionMatrix overlay_case() {
  InteractionMatrix m;
  auto& c = m.counts[4][2];
  c[index_of(ReportBucket::TS)] = 76812;
  c[index_of(ReportBucket::DP)] = 86500 - 76812;
  c[index_of(ReportBucket::Neutral)] = 13500;
  c[index_of(ReportBucket::TT)] = 25000;
  m.total_records = 125000;
  m.total_docs = 125000;
  m.doc_presence_sdg[4] = 125000;
  m.doc_presence_pb[2] = 125000;
  return m;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST_SUITE("figure") {
  TEST_CASE("one panel per goal and one bar per boundary") {
    const auto m = sample(1);
    const auto spec = figure_spec(m);
    REQUIRE(spec.panels.size() == 17);
    for (int s = 1; s <= 17; ++s) {
      const auto& panel = spec.panels[s - 1];
      CHECK(panel.sdg == s);
      CHECK(panel.name == Catalog::builtin().sdg(SdgId(s)).short_name);
      CHECK(panel.paper_share == presence_share(m, Axis::Sdg, s));
      double max = 0;
      for (int p = 1; p <= 9; ++p) {
        const auto& bar = panel.bars[p - 1];
        CHECK(bar.pb == p);
        CHECK(bar.link_count == m.links(SdgId(s), PbId(p)));
        max = std::max(max, bar.length);
        if (bar.link_count > 0) CHECK(bar.synergy + bar.neutral + bar.tradeoff == doctest::Approx(1.0).epsilon(1e-12));
      }
      if (panel.link_count > 0) CHECK(max == 1.0);
    }
  }

  TEST_CASE("empty cells and panels give zero-length bars") {
    std::vector<InteractionRecord> r = {{"a", {SdgId(3), PbId(1)}, Category::Synergy, ReportBucket::TS, Direction::SdgToPb}};
    const auto spec = figure_spec(build_matrix(r, 1));
    CHECK(spec.panels[2].bars[0].length == 1.0);
    CHECK(spec.panels[2].bars[1] == BarSpec{2, 0, 0, 0, 0, 0, 0, 0});
    CHECK(spec.panels[0].link_count == 0);
    for (const auto& bar : spec.panels[0].bars) CHECK(bar.length == 0.0);
    CHECK(kind_of([] { figure_spec(build_matrix({}, 3)); }) == ErrorKind::EmptyMatrix);
  }

  TEST_CASE("overlay width is the synergy share times the TS share of synergy") {
    const auto m = overlay_case();
    const auto spec = figure_spec(m);
    const auto& bar = spec.panels[4].bars[2];
    CHECK(format_percent(bar.synergy) == "69.2%");
    CHECK(format_percent(*cell_proportions(m, SdgId(5), PbId(3))->ts_of_synergy) == "88.8%");
    const auto svg = parse_svg(render_svg(spec));
    const auto panels = svg->with_class("panel");
    const auto* node = panels[4]->with_class("bar")[2];
    const double len = style::kBarMaxWidth * 1.0;
    CHECK(node->first_with_class("ts")->number("width") == doctest::Approx(len * 0.692 * 0.888).epsilon(1e-4));
    CHECK(node->first_with_class("synergy")->number("width") == doctest::Approx(len * 0.692).epsilon(1e-4));
  }
}

TEST_SUITE("svg") {
  TEST_CASE("structure") {
    const auto m = sample(2);
    const auto text = render_svg(figure_spec(m));
    CHECK(text == render_svg(figure_spec(m)));
    const auto svg = parse_svg(text);
    CHECK(svg->name == "svg");
    const auto panels = svg->with_class("panel");
    REQUIRE(panels.size() == 17);
    int bars_total = 0;
    for (std::size_t i = 0; i < panels.size(); ++i) {
      CHECK(panels[i]->attr("data-sdg") == std::to_string(i + 1));
      CHECK(panels[i]->with_class("header").size() == 1);
      const auto bars = panels[i]->with_class("bar");
      CHECK(bars.size() == 9);
      bars_total += static_cast<int>(bars.size());
      double max = 0;
      for (const auto* bar : bars) {
        max = std::max(max, bar->number("data-length"));
        const auto w = [&](const char* cls) { return bar->first_with_class(cls)->number("width"); };
        CHECK(w("ts") <= w("synergy") + 1e-9);
        CHECK(w("tt") <= w("tradeoff") + 1e-9);
        if (bar->attr("data-count") != "0") {
          const double sum = bar->number("data-synergy") + bar->number("data-neutral") + bar->number("data-tradeoff");
          CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
          CHECK(w("synergy") + w("neutral") + w("tradeoff") ==
                doctest::Approx(style::kBarMaxWidth * bar->number("data-length")).epsilon(1e-3));
        }
      }
      if (panels[i]->attr("data-count") != "0") CHECK(max == 1.0);
    }
    CHECK(bars_total == 153);
    CHECK(svg->with_class("legend").size() == 1);
  }

  TEST_CASE("malformed xml is detected by the probe") {
    CHECK_THROWS(parse_svg("<svg><g></svg>"));
  }
}

TEST_SUITE("tables") {
  TEST_CASE("csv has one row per cell") {
    const auto m = sample(4);
    const auto rows = lines(emit_matrix_csv(m));
    REQUIRE(rows.size() == 154);
    CHECK(rows[0] == kMatrixCsvHeader);
    CHECK(rows[1].rfind("1,1,", 0) == 0);
    CHECK(rows[153].rfind("17,9,", 0) == 0);
    std::int64_t total = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const auto second = rows[i].find(',', rows[i].find(',') + 1);
      total += std::stoll(rows[i].substr(second + 1));
    }
    CHECK(total == m.total_records);
    CHECK(emit_matrix_csv(m) == emit_matrix_csv(m));
  }

  TEST_CASE("empty matrix gives zero rows") {
    const auto rows = lines(emit_matrix_csv(build_matrix({}, 0)));
    REQUIRE(rows.size() == 154);
    CHECK(rows[1] == "1,1,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0");
  }

  TEST_CASE("summary") {
    const auto m = sample(5);
    const auto s = summarize(m);
    CHECK(s.total_records == m.total_records);
    CHECK(s.sdgs.size() == 17);
    CHECK(s.pbs.size() == 9);
    CHECK(s.cells.size() == 153);
    CHECK(s.global == global_proportions(m));
    CHECK(*s.pb_to_sdg_share == directionality_share(m));
    for (const auto& c : s.cells) {
      CHECK(c.shares == cell_proportions(m, SdgId(c.sdg), PbId(c.pb)));
      if (c.shares) CHECK(*c.tradeoff_ratio_to_global == c.shares->tradeoff / s.global->tradeoff);
    }
    const auto text = emit_summary_json(m);
    CHECK(summary_from_json(nlohmann::json::parse(text)) == s);
    CHECK(text == emit_summary_json(m));
    const auto j = nlohmann::json::parse(text);
    CHECK(j.dump().find("display") != std::string::npos);
  }

  TEST_CASE("summary of an empty corpus") {
    const auto s = summarize(build_matrix({}, 0));
    CHECK_FALSE(s.global.has_value());
    CHECK_FALSE(s.pb_to_sdg_share.has_value());
    CHECK(summary_from_json(to_json(s)) == s);
  }
}
