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
#include <string>
#include <vector>

#include "sdgpb/analytics/matrix.hpp"
#include "sdgpb/taxonomy.hpp"

namespace sdgpb::report {

// One PB bar. Segment shares are fractions of the bar; `ts` and `tt` are the
// dark overlay fractions of the same bar. All shares are 0 for empty bars.
struct BarSpec {
  int pb = 0;
  double length = 0;
  std::int64_t link_count = 0;
  double synergy = 0;
  double neutral = 0;
  double tradeoff = 0;
  double ts = 0;
  double tt = 0;

  bool operator==(const BarSpec&) const = default;
};

struct PanelSpec {
  int sdg = 0;
  std::string name;
  double paper_share = 0;
  std::int64_t link_count = 0;
  std::array<BarSpec, kPbCount> bars{};

  bool operator==(const PanelSpec&) const = default;
};

struct FigureSpec {
  std::vector<PanelSpec> panels;  // 17, ascending SDG

  bool operator==(const FigureSpec&) const = default;
};

// Throws EmptyMatrix. Panels without links get zero-length bars.
FigureSpec figure_spec(const analytics::InteractionMatrix& m, const Catalog& catalog = Catalog::builtin());

// Deterministic SVG. Panels are <g class="panel" data-sdg=...>, bars are
// <g class="bar" data-pb data-count data-length data-synergy data-neutral
// data-tradeoff data-ts data-tt> holding rects of class synergy, neutral,
// tradeoff, ts and tt.
std::string render_svg(const FigureSpec& spec);

}  // namespace sdgpb::report
