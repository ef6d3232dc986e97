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

#include <string_view>

// Fixed figure style. Every length is in SVG user units (px).
//
// Layout: panels sit on a 5-column grid (4 rows, last 3 slots blank) in
// ascending SDG order. Inside a panel, top to bottom:
//
//   title            "SDG 13 · Climate Action"
//   header bar       share of documents with a link to the SDG
//   nine PB rows     "PB1" label, link count, stacked bar
//
// Each bar's length is its link count over the panel's largest count. The
// bar is split left to right into synergy, neutral and trade-off segments.
// Dark overlays mark TS at the start of the synergy segment and TT at the
// start of the trade-off segment; DP/DN and the generic buckets remain in
// the light colour.
namespace sdgpb::report::style {

inline constexpr int kGridColumns = 5;
inline constexpr int kGridRows = 4;
inline constexpr double kMargin = 20;
inline constexpr double kPanelWidth = 330;
inline constexpr double kPanelHeight = 270;
inline constexpr double kPanelGap = 16;

inline constexpr double kTitleBaseline = 16;
inline constexpr double kHeaderTop = 26;
inline constexpr double kHeaderHeight = 10;
inline constexpr double kFirstBarTop = 48;
inline constexpr double kBarPitch = 24;
inline constexpr double kBarHeight = 16;
inline constexpr double kLabelX = 0;
inline constexpr double kCountRight = 74;  // count labels are right-aligned here
inline constexpr double kBarX = 80;
inline constexpr double kBarMaxWidth = 240;

inline constexpr double kLegendHeight = 40;
inline constexpr double kLegendSwatch = 12;
inline constexpr double kLegendItemWidth = 150;

inline constexpr std::string_view kFont = "Helvetica, Arial, sans-serif";
inline constexpr double kTitleFontSize = 12;
inline constexpr double kLabelFontSize = 10;

inline constexpr std::string_view kSynergy = "#8cc68c";
inline constexpr std::string_view kSynergyDark = "#2e7d32";
inline constexpr std::string_view kNeutral = "#e8dcb5";
inline constexpr std::string_view kTradeOff = "#ef9a9a";
inline constexpr std::string_view kTradeOffDark = "#c62828";
inline constexpr std::string_view kHeaderTrack = "#e6e6e6";
inline constexpr std::string_view kHeaderFill = "#616161";
inline constexpr std::string_view kText = "#212121";
inline constexpr std::string_view kBackground = "#ffffff";

}  // namespace sdgpb::report::style
