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

#include "sdgpb/report/figure.hpp"

#include <cstdio>

#include "sdgpb/error.hpp"
#include "sdgpb/report/style.hpp"

namespace sdgpb::report {

namespace {

using analytics::InteractionMatrix;

std::string exact(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string px(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string xml_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (const char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

void rect(std::string& out, std::string_view cls, double x, double y, double w, double h, std::string_view fill) {
  out += "<rect class=\"" + std::string(cls) + "\" x=\"" + px(x) + "\" y=\"" + px(y) + "\" width=\"" + px(w) +
         "\" height=\"" + px(h) + "\" fill=\"" + std::string(fill) + "\"/>";
}

void text(std::string& out, std::string_view cls, double x, double y, std::string_view anchor, double size,
          std::string_view content) {
  out += "<text class=\"" + std::string(cls) + "\" x=\"" + px(x) + "\" y=\"" + px(y) + "\" text-anchor=\"" +
         std::string(anchor) + "\" font-size=\"" + px(size) + "\">" + xml_escape(content) + "</text>";
}

}  // namespace

FigureSpec figure_spec(const InteractionMatrix& m, const Catalog& catalog) {
  if (m.total_records == 0) throw Error(ErrorKind::EmptyMatrix, "no interaction records");
  FigureSpec spec;
  for (int s = 1; s <= kSdgCount; ++s) {
    const SdgId sdg(s);
    PanelSpec panel;
    panel.sdg = s;
    panel.name = catalog.sdg(sdg).short_name;
    panel.paper_share = analytics::presence_share(m, Axis::Sdg, s);
    std::array<double, kPbCount> lengths{};
    try {
      lengths = analytics::normalize_bars(m, sdg);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::EmptyPanel) throw;
    }
    for (int p = 1; p <= kPbCount; ++p) {
      BarSpec bar;
      bar.pb = p;
      bar.length = lengths[p - 1];
      if (const auto shares = analytics::cell_proportions(m, sdg, PbId(p))) {
        bar.link_count = shares->links;
        bar.synergy = shares->synergy;
        bar.neutral = shares->neutral;
        bar.tradeoff = shares->tradeoff;
        bar.ts = shares->buckets[index_of(ReportBucket::TS)];
        bar.tt = shares->buckets[index_of(ReportBucket::TT)];
      }
      panel.link_count += bar.link_count;
      panel.bars[p - 1] = bar;
    }
    spec.panels.push_back(std::move(panel));
  }
  return spec;
}

std::string render_svg(const FigureSpec& spec) {
  namespace st = style;
  const double width = 2 * st::kMargin + st::kGridColumns * st::kPanelWidth + (st::kGridColumns - 1) * st::kPanelGap;
  const double grid_height = st::kGridRows * st::kPanelHeight + (st::kGridRows - 1) * st::kPanelGap;
  const double height = 2 * st::kMargin + grid_height + st::kLegendHeight;

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + px(width) + "\" height=\"" + px(height) +
         "\" viewBox=\"0 0 " + px(width) + " " + px(height) + "\" font-family=\"" + std::string(st::kFont) +
         "\" fill=\"" + std::string(st::kText) + "\">\n";
  rect(out, "background", 0, 0, width, height, st::kBackground);
  out += "\n";

  for (std::size_t i = 0; i < spec.panels.size(); ++i) {
    const auto& panel = spec.panels[i];
    const double ox = st::kMargin + static_cast<double>(i % st::kGridColumns) * (st::kPanelWidth + st::kPanelGap);
    const double oy = st::kMargin + static_cast<double>(i / st::kGridColumns) * (st::kPanelHeight + st::kPanelGap);
    out += "<g class=\"panel\" data-sdg=\"" + std::to_string(panel.sdg) + "\" data-paper-share=\"" +
           exact(panel.paper_share) + "\" data-count=\"" + std::to_string(panel.link_count) +
           "\" transform=\"translate(" + px(ox) + "," + px(oy) + ")\">\n";
    text(out, "title", st::kLabelX, st::kTitleBaseline, "start", st::kTitleFontSize,
         "SDG " + std::to_string(panel.sdg) + " \xC2\xB7 " + panel.name);
    out += "\n<g class=\"header\">";
    text(out, "share", st::kCountRight, st::kHeaderTop + st::kHeaderHeight - 1, "end", st::kLabelFontSize,
         analytics::format_percent(panel.paper_share));
    rect(out, "track", st::kBarX, st::kHeaderTop, st::kBarMaxWidth, st::kHeaderHeight, st::kHeaderTrack);
    rect(out, "fill", st::kBarX, st::kHeaderTop, st::kBarMaxWidth * panel.paper_share, st::kHeaderHeight,
         st::kHeaderFill);
    out += "</g>\n";

    for (std::size_t b = 0; b < panel.bars.size(); ++b) {
      const auto& bar = panel.bars[b];
      const double y = st::kFirstBarTop + static_cast<double>(b) * st::kBarPitch;
      const double baseline = y + st::kBarHeight - 4;
      const double len = st::kBarMaxWidth * bar.length;
      out += "<g class=\"bar\" data-pb=\"" + std::to_string(bar.pb) + "\" data-count=\"" +
             std::to_string(bar.link_count) + "\" data-length=\"" + exact(bar.length) + "\" data-synergy=\"" +
             exact(bar.synergy) + "\" data-neutral=\"" + exact(bar.neutral) + "\" data-tradeoff=\"" +
             exact(bar.tradeoff) + "\" data-ts=\"" + exact(bar.ts) + "\" data-tt=\"" + exact(bar.tt) + "\">";
      text(out, "pb", st::kLabelX, baseline, "start", st::kLabelFontSize, "PB" + std::to_string(bar.pb));
      text(out, "count", st::kCountRight, baseline, "end", st::kLabelFontSize, std::to_string(bar.link_count));
      const double syn_w = len * bar.synergy;
      const double neu_w = len * bar.neutral;
      const double tra_w = len * bar.tradeoff;
      const double tra_x = st::kBarX + syn_w + neu_w;
      rect(out, "synergy", st::kBarX, y, syn_w, st::kBarHeight, st::kSynergy);
      rect(out, "neutral", st::kBarX + syn_w, y, neu_w, st::kBarHeight, st::kNeutral);
      rect(out, "tradeoff", tra_x, y, tra_w, st::kBarHeight, st::kTradeOff);
      rect(out, "ts", st::kBarX, y, len * bar.ts, st::kBarHeight, st::kSynergyDark);
      rect(out, "tt", tra_x, y, len * bar.tt, st::kBarHeight, st::kTradeOffDark);
      out += "</g>\n";
    }
    out += "</g>\n";
  }

  struct Key {
    std::string_view label;
    std::string_view colour;
  };
  constexpr Key keys[] = {{"Synergy", st::kSynergy},  {"True synergy (TS)", st::kSynergyDark},
                          {"Neutral", st::kNeutral},  {"Trade-off", st::kTradeOff},
                          {"True trade-off (TT)", st::kTradeOffDark}, {"Papers with the SDG", st::kHeaderFill}};
  const double ly = st::kMargin + grid_height + (st::kLegendHeight - st::kLegendSwatch) / 2;
  out += "<g class=\"legend\">";
  for (std::size_t k = 0; k < std::size(keys); ++k) {
    const double lx = st::kMargin + static_cast<double>(k) * st::kLegendItemWidth;
    rect(out, "swatch", lx, ly, st::kLegendSwatch, st::kLegendSwatch, keys[k].colour);
    text(out, "key", lx + st::kLegendSwatch + 4, ly + st::kLegendSwatch - 2, "start", st::kLabelFontSize,
         keys[k].label);
  }
  out += "</g>\n</svg>\n";
  return out;
}

}  // namespace sdgpb::report
