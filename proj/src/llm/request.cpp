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

#include "sdgpb/llm/request.hpp"

#include <algorithm>
#include <cctype>
#include <climits>
#include <utility>
#include <vector>

namespace sdgpb::llm {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Number following the first occurrence of `tag` at or after `from`.
std::pair<int, std::size_t> number_after(std::string_view line, std::string_view tag, std::size_t from) {
  auto pos = line.find(tag, from);
  if (pos == std::string_view::npos) return {INT_MAX, std::string_view::npos};
  pos += tag.size();
  while (pos < line.size() && line[pos] == ' ') ++pos;
  int value = 0;
  std::size_t digits = 0;
  while (pos < line.size() && std::isdigit(static_cast<unsigned char>(line[pos])) && digits < 6) {
    value = value * 10 + (line[pos] - '0');
    ++pos;
    ++digits;
  }
  if (digits == 0) return {INT_MAX, std::string_view::npos};
  return {value, pos};
}

std::pair<int, int> pair_sort_key(std::string_view line) {
  const auto [sdg, after] = number_after(line, "SDG", 0);
  if (after == std::string_view::npos) return {INT_MAX, INT_MAX};
  const auto [pb, end] = number_after(line, "PB", after);
  return {sdg, end == std::string_view::npos ? INT_MAX : pb};
}

}  // namespace

std::string canonicalize_user_text(std::string_view user_text) {
  std::string out;
  out.reserve(user_text.size());
  std::vector<std::string_view> block;
  bool in_block = false;

  auto flush_block = [&] {
    std::stable_sort(block.begin(), block.end(), [](std::string_view a, std::string_view b) {
      const auto ka = pair_sort_key(a);
      const auto kb = pair_sort_key(b);
      if (ka != kb) return ka < kb;
      return a < b;
    });
    for (auto line : block) {
      out.append(line);
      out.push_back('\n');
    }
    block.clear();
  };

  std::size_t pos = 0;
  while (pos <= user_text.size()) {
    auto end = user_text.find('\n', pos);
    const bool last = end == std::string_view::npos;
    if (last) end = user_text.size();
    const auto line = user_text.substr(pos, end - pos);
    const auto t = trim(line);
    if (in_block && t == kPairBlockEnd) {
      flush_block();
      in_block = false;
    }
    if (in_block) {
      block.push_back(line);
    } else {
      out.append(line);
      if (!last) out.push_back('\n');
    }
    if (!in_block && t == kPairBlockBegin) in_block = true;
    if (last) break;
    pos = end + 1;
  }
  // An unterminated block is left in its original order.
  for (std::size_t i = 0; i < block.size(); ++i) {
    out.append(block[i]);
    if (i + 1 < block.size()) out.push_back('\n');
  }
  return out;
}

Digest record_key(const PromptRequest& request) {
  static constexpr std::string_view kSep("\0", 1);
  Sha256 h;
  h.update("sdgpb-record-key-v1").update(kSep);
  h.update(std::to_string(request.stage)).update(kSep);
  h.update(request.doc_id).update(kSep);
  h.update(canonicalize_user_text(request.user_text));
  return h.finish();
}

PromptRequest make_request(int stage, std::string doc_id, std::string system_text,
                           std::string user_text, DecodeParams decode) {
  PromptRequest r;
  r.stage = stage;
  r.doc_id = std::move(doc_id);
  r.system_text = std::move(system_text);
  r.user_text = std::move(user_text);
  r.decode = decode;
  r.payload_digest = record_key(r);
  return r;
}

}  // namespace sdgpb::llm
