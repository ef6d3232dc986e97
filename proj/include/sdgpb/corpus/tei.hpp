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
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace sdgpb::corpus {

enum class SectionKind { Body, Figure, Acknowledgment, Bibliography, Other };

std::string_view to_string(SectionKind kind);

struct Division {
  SectionKind kind = SectionKind::Other;
  std::string text;
};

// Structured view of a TEI full text. Divisions appear in document order.
struct TeiDocument {
  std::string title;
  std::vector<Division> divisions;
};

// Section kinds are inferred from element context:
//
//   teiHeader/.../titleStmt/title       -> title (first one only)
//   teiHeader/profileDesc/abstract      -> Other
//   text/front                          -> Other
//   text/body, div                      -> Body
//   text/back, div                      -> Other
//   figure, table                       -> Figure
//   div[@type=acknowledg(e)ment(s)|funding] -> Acknowledgment
//   div[@type=references|bibliography], listBibl, biblStruct -> Bibliography
//   note                                -> Other
//
// Any other header content is metadata and is not captured. Block elements
// (p, head, item, ...) become lines; whitespace inside a block is collapsed.
//
// Throws MalformedXml or NotTei (root element is not TEI).
TeiDocument parse_tei(std::string_view xml_bytes);

// A pruned document ready for prompting.
struct CleanDocument {
  std::string doc_id;
  std::string title;
  std::string body_text;
  std::int64_t token_estimate = 0;
  std::string source_path;

  bool operator==(const CleanDocument&) const = default;
};

// Keeps Body and Other divisions (joined by a blank line) and drops Figure,
// Acknowledgment and Bibliography text. Throws EmptyDocument when nothing
// is left.
CleanDocument prune(const TeiDocument& doc, std::string doc_id, std::string source_path = {});

// ceil(code_points / 4). A context-window guard, not a tokenizer.
std::int64_t estimate_tokens(std::string_view text);

// Collapses whitespace runs to one space and trims the ends.
std::string normalize_whitespace(std::string_view text);

struct IngestSkip {
  std::string doc_id;
  std::string reason;
};

struct IngestResult {
  std::vector<CleanDocument> documents;  // sorted by doc_id
  std::vector<IngestSkip> skipped;
};

// Parses and prunes every `*.tei.xml` under `corpus_dir` (non-recursive).
// doc_id is the file name without the `.tei.xml` suffix.
IngestResult ingest_directory(const std::filesystem::path& corpus_dir);

// CleanDocument store: one JSON object per line.
void write_documents(const std::filesystem::path& path, const std::vector<CleanDocument>& docs);
std::vector<CleanDocument> read_documents(const std::filesystem::path& path);

}  // namespace sdgpb::corpus
