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

#include "sdgpb/corpus/tei.hpp"

#include <expat.h>

#include <algorithm>
#include <cctype>
#include <memory>
#include <optional>

#include "sdgpb/error.hpp"
#include "sdgpb/io.hpp"

namespace sdgpb::corpus {

std::string_view to_string(SectionKind kind) {
  switch (kind) {
    case SectionKind::Body: return "body";
    case SectionKind::Figure: return "figure";
    case SectionKind::Acknowledgment: return "acknowledgment";
    case SectionKind::Bibliography: return "bibliography";
    case SectionKind::Other: return "other";
  }
  return "other";
}

std::string normalize_whitespace(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

std::int64_t estimate_tokens(std::string_view text) {
  std::int64_t code_points = 0;
  for (unsigned char c : text) {
    if ((c & 0xC0) != 0x80) ++code_points;
  }
  return (code_points + 3) / 4;
}

namespace {

std::string_view local_name(const XML_Char* name) {
  std::string_view n(name);
  auto colon = n.rfind(':');
  return colon == std::string_view::npos ? n : n.substr(colon + 1);
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string attribute(const XML_Char** attrs, std::string_view wanted) {
  for (int i = 0; attrs[i] != nullptr; i += 2) {
    if (local_name(attrs[i]) == wanted) return attrs[i + 1];
  }
  return {};
}

bool is_block(std::string_view name) {
  static constexpr std::string_view kBlocks[] = {"p",    "head", "item",  "list", "cell",
                                                 "row",  "formula", "label", "figDesc",
                                                 "quote", "lg",   "l",     "ab", "bibl",
                                                 "biblStruct", "note", "title"};
  return std::find(std::begin(kBlocks), std::end(kBlocks), name) != std::end(kBlocks);
}

enum class Region { None, Header, HeaderTitle, Abstract, Front, Body, Back };

struct Frame {
  std::string name;
  bool opens_division = false;
  SectionKind kind = SectionKind::Other;
  Region region = Region::None;
};

class TeiBuilder {
 public:
  TeiDocument doc;
  XML_Parser parser = nullptr;
  bool not_tei = false;

  void start(const XML_Char* raw_name, const XML_Char** attrs) {
    const auto name = local_name(raw_name);
    if (frames_.empty() && !seen_root_) {
      seen_root_ = true;
      if (name != "TEI" && name != "teiCorpus") {
        not_tei = true;
        return;
      }
    }

    Frame frame;
    frame.name = std::string(name);
    frame.region = frames_.empty() ? Region::None : frames_.back().region;
    const bool region_change = frame.region == Region::None &&
                               (name == "front" || name == "body" || name == "back");
    if (region_change) {
      end_block();
      flush_division();
    }

    if (name == "teiHeader") {
      frame.region = Region::Header;
    } else if (frame.region == Region::Header && name == "title" && !title_done_ &&
               parent_is("titleStmt")) {
      frame.region = Region::HeaderTitle;
    } else if (frame.region == Region::Header && name == "abstract") {
      frame.region = Region::Abstract;
      open_division(frame, SectionKind::Other);
    } else if (name == "front" && frame.region == Region::None) {
      frame.region = Region::Front;
    } else if (name == "body" && frame.region == Region::None) {
      frame.region = Region::Body;
    } else if (name == "back" && frame.region == Region::None) {
      frame.region = Region::Back;
    }

    if (in_text(frame.region)) {
      const auto type = lower(attribute(attrs, "type"));
      if (name == "figure" || name == "table") {
        open_division(frame, SectionKind::Figure);
      } else if (name == "listBibl" || name == "biblStruct") {
        open_division(frame, SectionKind::Bibliography);
      } else if (name == "div") {
        if (type == "acknowledgement" || type == "acknowledgements" || type == "acknowledgment" ||
            type == "acknowledgments" || type == "funding") {
          open_division(frame, SectionKind::Acknowledgment);
        } else if (type == "references" || type == "bibliography") {
          open_division(frame, SectionKind::Bibliography);
        } else {
          open_division(frame, frame.region == Region::Body ? SectionKind::Body : SectionKind::Other);
        }
      } else if (name == "note" && !frame.opens_division) {
        open_division(frame, SectionKind::Other);
      }
      if (!frame.opens_division && is_block(name)) end_block();
    }
    frames_.push_back(std::move(frame));
    if (region_change) current_kind_ = enclosing_kind();
  }

  void end(const XML_Char* raw_name) {
    if (frames_.empty()) return;
    const Frame frame = std::move(frames_.back());
    frames_.pop_back();
    (void)raw_name;

    if (frame.region == Region::HeaderTitle) {
      if (frames_.empty() || frames_.back().region != Region::HeaderTitle) {
        doc.title = normalize_whitespace(title_);
        title_done_ = true;
      }
      return;
    }
    if (!in_text(frame.region)) return;
    const bool leaving_region = frames_.empty() || frames_.back().region != frame.region;
    if (frame.opens_division) {
      close_division();
    } else if (leaving_region) {
      end_block();
      flush_division();
    } else if (is_block(frame.name)) {
      end_block();
    }
  }

  void text(const XML_Char* s, int len) {
    if (frames_.empty()) return;
    const auto region = frames_.back().region;
    if (region == Region::HeaderTitle) {
      title_.append(s, static_cast<std::size_t>(len));
    } else if (in_text(region)) {
      block_.append(s, static_cast<std::size_t>(len));
    }
  }

  void finish() {
    end_block();
    flush_division();
  }

 private:
  static bool in_text(Region r) {
    return r == Region::Abstract || r == Region::Front || r == Region::Body || r == Region::Back;
  }

  bool parent_is(std::string_view name) const {
    return !frames_.empty() && frames_.back().name == name;
  }

  SectionKind enclosing_kind() const {
    if (!division_stack_.empty()) return division_stack_.back();
    const auto region = frames_.empty() ? Region::None : frames_.back().region;
    return region == Region::Body ? SectionKind::Body : SectionKind::Other;
  }

  // Plain divisions nested in a figure, acknowledgement or bibliography
  // division keep the excluded kind.
  void open_division(Frame& frame, SectionKind kind) {
    if (!division_stack_.empty() && (kind == SectionKind::Body || kind == SectionKind::Other)) {
      const auto outer = division_stack_.back();
      if (outer != SectionKind::Body && outer != SectionKind::Other) kind = outer;
    }
    end_block();
    flush_division();
    frame.opens_division = true;
    frame.kind = kind;
    division_stack_.push_back(kind);
    current_kind_ = kind;
  }

  void close_division() {
    end_block();
    flush_division();
    division_stack_.pop_back();
    current_kind_ = enclosing_kind();
  }

  void end_block() {
    auto line = normalize_whitespace(block_);
    block_.clear();
    if (line.empty()) return;
    if (!current_text_.empty()) current_text_.push_back('\n');
    current_text_ += line;
  }

  void flush_division() {
    if (!current_text_.empty()) {
      doc.divisions.push_back(Division{current_kind_, std::move(current_text_)});
    }
    current_text_.clear();
    current_kind_ = enclosing_kind();
  }

  std::vector<Frame> frames_;
  std::vector<SectionKind> division_stack_;
  SectionKind current_kind_ = SectionKind::Other;
  std::string block_;
  std::string current_text_;
  std::string title_;
  bool title_done_ = false;
  bool seen_root_ = false;
};

struct ParserDeleter {
  void operator()(XML_Parser p) const { XML_ParserFree(p); }
};

}  // namespace

TeiDocument parse_tei(std::string_view xml_bytes) {
  std::unique_ptr<std::remove_pointer_t<XML_Parser>, ParserDeleter> parser(XML_ParserCreate(nullptr));
  TeiBuilder builder;
  builder.parser = parser.get();
  XML_SetUserData(parser.get(), &builder);
  XML_SetElementHandler(
      parser.get(),
      [](void* ud, const XML_Char* name, const XML_Char** attrs) {
        auto* b = static_cast<TeiBuilder*>(ud);
        b->start(name, attrs);
        if (b->not_tei) XML_StopParser(b->parser, XML_FALSE);
      },
      [](void* ud, const XML_Char* name) { static_cast<TeiBuilder*>(ud)->end(name); });
  XML_SetCharacterDataHandler(parser.get(), [](void* ud, const XML_Char* s, int len) {
    static_cast<TeiBuilder*>(ud)->text(s, len);
  });

  const auto status = XML_Parse(parser.get(), xml_bytes.data(), static_cast<int>(xml_bytes.size()), 1);
  if (builder.not_tei) {
    throw Error(ErrorKind::NotTei, "root element is not TEI");
  }
  if (status != XML_STATUS_OK) {
    const auto code = XML_GetErrorCode(parser.get());
    throw Error(ErrorKind::MalformedXml,
                std::string(XML_ErrorString(code)) + " at line " +
                    std::to_string(XML_GetCurrentLineNumber(parser.get())));
  }
  builder.finish();
  return std::move(builder.doc);
}

CleanDocument prune(const TeiDocument& doc, std::string doc_id, std::string source_path) {
  CleanDocument clean;
  clean.doc_id = std::move(doc_id);
  clean.title = doc.title;
  clean.source_path = std::move(source_path);
  for (const auto& division : doc.divisions) {
    if (division.kind != SectionKind::Body && division.kind != SectionKind::Other) continue;
    if (division.text.empty()) continue;
    if (!clean.body_text.empty()) clean.body_text += "\n\n";
    clean.body_text += division.text;
  }
  if (clean.body_text.empty()) {
    throw Error(ErrorKind::EmptyDocument, "no body text left in " + clean.doc_id);
  }
  clean.token_estimate = estimate_tokens(clean.body_text);
  return clean;
}

IngestResult ingest_directory(const std::filesystem::path& corpus_dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(corpus_dir)) {
    throw Error(ErrorKind::MissingInput, "corpus directory " + corpus_dir.string() + " not found");
  }
  constexpr std::string_view kSuffix = ".tei.xml";
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(corpus_dir)) {
    const auto name = entry.path().filename().string();
    if (entry.is_regular_file() && name.size() > kSuffix.size() && name.ends_with(kSuffix)) {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());

  IngestResult result;
  for (const auto& file : files) {
    const auto name = file.filename().string();
    auto doc_id = name.substr(0, name.size() - kSuffix.size());
    try {
      auto tei = parse_tei(io::read_file(file));
      result.documents.push_back(prune(tei, doc_id, name));
    } catch (const Error& e) {
      result.skipped.push_back({doc_id, std::string(e.kind_name())});
    }
  }
  return result;
}

void write_documents(const std::filesystem::path& path, const std::vector<CleanDocument>& docs) {
  std::vector<nlohmann::json> rows;
  rows.reserve(docs.size());
  for (const auto& d : docs) {
    rows.push_back({{"doc_id", d.doc_id},
                    {"title", d.title},
                    {"body_text", d.body_text},
                    {"token_estimate", d.token_estimate},
                    {"source_path", d.source_path}});
  }
  io::write_file_atomic(path, io::to_jsonl(rows));
}

std::vector<CleanDocument> read_documents(const std::filesystem::path& path) {
  std::vector<CleanDocument> docs;
  for (const auto& row : io::read_jsonl(path)) {
    CleanDocument d;
    try {
      d.doc_id = row.at("doc_id").get<std::string>();
      d.title = row.value("title", "");
      d.body_text = row.at("body_text").get<std::string>();
      d.token_estimate = row.at("token_estimate").get<std::int64_t>();
      d.source_path = row.value("source_path", "");
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::MissingInput, path.string() + ": bad document row: " + e.what());
    }
    if (d.body_text.empty() || d.token_estimate != estimate_tokens(d.body_text)) {
      throw Error(ErrorKind::MissingInput, path.string() + ": inconsistent document " + d.doc_id);
    }
    docs.push_back(std::move(d));
  }
  return docs;
}

}  // namespace sdgpb::corpus
