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

#include "doctest.h"
#include "json.hpp"
#include "sdgpb/clock.hpp"
#include "sdgpb/corpus/tei.hpp"
#include "sdgpb/corpus/works.hpp"
#include "sdgpb/error.hpp"
#include "sdgpb/io.hpp"
#include "test_util.hpp"

using namespace sdgpb;
using sdgpb::testing::kind_of;
using namespace sdgpb::corpus;
using sdgpb::testing::FakeHttpClient;
using sdgpb::testing::TempDir;

namespace {

constexpr const char* kTei = R"(<?xml version="1.0" encoding="UTF-8"?>
<TEI xmlns="http://www.tei-c.org/ns/1.0">
  <teiHeader>
    <fileDesc>
      <titleStmt><title level="a" type="main">Water and   food</title><title>Second title</title></titleStmt>
      <sourceDesc><biblStruct><analytic><title>HEADER-BIBL</title></analytic></biblStruct></sourceDesc>
    </fileDesc>
    <profileDesc><abstract><p>Abstract text.</p></abstract></profileDesc>
  </teiHeader>
  <text>
    <body>
      <div><head>Intro</head><p>Irrigation   expanded
        quickly.</p><p>Second paragraph.</p></div>
      <figure><head>Fig 1</head><figDesc>FIGURE-SENTINEL</figDesc></figure>
      <figure type="table"><table><row><cell>TABLE-SENTINEL</cell></row></table></figure>
      <div><p>Results with a <ref type="bibr">[3]</ref> citation.</p><note>A footnote.</note></div>
    </body>
    <back>
      <div type="acknowledgement"><p>ACK-SENTINEL</p></div>
      <div type="funding"><p>FUNDING-SENTINEL</p></div>
      <div type="annex"><p>Annex text.</p></div>
      <div type="references"><listBibl><biblStruct><title>BIB-SENTINEL</title></biblStruct></listBibl></div>
    </back>
  </text>
</TEI>)";


net::HttpResponse json_response(const nlohmann::json& body, int status = 200) {
  return {status, body.dump(), net::TransportError::None, ""};
}

nlohmann::json work(const std::string& id, bool oa = true) {
  return {{"id", "https://openalex.org/" + id},
          {"title", "Title " + id},
          {"publication_year", 2021},
          {"open_access", {{"is_oa", oa}, {"oa_url", "https://example.org/" + id + ".pdf"}}}};
}

}  // namespace

TEST_SUITE("tei") {
  TEST_CASE("section kinds follow element context") {
    const auto doc = parse_tei(kTei);
    CHECK(doc.title == "Water and food");
    auto text_of = [&](SectionKind k) {
      std::string all;
      for (const auto& d : doc.divisions)
        if (d.kind == k) all += d.text + "\n";
      return all;
    };
    CHECK(text_of(SectionKind::Other).find("Abstract text.") != std::string::npos);
    CHECK(text_of(SectionKind::Body).find("Irrigation expanded quickly.") != std::string::npos);
    CHECK(text_of(SectionKind::Figure).find("FIGURE-SENTINEL") != std::string::npos);
    CHECK(text_of(SectionKind::Figure).find("TABLE-SENTINEL") != std::string::npos);
    CHECK(text_of(SectionKind::Acknowledgment).find("ACK-SENTINEL") != std::string::npos);
    CHECK(text_of(SectionKind::Acknowledgment).find("FUNDING-SENTINEL") != std::string::npos);
    CHECK(text_of(SectionKind::Bibliography).find("BIB-SENTINEL") != std::string::npos);
    CHECK(text_of(SectionKind::Other).find("Annex text.") != std::string::npos);
  }

  TEST_CASE("pruning keeps body and other text only") {
    const auto clean = prune(parse_tei(kTei), "doc-1", "doc-1.tei.xml");
    CHECK(clean.doc_id == "doc-1");
    CHECK(clean.title == "Water and food");
    for (const auto* s : {"FIGURE-SENTINEL", "TABLE-SENTINEL", "ACK-SENTINEL", "FUNDING-SENTINEL", "BIB-SENTINEL",
                          "HEADER-BIBL", "Second title"})
      CHECK_MESSAGE(clean.body_text.find(s) == std::string::npos, s);
    CHECK(clean.body_text.find("Irrigation expanded quickly.") != std::string::npos);
    CHECK(clean.body_text.find("Results with a [3] citation.") != std::string::npos);
    CHECK(clean.body_text.find("Annex text.") != std::string::npos);
    CHECK(clean.token_estimate == estimate_tokens(clean.body_text));
  }

  TEST_CASE("rejects broken and foreign documents") {
    CHECK(kind_of([] { parse_tei("<TEI><text><body><p>open</body></TEI>"); }) == ErrorKind::MalformedXml);
    CHECK(kind_of([] { parse_tei(""); }) == ErrorKind::MalformedXml);
    CHECK(kind_of([] { parse_tei("<html><body/></html>"); }) == ErrorKind::NotTei);
    const auto empty = parse_tei(
        "<TEI><teiHeader/><text><body><figure><figDesc>only a figure</figDesc></figure></body></text></TEI>");
    CHECK(kind_of([&] { prune(empty, "e"); }) == ErrorKind::EmptyDocument);
  }

  TEST_CASE("token estimate counts code points") {
    CHECK(estimate_tokens("") == 0);
    CHECK(estimate_tokens("abcd") == 1);
    CHECK(estimate_tokens("abcde") == 2);
    CHECK(estimate_tokens("\xC3\xA9\xC3\xA9\xC3\xA9\xC3\xA9") == 1);  // four two-byte code points
  }

  TEST_CASE("whitespace normalization") {
    CHECK(normalize_whitespace("  a \n\t b  ") == "a b");
    CHECK(normalize_whitespace("") == "");
  }

  TEST_CASE("fixture corpus ingests with two skips") {
    const auto result = ingest_directory(sdgpb::testing::fixture_dir() / "corpus");
    CHECK(result.documents.size() == 32);
    REQUIRE(result.skipped.size() == 2);
    CHECK(std::is_sorted(result.documents.begin(), result.documents.end(),
                         [](const auto& a, const auto& b) { return a.doc_id < b.doc_id; }));
    for (const auto& d : result.documents) {
      CHECK(d.body_text.find("ZQX-SENTINEL") == std::string::npos);
      CHECK(d.source_path == d.doc_id + ".tei.xml");
    }
  }

  TEST_CASE("document store round trip") {
    TempDir dir;
    const auto docs = ingest_directory(sdgpb::testing::fixture_dir() / "corpus").documents;
    write_documents(dir / "docs.jsonl", docs);
    CHECK(read_documents(dir / "docs.jsonl") == docs);
  }
}

TEST_SUITE("works") {
  TEST_CASE("page url carries query, open-access filter and cursor") {
    FakeHttpClient http(std::vector<net::HttpResponse>{json_response({{"results", nlohmann::json::array()}})});
    WorksClientOptions opts;
    opts.base_url = "https://api.example.org";
    opts.per_page = 50;
    opts.mailto = "me@example.org";
    WorksClient client(http, opts);
    const auto url = client.page_url("planetary boundaries", {{"type", "article"}}, "*");
    CHECK(url ==
          "https://api.example.org/works?search=planetary%20boundaries&filter=is_oa%3Atrue%2Ctype%3Aarticle"
          "&per-page=50&cursor=%2A&mailto=me%40example.org");
  }

  TEST_CASE("cursor pagination deduplicates and drops closed works") {
    int page = 0;
    FakeHttpClient http([&](const net::HttpRequest&) {
      ++page;
      if (page == 1)
        return json_response({{"meta", {{"next_cursor", "c2"}}},
                              {"results", {work("W1"), work("W2", false), work("W3")}}});
      if (page == 2)
        return json_response({{"meta", {{"next_cursor", "c3"}}}, {"results", {work("W3"), work("W4")}}});
      return json_response({{"meta", {{"next_cursor", nullptr}}}, {"results", nlohmann::json::array()}});
    });
    WorksClient client(http, {});
    auto p1 = client.fetch_works("q", {}, std::nullopt);
    REQUIRE(p1.works.size() == 2);
    CHECK(p1.works[0].work_id == "W1");
    CHECK(p1.works[0].open_access_url == "https://example.org/W1.pdf");
    CHECK(p1.next_cursor == "c2");
    auto p2 = client.fetch_works("q", {}, p1.next_cursor);
    REQUIRE(p2.works.size() == 1);
    CHECK(p2.works[0].work_id == "W4");
    auto p3 = client.fetch_works("q", {}, p2.next_cursor);
    CHECK(p3.works.empty());
    CHECK_FALSE(p3.next_cursor.has_value());
    CHECK(http.requests[1].url.find("cursor=c2") != std::string::npos);
  }

  TEST_CASE("foreign cursors are rejected") {
    FakeHttpClient http(std::vector<net::HttpResponse>{json_response({{"results", nlohmann::json::array()}})});
    WorksClient client(http, {});
    CHECK(kind_of([&] { client.fetch_works("q", {}, std::string("forged")); }) == ErrorKind::InvalidCursor);
    CHECK(http.requests.empty());
  }

  TEST_CASE("quota exhaustion after retries") {
    FakeHttpClient http(std::vector<net::HttpResponse>{{429, "", net::TransportError::None, ""}});
    ManualClock clock;
    WorksClientOptions opts;
    opts.retry.retry_budget = 3;
    WorksClient client(http, opts, clock);
    CHECK(kind_of([&] { client.fetch_works("q", {}, std::nullopt); }) == ErrorKind::QuotaExceeded);
    CHECK(http.requests.size() == 4);
    CHECK(clock.now().count() > 0);
  }

  TEST_CASE("transient errors recover") {
    FakeHttpClient http(std::vector<net::HttpResponse>{{503, "", net::TransportError::None, ""},
                                                       {0, "", net::TransportError::Timeout, "slow"},
                                                       json_response({{"results", {work("W9")}}})});
    ManualClock clock;
    WorksClient client(http, {}, clock);
    const auto page = client.fetch_works("q", {}, std::nullopt);
    CHECK(page.works.size() == 1);
    CHECK(http.requests.size() == 3);
  }

  TEST_CASE("hard failures") {
    FakeHttpClient bad_json(std::vector<net::HttpResponse>{{200, "{", net::TransportError::None, ""}});
    CHECK(kind_of([&] { WorksClient(bad_json, {}).fetch_works("q", {}, std::nullopt); }) == ErrorKind::HttpFailure);
    FakeHttpClient not_found(std::vector<net::HttpResponse>{{404, "", net::TransportError::None, ""}});
    CHECK(kind_of([&] { WorksClient(not_found, {}).fetch_works("q", {}, std::nullopt); }) == ErrorKind::HttpFailure);
  }

  TEST_CASE("manifest round trip") {
    TempDir dir;
    const std::vector<WorkRecord> works = {{"W1", "A", std::string("https://x/1.pdf"), 2020},
                                           {"W2", "B", std::nullopt, 2019}};
    write_manifest(dir / "m.jsonl", works);
    CHECK(read_manifest(dir / "m.jsonl") == works);
  }

  TEST_CASE("extraction posts the pdf as multipart input") {
    FakeHttpClient http(std::vector<net::HttpResponse>{{200, "<TEI/>", net::TransportError::None, ""}});
    ExtractionClient extraction(http, "http://grobid:8070");
    CHECK(extraction.pdf_to_tei("%PDF-1.4", "w1.pdf") == "<TEI/>");
    REQUIRE(http.requests.size() == 1);
    CHECK(http.requests[0].method == "POST");
    CHECK(http.requests[0].url == "http://grobid:8070/api/processFulltextDocument");
    REQUIRE(http.requests[0].form.size() == 1);
    CHECK(http.requests[0].form[0].name == "input");
    CHECK(http.requests[0].form[0].content == "%PDF-1.4");
  }
}

TEST_SUITE("tei") {
  TEST_CASE("nested divisions inherit an excluded kind") {
    const auto doc = parse_tei(
        "<TEI><text><body><div><p>Kept.</p></div></body><back>"
        "<div type=\"acknowledgement\"><div><head>Thanks</head><p>NESTED-ACK</p><note>NESTED-NOTE</note></div></div>"
        "<div type=\"references\"><div><p>NESTED-BIB</p></div></div></back></text></TEI>");
    const auto clean = prune(doc, "n");
    CHECK(clean.body_text == "Kept.");
  }
}
