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

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "sdgpb/clock.hpp"
#include "sdgpb/net/backoff.hpp"
#include "sdgpb/net/http.hpp"

namespace sdgpb::corpus {

struct WorkRecord {
  std::string work_id;
  std::string title;
  std::optional<std::string> open_access_url;
  int publication_year = 0;

  bool operator==(const WorkRecord&) const = default;
};

struct WorksPage {
  std::vector<WorkRecord> works;
  std::optional<std::string> next_cursor;  // absent once results are exhausted
};

struct WorksClientOptions {
  std::string base_url = "https://api.openalex.org";
  int per_page = 200;
  std::string mailto;  // polite-pool contact, sent as a query parameter
  net::RetryPolicy retry;
};

using FilterSet = std::map<std::string, std::string>;

// Cursor-paginated client for an OpenAlex-compatible /works endpoint.
//
// A session remembers the cursors it handed out and the work ids it already
// returned: a cursor that did not come from this session is rejected with
// InvalidCursor, and a work id is never returned twice.
class WorksClient {
 public:
  WorksClient(net::HttpClient& http, WorksClientOptions options,
              Clock& clock = SystemClock::instance());

  // Throws HttpFailure, InvalidCursor, or QuotaExceeded (429 after the retry
  // budget is spent).
  WorksPage fetch_works(std::string_view query, const FilterSet& filters,
                        const std::optional<std::string>& cursor);

  // Request URL for one page; the open-access filter is always applied.
  std::string page_url(std::string_view query, const FilterSet& filters,
                       std::string_view cursor) const;

 private:
  net::HttpClient& http_;
  WorksClientOptions options_;
  Clock& clock_;
  std::mutex mutex_;
  std::set<std::string> issued_cursors_;
  std::set<std::string> seen_ids_;
};

// Work manifest: one WorkRecord JSON object per line.
void write_manifest(const std::filesystem::path& path, const std::vector<WorkRecord>& works);
std::vector<WorkRecord> read_manifest(const std::filesystem::path& path);

// Client for a Grobid-compatible PDF -> TEI extraction service.
class ExtractionClient {
 public:
  ExtractionClient(net::HttpClient& http, std::string base_url)
      : http_(http), base_url_(std::move(base_url)) {}

  // POSTs the PDF as multipart field "input"; returns the TEI document.
  // Throws HttpFailure.
  std::string pdf_to_tei(std::string_view pdf_bytes, const std::string& filename);

 private:
  net::HttpClient& http_;
  std::string base_url_;
};

// GET returning the body; throws HttpFailure on any non-2xx result.
std::string download(net::HttpClient& http, const std::string& url);

}  // namespace sdgpb::corpus
