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

#include "sdgpb/corpus/works.hpp"

#include "json.hpp"
#include "sdgpb/error.hpp"
#include "sdgpb/hash.hpp"
#include "sdgpb/io.hpp"

namespace sdgpb::corpus {
namespace {

constexpr std::string_view kFirstCursor = "*";

std::string short_work_id(const std::string& id) {
  const auto slash = id.rfind('/');
  return slash == std::string::npos ? id : id.substr(slash + 1);
}

std::optional<std::string> string_at(const nlohmann::json& obj, const char* key) {
  if (obj.is_object() && obj.contains(key) && obj[key].is_string()) return obj[key].get<std::string>();
  return std::nullopt;
}

std::optional<WorkRecord> parse_work(const nlohmann::json& item) {
  if (!item.is_object()) return std::nullopt;
  auto id = string_at(item, "id");
  if (!id || id->empty()) return std::nullopt;

  const auto oa = item.value("open_access", nlohmann::json::object());
  if (!oa.is_object() || !oa.value("is_oa", false)) return std::nullopt;

  WorkRecord w;
  w.work_id = short_work_id(*id);
  w.title = string_at(item, "title").value_or(string_at(item, "display_name").value_or(""));
  if (item.contains("publication_year") && item["publication_year"].is_number_integer()) {
    w.publication_year = item["publication_year"].get<int>();
  }
  if (const auto best = item.value("best_oa_location", nlohmann::json()); best.is_object()) {
    w.open_access_url = string_at(best, "pdf_url");
  }
  if (!w.open_access_url) w.open_access_url = string_at(oa, "oa_url");
  return w;
}

}  // namespace

WorksClient::WorksClient(net::HttpClient& http, WorksClientOptions options, Clock& clock)
    : http_(http), options_(std::move(options)), clock_(clock) {}

std::string WorksClient::page_url(std::string_view query, const FilterSet& filters,
                                  std::string_view cursor) const {
  FilterSet all = filters;
  all["is_oa"] = "true";
  std::string filter;
  for (const auto& [k, v] : all) {
    if (!filter.empty()) filter += ',';
    filter += k + ":" + v;
  }
  std::string url = options_.base_url + "/works?search=" + net::url_encode(query) +
                    "&filter=" + net::url_encode(filter) +
                    "&per-page=" + std::to_string(options_.per_page) +
                    "&cursor=" + net::url_encode(cursor);
  if (!options_.mailto.empty()) url += "&mailto=" + net::url_encode(options_.mailto);
  return url;
}

WorksPage WorksClient::fetch_works(std::string_view query, const FilterSet& filters,
                                   const std::optional<std::string>& cursor) {
  if (query.empty()) throw Error(ErrorKind::HttpFailure, "empty works query");
  const std::string effective = cursor.value_or(std::string(kFirstCursor));
  {
    std::lock_guard lock(mutex_);
    if (effective != kFirstCursor && !issued_cursors_.contains(effective)) {
      throw Error(ErrorKind::InvalidCursor, "cursor was not issued by this session");
    }
  }

  net::HttpRequest request;
  request.url = page_url(query, filters, effective);
  request.headers.emplace_back("Accept", "application/json");

  const auto stream = mix64(std::hash<std::string>{}(request.url));
  net::HttpResponse response;
  for (int attempt = 0;; ++attempt) {
    response = http_.send(request);
    const bool transient = response.error != net::TransportError::None ||
                           net::is_retryable_status(response.status);
    if (!transient || attempt >= options_.retry.retry_budget) break;
    clock_.sleep_for(net::backoff_delay(options_.retry, stream, attempt));
  }

  if (response.error != net::TransportError::None) {
    throw Error(ErrorKind::HttpFailure, "works request failed: " + response.error_message);
  }
  if (response.status == 429) {
    throw Error(ErrorKind::QuotaExceeded, "works API quota exceeded after retries");
  }
  if (response.status == 400 && effective != kFirstCursor) {
    throw Error(ErrorKind::InvalidCursor, "works API rejected the cursor");
  }
  if (!response.ok()) {
    throw Error(ErrorKind::HttpFailure, "works API returned HTTP " + std::to_string(response.status));
  }

  nlohmann::json body;
  try {
    body = nlohmann::json::parse(response.body);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::HttpFailure, std::string("works API returned invalid JSON: ") + e.what());
  }
  if (!body.is_object() || !body.contains("results") || !body["results"].is_array()) {
    throw Error(ErrorKind::HttpFailure, "works API response lacks a results array");
  }

  WorksPage page;
  std::lock_guard lock(mutex_);
  for (const auto& item : body["results"]) {
    auto work = parse_work(item);
    if (!work || seen_ids_.contains(work->work_id)) continue;
    seen_ids_.insert(work->work_id);
    page.works.push_back(std::move(*work));
  }
  if (!body["results"].empty()) {
    const auto meta = body.value("meta", nlohmann::json::object());
    if (auto next = string_at(meta, "next_cursor"); next && !next->empty()) {
      issued_cursors_.insert(*next);
      page.next_cursor = std::move(next);
    }
  }
  return page;
}

void write_manifest(const std::filesystem::path& path, const std::vector<WorkRecord>& works) {
  std::vector<nlohmann::json> rows;
  for (const auto& w : works) {
    nlohmann::json row{{"work_id", w.work_id},
                       {"title", w.title},
                       {"publication_year", w.publication_year},
                       {"open_access_url", nullptr}};
    if (w.open_access_url) row["open_access_url"] = *w.open_access_url;
    rows.push_back(std::move(row));
  }
  io::write_file_atomic(path, io::to_jsonl(rows));
}

std::vector<WorkRecord> read_manifest(const std::filesystem::path& path) {
  std::vector<WorkRecord> works;
  for (const auto& row : io::read_jsonl(path)) {
    WorkRecord w;
    w.work_id = row.value("work_id", "");
    if (w.work_id.empty()) throw Error(ErrorKind::MissingInput, path.string() + ": row without work_id");
    w.title = row.value("title", "");
    w.publication_year = row.value("publication_year", 0);
    if (row.contains("open_access_url") && row["open_access_url"].is_string()) {
      w.open_access_url = row["open_access_url"].get<std::string>();
    }
    works.push_back(std::move(w));
  }
  return works;
}

std::string ExtractionClient::pdf_to_tei(std::string_view pdf_bytes, const std::string& filename) {
  net::HttpRequest request;
  request.method = "POST";
  request.url = base_url_ + "/api/processFulltextDocument";
  request.form.push_back({"input", std::string(pdf_bytes), filename, "application/pdf"});
  request.headers.emplace_back("Accept", "application/xml");
  const auto response = http_.send(request);
  if (!response.ok()) {
    throw Error(ErrorKind::HttpFailure,
                "extraction service failed for " + filename + ": " +
                    (response.error_message.empty() ? "HTTP " + std::to_string(response.status)
                                                    : response.error_message));
  }
  return response.body;
}

std::string download(net::HttpClient& http, const std::string& url) {
  net::HttpRequest request;
  request.url = url;
  const auto response = http.send(request);
  if (!response.ok()) {
    throw Error(ErrorKind::HttpFailure,
                "download of " + url + " failed: " +
                    (response.error_message.empty() ? "HTTP " + std::to_string(response.status)
                                                    : response.error_message));
  }
  return response.body;
}

}  // namespace sdgpb::corpus
