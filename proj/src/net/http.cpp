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

#include "httplib.h"

#include "sdgpb/net/http.hpp"

namespace sdgpb::net {
namespace {

struct SplitUrl {
  std::string origin;  // scheme://host[:port]
  std::string target;  // path?query
};

SplitUrl split_url(const std::string& url) {
  const auto scheme_end = url.find("://");
  const auto path_start =
      url.find('/', scheme_end == std::string::npos ? 0 : scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

class LiveHttpClient final : public HttpClient {
 public:
  explicit LiveHttpClient(HttpClientOptions options) : options_(std::move(options)) {}

  HttpResponse send(const HttpRequest& request) override {
    const auto [origin, target] = split_url(request.url);
    httplib::Client client(origin);
    client.set_connection_timeout(options_.connect_timeout);
    client.set_read_timeout(options_.read_timeout);
    client.set_write_timeout(options_.read_timeout);
    client.set_follow_location(true);

    httplib::Headers headers{{"User-Agent", options_.user_agent}};
    for (const auto& [k, v] : request.headers) headers.emplace(k, v);

    httplib::Result result;
    if (request.method == "GET") {
      result = client.Get(target, headers);
    } else if (!request.form.empty()) {
      httplib::MultipartFormDataItems items;
      for (const auto& f : request.form) {
        items.push_back({f.name, f.content, f.filename, f.content_type});
      }
      result = client.Post(target, headers, items);
    } else {
      result = client.Post(target, headers, request.body,
                           request.content_type.empty() ? "application/json" : request.content_type);
    }

    HttpResponse response;
    if (!result) {
      const auto err = result.error();
      response.error = (err == httplib::Error::Read || err == httplib::Error::ConnectionTimeout)
                           ? TransportError::Timeout
                           : TransportError::Connection;
      response.error_message = httplib::to_string(err);
      return response;
    }
    response.status = result->status;
    response.body = result->body;
    return response;
  }

 private:
  HttpClientOptions options_;
};

}  // namespace

std::unique_ptr<HttpClient> make_http_client(const HttpClientOptions& options) {
  return std::make_unique<LiveHttpClient>(options);
}

std::string url_encode(std::string_view text) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : text) {
    if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~') {
      out.push_back(static_cast<char>(c));
    } else {
      out.push_back('%');
      out.push_back(kHex[c >> 4]);
      out.push_back(kHex[c & 0x0f]);
    }
  }
  return out;
}

}  // namespace sdgpb::net
