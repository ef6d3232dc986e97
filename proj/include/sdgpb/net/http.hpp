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

#include <chrono>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace sdgpb::net {

struct FormField {
  std::string name;
  std::string content;
  std::string filename;
  std::string content_type;
};

struct HttpRequest {
  std::string method = "GET";
  std::string url;  // absolute, http:// or https://
  std::vector<std::pair<std::string, std::string>> headers;
  std::string body;
  std::string content_type;
  std::vector<FormField> form;  // multipart/form-data when non-empty
};

enum class TransportError { None, Timeout, Connection };

struct HttpResponse {
  int status = 0;
  std::string body;
  TransportError error = TransportError::None;
  std::string error_message;

  bool ok() const { return error == TransportError::None && status >= 200 && status < 300; }
};

// Blocking HTTP client. Implementations must be safe for concurrent use.
class HttpClient {
 public:
  virtual ~HttpClient() = default;
  virtual HttpResponse send(const HttpRequest& request) = 0;
};

struct HttpClientOptions {
  std::chrono::milliseconds connect_timeout{10'000};
  std::chrono::milliseconds read_timeout{120'000};
  std::string user_agent = "sdgpb/1.0";
};

std::unique_ptr<HttpClient> make_http_client(const HttpClientOptions& options = {});

// Percent-encodes everything outside the RFC 3986 unreserved set.
std::string url_encode(std::string_view text);

}  // namespace sdgpb::net
