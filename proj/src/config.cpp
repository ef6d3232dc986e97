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

#include "sdgpb/config.hpp"

#include <cstdlib>
#include <set>

#include "json.hpp"
#include "sdgpb/error.hpp"
#include "sdgpb/io.hpp"

namespace sdgpb {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& message) { throw Error(ErrorKind::ConfigError, message); }

void only_keys(const json& obj, const std::string& where, std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) fail(where + " must be an object");
  const std::set<std::string_view> ok(allowed);
  for (const auto& [key, value] : obj.items())
    if (!ok.contains(key)) fail("unknown key " + where + "." + key);
}

template <typename T>
void read(const json& obj, const char* key, T& out, const std::string& where) {
  if (!obj.contains(key) || obj.at(key).is_null()) return;
  try {
    out = obj.at(key).get<T>();
  } catch (const json::exception&) {
    fail(where + "." + key + " has the wrong type");
  }
}

void read_path(const json& obj, const char* key, std::optional<std::filesystem::path>& out,
               const std::filesystem::path& base, const std::string& where) {
  std::string text;
  read(obj, key, text, where);
  if (!text.empty()) out = base / text;
}

void read_path(const json& obj, const char* key, std::filesystem::path& out, const std::filesystem::path& base,
               const std::string& where) {
  std::optional<std::filesystem::path> p;
  read_path(obj, key, p, base, where);
  if (p) out = *p;
}

}  // namespace

std::string_view to_string(Backend b) {
  switch (b) {
    case Backend::Live: return "live";
    case Backend::Record: return "record";
    case Backend::Replay: return "replay";
  }
  return "?";
}

std::optional<Backend> parse_backend(std::string_view text) {
  if (text == "live") return Backend::Live;
  if (text == "record") return Backend::Record;
  if (text == "replay") return Backend::Replay;
  return std::nullopt;
}

std::filesystem::path RunConfig::effective_cache_dir() const {
  return cache_dir ? *cache_dir : run_dir / "llm_cache";
}

RunConfig parse_config(std::string_view json_text, const std::filesystem::path& base_dir) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::exception& e) {
    fail(std::string("config is not valid JSON: ") + e.what());
  }
  only_keys(root, "config",
            {"corpus_dir", "run_dir", "backend", "cache_dir", "template_dir", "catalog", "llm", "pipeline", "fetch"});
  RunConfig c;
  c.corpus_dir = base_dir / c.corpus_dir;
  c.run_dir = base_dir / c.run_dir;
  read_path(root, "corpus_dir", c.corpus_dir, base_dir, "config");
  read_path(root, "run_dir", c.run_dir, base_dir, "config");
  read_path(root, "cache_dir", c.cache_dir, base_dir, "config");
  read_path(root, "template_dir", c.template_dir, base_dir, "config");
  read_path(root, "catalog", c.catalog, base_dir, "config");
  std::string backend = std::string(to_string(c.backend));
  read(root, "backend", backend, "config");
  const auto b = parse_backend(backend);
  if (!b) fail("backend must be live, record or replay");
  c.backend = *b;

  if (root.contains("llm")) {
    const auto& l = root.at("llm");
    only_keys(l, "llm",
              {"endpoint", "models", "temperature", "max_output_tokens", "context_budget_tokens", "rpm_limit",
               "retry_budget", "base_delay_ms", "max_delay_ms", "jitter", "timeout_s"});
    read(l, "endpoint", c.llm.endpoint, "llm");
    read(l, "models", c.llm.models, "llm");
    read(l, "temperature", c.llm.temperature, "llm");
    read(l, "max_output_tokens", c.llm.max_output_tokens, "llm");
    read(l, "context_budget_tokens", c.llm.context_budget_tokens, "llm");
    read(l, "rpm_limit", c.llm.rpm_limit, "llm");
    read(l, "retry_budget", c.llm.retry_budget, "llm");
    read(l, "base_delay_ms", c.llm.base_delay_ms, "llm");
    read(l, "max_delay_ms", c.llm.max_delay_ms, "llm");
    read(l, "jitter", c.llm.jitter, "llm");
    read(l, "timeout_s", c.llm.timeout_s, "llm");
  }
  if (root.contains("pipeline")) {
    const auto& p = root.at("pipeline");
    only_keys(p, "pipeline", {"batch_cap", "worker_count"});
    read(p, "batch_cap", c.batch_cap, "pipeline");
    read(p, "worker_count", c.worker_count, "pipeline");
  }
  if (root.contains("fetch")) {
    const auto& f = root.at("fetch");
    only_keys(f, "fetch",
              {"base_url", "query", "filters", "per_page", "max_works", "mailto", "extraction_url", "pdf_dir"});
    read(f, "base_url", c.fetch.base_url, "fetch");
    read(f, "query", c.fetch.query, "fetch");
    read(f, "filters", c.fetch.filters, "fetch");
    read(f, "per_page", c.fetch.per_page, "fetch");
    read(f, "max_works", c.fetch.max_works, "fetch");
    read(f, "mailto", c.fetch.mailto, "fetch");
    read(f, "extraction_url", c.fetch.extraction_url, "fetch");
    read_path(f, "pdf_dir", c.fetch.pdf_dir, base_dir, "fetch");
  }
  if (const char* key = std::getenv("SDGPB_API_KEY")) c.api_key = key;
  validate(c);
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::string text;
  try {
    text = io::read_file(path);
  } catch (const Error&) {
    fail("cannot read config file " + path.string());
  }
  return parse_config(text, path.parent_path().empty() ? std::filesystem::path(".") : path.parent_path());
}

void validate(const RunConfig& c) {
  if (c.batch_cap < 1) fail("batch_cap must be at least 1");
  if (c.worker_count < 1) fail("worker_count must be at least 1");
  if (c.llm.rpm_limit < 0) fail("rpm_limit must not be negative");
  if (c.llm.retry_budget < 0) fail("retry_budget must not be negative");
  if (c.llm.base_delay_ms < 0 || c.llm.max_delay_ms < c.llm.base_delay_ms) fail("bad backoff delays");
  if (c.llm.jitter < 0 || c.llm.jitter > 1) fail("jitter must lie in [0, 1]");
  if (c.llm.context_budget_tokens < 1) fail("context_budget_tokens must be positive");
  if (c.llm.timeout_s < 1) fail("timeout_s must be positive");
  for (const auto t : c.llm.max_output_tokens)
    if (t < 1) fail("max_output_tokens must be positive");
  for (const auto& m : c.llm.models)
    if (m.empty()) fail("model names must not be empty");
  if (c.fetch.per_page < 1 || c.fetch.per_page > 200) fail("per_page must lie in [1, 200]");
  if (c.fetch.max_works < 0) fail("max_works must not be negative");
}

}  // namespace sdgpb
