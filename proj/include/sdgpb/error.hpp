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

#include <stdexcept>
#include <string>
#include <string_view>

namespace sdgpb {

enum class ErrorKind {
  // taxonomy
  OutOfRange,
  IllegalRefinement,
  // corpus
  HttpFailure,
  InvalidCursor,
  QuotaExceeded,
  MalformedXml,
  NotTei,
  EmptyDocument,
  // llm gateway
  RateLimited,
  Timeout,
  BackendError,
  ReplayMiss,
  // pipeline
  OverContext,
  SchemaError,
  IdOutOfRange,
  PairSetMismatch,
  UnknownCategory,
  UnknownDirection,
  ConflictingDuplicate,
  TemplateError,
  TemplateVersionMismatch,
  CheckpointRegression,
  Interrupted,
  // analytics
  DuplicateRecord,
  EmptyMatrix,
  ZeroCorpus,
  NoDirectedRecords,
  EmptyPanel,
  ZeroGlobal,
  // cli
  ConfigError,
  MissingInput,
  GoldenMismatch,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view kind_name() const noexcept { return to_string(kind_); }

 private:
  ErrorKind kind_;
};

// A model reply that cannot be used as-is. The pipeline answers these with a
// repair reprompt and a full retry before failing the document.
class ResponseError : public Error {
 public:
  using Error::Error;
};

// The completion backend could not produce a reply (after its own retries).
class BackendFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace sdgpb
