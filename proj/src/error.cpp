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

#include "sdgpb/error.hpp"

namespace sdgpb {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::IllegalRefinement: return "IllegalRefinement";
    case ErrorKind::HttpFailure: return "HttpFailure";
    case ErrorKind::InvalidCursor: return "InvalidCursor";
    case ErrorKind::QuotaExceeded: return "QuotaExceeded";
    case ErrorKind::MalformedXml: return "MalformedXml";
    case ErrorKind::NotTei: return "NotTei";
    case ErrorKind::EmptyDocument: return "EmptyDocument";
    case ErrorKind::RateLimited: return "RateLimited";
    case ErrorKind::Timeout: return "Timeout";
    case ErrorKind::BackendError: return "BackendError";
    case ErrorKind::ReplayMiss: return "ReplayMiss";
    case ErrorKind::OverContext: return "OverContext";
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::IdOutOfRange: return "IdOutOfRange";
    case ErrorKind::PairSetMismatch: return "PairSetMismatch";
    case ErrorKind::UnknownCategory: return "UnknownCategory";
    case ErrorKind::UnknownDirection: return "UnknownDirection";
    case ErrorKind::ConflictingDuplicate: return "ConflictingDuplicate";
    case ErrorKind::TemplateError: return "TemplateError";
    case ErrorKind::TemplateVersionMismatch: return "TemplateVersionMismatch";
    case ErrorKind::CheckpointRegression: return "CheckpointRegression";
    case ErrorKind::Interrupted: return "Interrupted";
    case ErrorKind::DuplicateRecord: return "DuplicateRecord";
    case ErrorKind::EmptyMatrix: return "EmptyMatrix";
    case ErrorKind::ZeroCorpus: return "ZeroCorpus";
    case ErrorKind::NoDirectedRecords: return "NoDirectedRecords";
    case ErrorKind::EmptyPanel: return "EmptyPanel";
    case ErrorKind::ZeroGlobal: return "ZeroGlobal";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::MissingInput: return "MissingInput";
    case ErrorKind::GoldenMismatch: return "GoldenMismatch";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

}  // namespace sdgpb
