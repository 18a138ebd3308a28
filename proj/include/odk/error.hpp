// Copyright 2026 The ODK Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace odk {

/// Machine-readable error category. Every exception thrown by the library
/// derives from odk::Error and carries one of these.
enum class ErrorCode {
  InvalidArgument,
  Syntax,
  UnknownPrefix,
  BlankNodeRejected,
  UnsupportedConstruct,
  ProjectionMismatch,
  InvalidTemplate,
  DanglingTemplate,
  DepthExceeded,
  InvalidRecord,
  InternalConsistency,
  NotFound,
  TypeViolation,
  AlreadyPublished,
  ImmutablePublished,
  Io,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Parse failure with a 1-based line/column and a 0-based byte offset.
class SyntaxError : public Error {
 public:
  SyntaxError(ErrorCode code, const std::string& message, std::size_t line,
              std::size_t column, std::size_t offset);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  std::size_t offset() const noexcept { return offset_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::size_t offset_;
  std::string detail_;
};

}  // namespace odk
