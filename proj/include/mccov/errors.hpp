// Copyright 2026 The mccov Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MCCOV_ERRORS_HPP
#define MCCOV_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mccov {

// Every failure the library reports, as a closed set of kinds. Kinds fall
// into two classes: problems with the input data (malformed files, bad
// arguments) and contract violations between otherwise valid values
// (mismatched granularities, empty samples). The CLI maps the classes to
// distinct exit codes.
enum class ErrorKind {
  // input class
  ParseError,
  SchemaError,
  BadLength,
  MalformedHunkHeader,
  UnknownFixture,
  InvalidArgument,
  IoError,
  // contract class
  GranularityMismatch,
  UnsupportedGranularity,
  EmptyUniverse,
  UniverseMismatch,
  EmptySide,
  EmptySuite,
  ZeroMean,
  TooFewValues,
  LengthMismatch,
  ZeroVariance,
  SizeTooLarge,
  WrongGranularity,
  ArityMismatch,
  NoMutants,
  TargetFailure,
};

const char* error_kind_name(ErrorKind kind);

// True for kinds caused by unreadable or malformed input; false for
// contract violations between well-formed values.
bool is_input_error(ErrorKind kind);

class McError : public std::runtime_error {
 public:
  McError(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace mccov

#endif  // MCCOV_ERRORS_HPP
