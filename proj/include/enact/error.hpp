// Copyright 2026 The Enact Authors
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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace enact {

enum class ErrorKind {
  kInvalidArgument,
  kOutOfRange,
  kCapExceeded,
  kBudgetExceeded,
  kPrecondition,
  kLanguageMismatch,
  kNoCorrectPolicy,
  kNoOutput,
  kEmptyExtension,
  kSamplingExhausted,
  kDuplicateSelf,
  kDepthExceeded,
  kUnknownOrganism,
  kUnknownScenario,
  kParse,
  kScenario,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidArgument: return "invalid_argument";
    case ErrorKind::kOutOfRange: return "out_of_range";
    case ErrorKind::kCapExceeded: return "cap_exceeded";
    case ErrorKind::kBudgetExceeded: return "budget_exceeded";
    case ErrorKind::kPrecondition: return "precondition";
    case ErrorKind::kLanguageMismatch: return "language_mismatch";
    case ErrorKind::kNoCorrectPolicy: return "no_correct_policy";
    case ErrorKind::kNoOutput: return "no_output";
    case ErrorKind::kEmptyExtension: return "empty_extension";
    case ErrorKind::kSamplingExhausted: return "sampling_exhausted";
    case ErrorKind::kDuplicateSelf: return "duplicate_self";
    case ErrorKind::kDepthExceeded: return "depth_exceeded";
    case ErrorKind::kUnknownOrganism: return "unknown_organism";
    case ErrorKind::kUnknownScenario: return "unknown_scenario";
    case ErrorKind::kParse: return "parse";
    case ErrorKind::kScenario: return "scenario";
  }
  return "unknown";
}

/// Every failure raised by the library. `kind()` is stable and is what the
/// CLI maps onto exit codes; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

inline void require(bool condition, ErrorKind kind, const std::string& message) {
  if (!condition) fail(kind, message);
}

}  // namespace enact
