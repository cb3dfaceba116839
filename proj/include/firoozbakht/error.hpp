// Copyright 2026 The firoozbakht-gaps Authors
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

namespace firoozbakht {

enum class ErrorCode {
  domain_error,
  range_too_large,
  limit_exceeded,
  inconsistent_index,
  malformed_line,
  non_monotonic_index,
  value_too_large,
  overlap_mismatch,
  inconsistent_table,
  coverage_gap,
  nonpositive_argument,
  not_applicable,
  inconclusive_at_cap,
  checkpoint_invalid,
  io_error,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::domain_error: return "domain-error";
    case ErrorCode::range_too_large: return "range-too-large";
    case ErrorCode::limit_exceeded: return "limit-exceeded";
    case ErrorCode::inconsistent_index: return "inconsistent-index";
    case ErrorCode::malformed_line: return "malformed-line";
    case ErrorCode::non_monotonic_index: return "non-monotonic-index";
    case ErrorCode::value_too_large: return "value-too-large";
    case ErrorCode::overlap_mismatch: return "overlap-mismatch";
    case ErrorCode::inconsistent_table: return "inconsistent-table";
    case ErrorCode::coverage_gap: return "coverage-gap";
    case ErrorCode::nonpositive_argument: return "nonpositive-argument";
    case ErrorCode::not_applicable: return "not-applicable";
    case ErrorCode::inconclusive_at_cap: return "inconclusive-at-cap";
    case ErrorCode::checkpoint_invalid: return "checkpoint-invalid";
    case ErrorCode::io_error: return "io-error";
  }
  return "unknown";
}

/// Every failure raised by the library carries one of the codes above; the
/// message is prefixed with the code's name so CLI output stays greppable.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace firoozbakht
