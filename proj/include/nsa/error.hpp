/**
 * Copyright 2026 The nsa-entangle Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef NSA_ERROR_HPP
#define NSA_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace nsa {

enum class ErrorCode {
  basis_mismatch,
  degenerate_ket,
  incompatible_states,
  null_state,
  empty_state,
  zero_probability,
  not_psd,
  oracle_scale,
  invalid_argument,
  parse_error,
  validation_error,
  usage_error,
  numerical,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::basis_mismatch: return "basis-mismatch";
    case ErrorCode::degenerate_ket: return "degenerate-ket";
    case ErrorCode::incompatible_states: return "incompatible-states";
    case ErrorCode::null_state: return "null-state";
    case ErrorCode::empty_state: return "empty-state";
    case ErrorCode::zero_probability: return "zero-probability";
    case ErrorCode::not_psd: return "not-psd";
    case ErrorCode::oracle_scale: return "oracle-scale";
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::parse_error: return "parse-error";
    case ErrorCode::validation_error: return "validation-error";
    case ErrorCode::usage_error: return "usage-error";
    case ErrorCode::numerical: return "numerical";
  }
  return "unknown";
}

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code),
        message_(message) {}

  ErrorCode code() const noexcept { return code_; }
  /// The text without the code prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorCode code_;
  std::string message_;
};

}  // namespace nsa

#endif  // NSA_ERROR_HPP
