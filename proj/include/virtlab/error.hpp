#pragma once

#include <stdexcept>
#include <string>

namespace virtlab {

enum class ErrorCode {
  invalid_argument,
  singular_load,
  degenerate_surface,
  degenerate_pattern,
  not_transverse,
  null_field,
  anti_resonant,
  invalid_scene,
  unknown_scenario,
  unknown_kind,
  parse_error,
  io_error,
};

/// Stable snake_case name used in CLI diagnostics and API error bodies.
const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message) : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  /// True for failures caused by bad input rather than by the computation itself.
  bool is_usage() const noexcept {
    return code_ == ErrorCode::unknown_scenario || code_ == ErrorCode::unknown_kind ||
           code_ == ErrorCode::parse_error;
  }

 private:
  ErrorCode code_;
};

}  // namespace virtlab
