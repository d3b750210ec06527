#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lpdc {

enum class ErrorCode {
  out_of_range,
  unknown_material,
  invalid_input,
  no_root_in_bracket,
  non_periodic_stack,
  birth_outside_crystal,
  non_square_grid,
  not_normalized,
  decomposition_failure,
  dip_not_resolved,
  same_sign_walkoff,
  unknown_preset,
  io,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace lpdc
