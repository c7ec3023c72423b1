#pragma once

#include <stdexcept>
#include <string>

namespace sudler {

enum class ErrorCode {
  invalid_argument = 1,
  integer_argument,     // sine factor argument is an exact integer
  zero_factor,          // a product factor evaluated to exactly zero
  non_positive_factor,  // a C-product factor left (0, 1]
  not_coprime,
  precision_exhausted,
  tail_too_large,
  sum_exceeds_one,
  out_of_range,
  io,
};

const char* error_code_name(ErrorCode code) noexcept;

/// Exception type thrown by every operation in the library. The C API maps
/// `code()` onto `sudler_status`.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace sudler
