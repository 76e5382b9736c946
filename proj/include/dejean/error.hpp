#pragma once

#include <stdexcept>
#include <string>

namespace dejean {

enum class ErrorCode {
  invalid_argument = 1,
  parse = 2,
  domain = 3,
  limit = 4,
  verification = 5,
  unavailable = 6,
  io = 7,
};

// Every failure raised by the library carries one of the codes above; the C
// API maps them one-to-one onto dj_status values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace dejean
