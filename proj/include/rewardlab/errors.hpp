#pragma once

#include <stdexcept>
#include <string>

namespace rewardlab {

/// Stable error categories; the C API maps these one-to-one onto rl_status.
enum class ErrorCode {
  invalid_argument = 1,
  dimension_mismatch = 2,
  io = 3,
  parse = 4,
  check_failed = 5,
  no_preference_signal = 6,
  unsupported = 7,
  internal = 8,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) { throw Error(code, msg); }

inline void require(bool ok, ErrorCode code, const std::string& msg) {
  if (!ok) fail(code, msg);
}

}  // namespace rewardlab
