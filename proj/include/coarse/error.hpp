#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace coarse {

enum class ErrorCode {
  InvalidInput,     // malformed text, bad parameters
  FamilyMismatch,   // elements from different groups mixed
  CapExceeded,      // a window, ball or search budget would exceed its cap
  Precondition,     // operation-specific precondition failed
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

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace coarse
