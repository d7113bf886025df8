#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace vsait {

enum class ErrorCode {
  kInvalidArgument,
  kDegenerateInput,
  kInvalidState,
  kConfig,
  kIo,
  // VSAF parse failures.
  kBadMagic,
  kVersionMismatch,
  kTruncated,
  kDimensionOverflow,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries a machine-checkable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

inline void require(bool condition, ErrorCode code, const std::string& message) {
  if (!condition) fail(code, message);
}

}  // namespace vsait
