#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace glfs {

enum class ErrorCode {
  InvalidParameter,
  InvalidInput,
  NumericalError,
  EmptySelection,
  ParseError,
  IoError,
};

// Stable, machine-parsable spelling used by the CLI ("invalid-parameter", ...).
std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised by the optimizer when the objective or gradient stops being finite.
/// Carries the last iterate at which everything was still finite.
class NumericalFailure : public Error {
 public:
  NumericalFailure(const std::string& message, std::vector<double> last_iterate)
      : Error(ErrorCode::NumericalError, message),
        last_iterate_(std::move(last_iterate)) {}

  const std::vector<double>& last_iterate() const noexcept { return last_iterate_; }

 private:
  std::vector<double> last_iterate_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

inline void require(bool condition, ErrorCode code, const std::string& message) {
  if (!condition) fail(code, message);
}

}  // namespace glfs
