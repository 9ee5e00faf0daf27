#include "glfs/error.hpp"

namespace glfs {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidParameter: return "invalid-parameter";
    case ErrorCode::InvalidInput: return "invalid-input";
    case ErrorCode::NumericalError: return "numerical-error";
    case ErrorCode::EmptySelection: return "empty-selection";
    case ErrorCode::ParseError: return "parse-error";
    case ErrorCode::IoError: return "io-error";
  }
  return "unknown";
}

}  // namespace glfs
