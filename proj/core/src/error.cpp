#include "ncft/error.hpp"

namespace ncft {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::InvalidTable: return "InvalidTable";
    case ErrorCode::UnsupportedFamily: return "UnsupportedFamily";
    case ErrorCode::DecompositionStalled: return "DecompositionStalled";
    case ErrorCode::ToleranceInvalid: return "ToleranceInvalid";
    case ErrorCode::NonFiniteEntries: return "NonFiniteEntries";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::UnsupportedSpace: return "UnsupportedSpace";
    case ErrorCode::GroupMismatch: return "GroupMismatch";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

}  // namespace ncft
