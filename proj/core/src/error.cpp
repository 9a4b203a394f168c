#include "swivel/error.hpp"

namespace swivel {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::NegativeEigenvalue: return "NegativeEigenvalue";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::SupportViolation: return "SupportViolation";
    case ErrorKind::DegenerateAlpha: return "DegenerateAlpha";
    case ErrorKind::StructureRequired: return "StructureRequired";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::InvalidState: return "InvalidState";
    case ErrorKind::UnknownClaim: return "UnknownClaim";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace swivel
