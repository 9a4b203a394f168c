#pragma once

#include <stdexcept>
#include <string>

namespace swivel {

enum class ErrorKind {
  NonConvergence,
  NegativeEigenvalue,
  DimensionMismatch,
  SupportViolation,
  DegenerateAlpha,
  StructureRequired,
  InvalidArgument,
  InvalidState,
  UnknownClaim,
  IoError,
};

const char* to_string(ErrorKind kind) noexcept;

/// Single exception type for the library; callers branch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

}  // namespace swivel
