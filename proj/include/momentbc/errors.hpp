#pragma once

#include <stdexcept>
#include <string>

namespace momentbc {

enum class ErrorCode {
  // input validation
  ZeroCoefficient,
  LengthMismatch,
  NonFiniteEntry,
  SizeExceedsSpec,
  InvalidSpec,
  InsufficientCoefficients,
  HorizonMismatch,
  TooFewResponseEntries,
  TooFewMoments,
  EvenLength,
  NotSymmetric,
  ParseError,
  // numerical rejection
  SingularInput,
  CannotSeparate,
  ZeroFirstComponent,
  DuplicateDiagonal,
  DuplicateSupport,
  SingularMinor,
  Inadmissible,
  NonDiagonalizable,
  ResidualExceeded,
};

const char* to_string(ErrorCode code);

/// Short %g rendering of a real for diagnostics.
std::string format_real(double x);

/// True for failures of a numerical condition on otherwise well-formed input
/// (CLI exit code 3); false for malformed input (exit code 2).
bool is_numerical_rejection(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace momentbc
