#include "momentbc/errors.hpp"

#include <cstdio>

namespace momentbc {

std::string format_real(double x) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.3g", x);
  return buffer;
}

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ZeroCoefficient: return "ZeroCoefficient";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::NonFiniteEntry: return "NonFiniteEntry";
    case ErrorCode::SizeExceedsSpec: return "SizeExceedsSpec";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::InsufficientCoefficients: return "InsufficientCoefficients";
    case ErrorCode::HorizonMismatch: return "HorizonMismatch";
    case ErrorCode::TooFewResponseEntries: return "TooFewResponseEntries";
    case ErrorCode::TooFewMoments: return "TooFewMoments";
    case ErrorCode::EvenLength: return "EvenLength";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::SingularInput: return "SingularInput";
    case ErrorCode::CannotSeparate: return "CannotSeparate";
    case ErrorCode::ZeroFirstComponent: return "ZeroFirstComponent";
    case ErrorCode::DuplicateDiagonal: return "DuplicateDiagonal";
    case ErrorCode::DuplicateSupport: return "DuplicateSupport";
    case ErrorCode::SingularMinor: return "SingularMinor";
    case ErrorCode::Inadmissible: return "Inadmissible";
    case ErrorCode::NonDiagonalizable: return "NonDiagonalizable";
    case ErrorCode::ResidualExceeded: return "ResidualExceeded";
  }
  return "Unknown";
}

bool is_numerical_rejection(ErrorCode code) {
  switch (code) {
    case ErrorCode::SingularInput:
    case ErrorCode::CannotSeparate:
    case ErrorCode::ZeroFirstComponent:
    case ErrorCode::DuplicateDiagonal:
    case ErrorCode::DuplicateSupport:
    case ErrorCode::SingularMinor:
    case ErrorCode::Inadmissible:
    case ErrorCode::NonDiagonalizable:
    case ErrorCode::ResidualExceeded:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace momentbc
