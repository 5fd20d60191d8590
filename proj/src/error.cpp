#include "qma/error.hpp"

namespace qma {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::BadOrder: return "BadOrder";
    case ErrorCode::BadPrime: return "BadPrime";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::UnknownGenerator: return "UnknownGenerator";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::StepCapExceeded: return "StepCapExceeded";
    case ErrorCode::NotQNormal: return "NotQNormal";
    case ErrorCode::NotOreTower: return "NotOreTower";
    case ErrorCode::NotAPerfectSquare: return "NotAPerfectSquare";
    case ErrorCode::ZeroParameter: return "ZeroParameter";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotInvariant: return "NotInvariant";
    case ErrorCode::BadCharacteristic: return "BadCharacteristic";
    case ErrorCode::BadPresentation: return "BadPresentation";
    case ErrorCode::BadFormat: return "BadFormat";
  }
  return "Unknown";
}

namespace {
std::string decorate(ErrorCode code, const std::string& what,
                     std::optional<std::size_t> position) {
  std::string msg = std::string(error_code_name(code)) + ": " + what;
  if (position) msg += " (at offset " + std::to_string(*position) + ")";
  return msg;
}
}  // namespace

Error::Error(ErrorCode code, const std::string& what,
             std::optional<std::size_t> position)
    : std::runtime_error(decorate(code, what, position)),
      code_(code),
      position_(position) {}

}  // namespace qma
