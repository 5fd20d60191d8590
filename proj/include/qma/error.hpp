#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace qma {

enum class ErrorCode {
  BadOrder,
  BadPrime,
  DivisionByZero,
  BadParams,
  UnknownGenerator,
  SyntaxError,
  StepCapExceeded,
  NotQNormal,
  NotOreTower,
  NotAPerfectSquare,
  ZeroParameter,
  DimensionMismatch,
  NotInvariant,
  BadCharacteristic,
  BadPresentation,
  BadFormat,
};

const char* error_code_name(ErrorCode code);

/// Every failure raised by the library carries one of the codes above.
/// Syntax errors additionally record the byte offset into the parsed text.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what,
        std::optional<std::size_t> position = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> position() const noexcept { return position_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> position_;
};

}  // namespace qma
