#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace holres {

enum class ErrorKind {
  IllAritied,
  BadArity,
  InconsistentVar,
  IndexOutOfRange,
  DepthExceeded,
  SyntaxError,
  UnknownConstant,
  ArityError,
  DuplicateRuleName,
  UnknownRule,
  TacticFailed,
  BacktrackExhausted,
  EmptyHistory,
  GoalsRemain,
  ReplayMismatch,
  FileError,
  ProtocolError,
};

std::string_view error_kind_name(ErrorKind kind);

/// All kernel failures are reported as this exception; the kind is stable
/// and is what the protocol layer serializes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace holres
