#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace twspin {

enum class ErrorKind {
  InvalidGraph,
  DisconnectedGraph,
  BadIndex,
  ParseError,
  MultiIndexLengthMismatch,
  UnsupportedGenus,
  SizeLimitExceeded,
  DimensionMismatch,
  IllDefinedHom,
  DomainTooLarge,
  NonIntegralTotal,
  HypothesisViolated,
  AugmentationNonzero,
  NotCoprime,
  GraphMismatch,
  NotRational,
  StabilizerNotDivisible,
  BadAutOrder,
  FibreExceedsDegree,
  BadR,
  Overflow,
  InvalidArgument,
  Internal,
};

std::string_view error_kind_name(ErrorKind kind) noexcept;

/// All library failures are reported through this exception type; `kind()`
/// lets callers (the CLI in particular) map failures without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace twspin
