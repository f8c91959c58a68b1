#pragma once

#include <stdexcept>
#include <string>

namespace mloop {

enum class ErrorKind {
  NotDivisible,
  DivisionByZero,
  DimensionMismatch,
  Unsupported,
  NotInvertible,
  NotBracketPreserving,
  NotCommuting,
  OrderBoundExceeded,
  NotUnimodular,
  FieldTooSmall,
  NotNilpotent,
  NotDiagonalizable,
  IsotropicRoot,
  EmptyComponent,
  UnclassifiedType,
  GradeViolation,
  CertificateInvalid,
  ZeroFixedAlgebra,
  SearchExhausted,
  NotMonomorphism,
  DomainMismatch,
  L1Violation,
  L2Violation,
  L3Violation,
  L4Violation,
  EvNotInjective,
  CocycleInvalid,
  FrameMismatch,
  CertificateRequired,
  ParseError,
  ValidationError,
};

const char* kind_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind k, const std::string& msg)
      : std::runtime_error(std::string(kind_name(k)) + ": " + msg), kind_(k), detail_(msg) {}
  ErrorKind kind() const { return kind_; }
  const std::string& detail() const { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

[[noreturn]] inline void fail(ErrorKind k, const std::string& msg) { throw Error(k, msg); }

}  // namespace mloop
