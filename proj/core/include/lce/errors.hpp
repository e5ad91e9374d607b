#pragma once

#include <stdexcept>
#include <string>

namespace lce {

enum class ErrorKind {
  DisconnectedInput,
  OrderCapExceeded,
  EmptyMultiset,
  DegreeSumMismatch,
  ShapeMismatch,
  DegreeUnderflow,
  InvalidDegree,
  RootArityMismatch,
  NonHomogeneous,
  QuadratureFailure,
  SingularSecondDerivative,
  ZeroLinearCoefficient,
  ConstraintViolation,
  JetOrderInsufficient,
  SingularGamma0,
  BoxTooSmall,
  ParseError,
  InvalidArgument,
};

const char* kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace lce
