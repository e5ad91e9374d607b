#include "lce/rational.hpp"

#include "lce/errors.hpp"

namespace lce {

Integer factorial(unsigned n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

Rational make_rational(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const Integer& z) { return z.get_str(); }

std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(const std::string& s) {
  Rational q;
  if (s.empty() || q.set_str(s, 10) != 0 || q.get_den() == 0)
    throw Error(ErrorKind::ParseError, "bad rational: '" + s + "'");
  q.canonicalize();
  return q;
}

bool is_integer(const Rational& q) { return q.get_den() == 1; }

const char* kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DisconnectedInput: return "DisconnectedInput";
    case ErrorKind::OrderCapExceeded: return "OrderCapExceeded";
    case ErrorKind::EmptyMultiset: return "EmptyMultiset";
    case ErrorKind::DegreeSumMismatch: return "DegreeSumMismatch";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::DegreeUnderflow: return "DegreeUnderflow";
    case ErrorKind::InvalidDegree: return "InvalidDegree";
    case ErrorKind::RootArityMismatch: return "RootArityMismatch";
    case ErrorKind::NonHomogeneous: return "NonHomogeneous";
    case ErrorKind::QuadratureFailure: return "QuadratureFailure";
    case ErrorKind::SingularSecondDerivative: return "SingularSecondDerivative";
    case ErrorKind::ZeroLinearCoefficient: return "ZeroLinearCoefficient";
    case ErrorKind::ConstraintViolation: return "ConstraintViolation";
    case ErrorKind::JetOrderInsufficient: return "JetOrderInsufficient";
    case ErrorKind::SingularGamma0: return "SingularGamma0";
    case ErrorKind::BoxTooSmall: return "BoxTooSmall";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(kind_name(kind)) + ": " + what), kind_(kind) {}

}  // namespace lce
