#pragma once

#include <gmpxx.h>

#include <string>

namespace lce {

using Integer = mpz_class;
using Rational = mpq_class;

Integer factorial(unsigned n);

Rational make_rational(long num, long den = 1);

std::string to_string(const Integer& z);
std::string to_string(const Rational& q);

// Accepts "p", "-p", "p/q".
Rational parse_rational(const std::string& s);

bool is_integer(const Rational& q);

}  // namespace lce
