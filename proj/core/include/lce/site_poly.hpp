#pragma once

#include <compare>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lce/rational.hpp"

namespace lce {

// omega_m: m-th derivative of the single-site free energy.
// gamma_m: m-th derivative of the single-site effective action.
enum class SymKind : unsigned char { Omega = 0, Gamma = 1 };

struct Symbol {
  SymKind kind = SymKind::Omega;
  int index = 0;
  auto operator<=>(const Symbol&) const = default;
  bool operator==(const Symbol&) const = default;
  static Symbol omega(int m) { return {SymKind::Omega, m}; }
  static Symbol gamma(int m) { return {SymKind::Gamma, m}; }
};

// Product of symbol powers with integer (possibly negative) exponents.
class Monomial {
 public:
  Monomial() = default;
  static Monomial of(Symbol s, int power = 1);
  static Monomial omega(int m, int power = 1) { return of(Symbol::omega(m), power); }
  static Monomial gamma(int m, int power = 1) { return of(Symbol::gamma(m), power); }

  const std::vector<std::pair<Symbol, int>>& factors() const { return f_; }
  int exponent(Symbol s) const;
  bool is_one() const { return f_.empty(); }

  // deg omega_m = m, deg gamma_m = -m.
  int degree() const;
  int max_index(SymKind kind) const;

  Monomial operator*(const Monomial& o) const;
  Monomial& operator*=(const Monomial& o);
  Monomial inverse() const;
  Monomial pow(int k) const;

  // Compact byte encoding; equal keys iff equal monomials.
  std::string key() const;
  std::string to_text() const;   // e.g. "w4*g2^2*w2^-1", "1" for the unit
  std::string to_latex() const;  // e.g. "\omega_{4}\gamma_{2}^{2}"

  auto operator<=>(const Monomial&) const = default;
  bool operator==(const Monomial&) const = default;

 private:
  void set(Symbol s, int power);
  std::vector<std::pair<Symbol, int>> f_;
};

// Exact Laurent polynomial at one site.
class SitePoly {
 public:
  SitePoly() = default;
  SitePoly(const Rational& c);  // NOLINT(google-explicit-constructor)
  SitePoly(const Monomial& m, const Rational& c = 1);

  const std::map<Monomial, Rational>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  std::size_t size() const { return t_.size(); }
  Rational coefficient(const Monomial& m) const;

  void add(const Monomial& m, const Rational& c);
  SitePoly& operator+=(const SitePoly& o);
  SitePoly& operator-=(const SitePoly& o);
  SitePoly& operator*=(const Rational& c);
  SitePoly operator+(const SitePoly& o) const;
  SitePoly operator-(const SitePoly& o) const;
  SitePoly operator-() const;
  SitePoly operator*(const SitePoly& o) const;
  SitePoly operator*(const Rational& c) const;
  SitePoly pow(int k) const;

  bool operator==(const SitePoly& o) const { return t_ == o.t_; }

  // Degree if every monomial has the same degree.
  std::optional<int> homogeneous_degree() const;

  std::string to_text() const;
  std::string to_latex() const;

 private:
  std::map<Monomial, Rational> t_;
};

// Derivative with respect to the field: d omega_m = gamma_2 omega_{m+1},
// d gamma_m = gamma_{m+1}.
SitePoly d_field(const Monomial& m);
SitePoly d_field(const SitePoly& p);

// Derivative with respect to the source: d omega_m = omega_{m+1}. Gamma
// symbols are functions of the field and are rejected.
SitePoly d_source(const Monomial& m);
SitePoly d_source(const SitePoly& p);

// Replaces each symbol by a polynomial. Symbols with negative exponents must
// map to a single monomial.
SitePoly substitute(const SitePoly& p, const std::function<std::optional<SitePoly>(Symbol)>& rule);

// Parses the to_text() form of a monomial or polynomial.
Monomial parse_monomial(const std::string& text);

}  // namespace lce
