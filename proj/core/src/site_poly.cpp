#include "lce/site_poly.hpp"

#include <algorithm>
#include <sstream>

#include "lce/errors.hpp"

namespace lce {

Monomial Monomial::of(Symbol s, int power) {
  Monomial m;
  m.set(s, power);
  return m;
}

void Monomial::set(Symbol s, int power) {
  auto it = std::lower_bound(f_.begin(), f_.end(), s, [](const auto& a, Symbol b) { return a.first < b; });
  if (it != f_.end() && it->first == s) {
    if (power == 0)
      f_.erase(it);
    else
      it->second = power;
  } else if (power != 0) {
    f_.insert(it, {s, power});
  }
}

int Monomial::exponent(Symbol s) const {
  for (auto& [sym, p] : f_)
    if (sym == s) return p;
  return 0;
}

int Monomial::degree() const {
  int d = 0;
  for (auto& [s, p] : f_) d += (s.kind == SymKind::Omega ? s.index : -s.index) * p;
  return d;
}

int Monomial::max_index(SymKind kind) const {
  int m = -1;
  for (auto& [s, p] : f_)
    if (s.kind == kind) m = std::max(m, s.index);
  return m;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r = *this;
  r *= o;
  return r;
}

Monomial& Monomial::operator*=(const Monomial& o) {
  for (auto& [s, p] : o.f_) set(s, exponent(s) + p);
  return *this;
}

Monomial Monomial::inverse() const { return pow(-1); }

Monomial Monomial::pow(int k) const {
  Monomial r;
  if (k == 0) return r;
  r.f_ = f_;
  for (auto& [s, p] : r.f_) p *= k;
  return r;
}

std::string Monomial::key() const {
  std::string k;
  k.reserve(3 * f_.size());
  for (auto& [s, p] : f_) {
    k.push_back(static_cast<char>(s.kind));
    k.push_back(static_cast<char>(s.index));
    k.push_back(static_cast<char>(p + 128));
  }
  return k;
}

std::string Monomial::to_text() const {
  if (f_.empty()) return "1";
  std::string out;
  for (auto& [s, p] : f_) {
    if (!out.empty()) out += "*";
    out += (s.kind == SymKind::Omega ? "w" : "g") + std::to_string(s.index);
    if (p != 1) out += "^" + std::to_string(p);
  }
  return out;
}

std::string Monomial::to_latex() const {
  if (f_.empty()) return "1";
  std::string out;
  for (auto& [s, p] : f_) {
    out += (s.kind == SymKind::Omega ? "\\omega_{" : "\\gamma_{") + std::to_string(s.index) + "}";
    if (p != 1) out += "^{" + std::to_string(p) + "}";
  }
  return out;
}

Monomial parse_monomial(const std::string& text) {
  Monomial m;
  if (text == "1" || text.empty()) return m;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, '*')) {
    if (item.size() < 2 || (item[0] != 'w' && item[0] != 'g'))
      throw Error(ErrorKind::ParseError, "bad factor '" + item + "'");
    int power = 1;
    auto caret = item.find('^');
    try {
      int index = std::stoi(item.substr(1, caret == std::string::npos ? std::string::npos : caret - 1));
      if (caret != std::string::npos) power = std::stoi(item.substr(caret + 1));
      m *= Monomial::of(item[0] == 'w' ? Symbol::omega(index) : Symbol::gamma(index), power);
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::ParseError, "bad factor '" + item + "'");
    }
  }
  return m;
}

// ---------------------------------------------------------------------------

SitePoly::SitePoly(const Rational& c) {
  if (c != 0) t_.emplace(Monomial(), c);
}

SitePoly::SitePoly(const Monomial& m, const Rational& c) {
  if (c != 0) t_.emplace(m, c);
}

Rational SitePoly::coefficient(const Monomial& m) const {
  auto it = t_.find(m);
  return it == t_.end() ? Rational(0) : it->second;
}

void SitePoly::add(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = t_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) t_.erase(it);
  }
}

SitePoly& SitePoly::operator+=(const SitePoly& o) {
  for (auto& [m, c] : o.t_) add(m, c);
  return *this;
}

SitePoly& SitePoly::operator-=(const SitePoly& o) {
  for (auto& [m, c] : o.t_) add(m, -c);
  return *this;
}

SitePoly& SitePoly::operator*=(const Rational& c) {
  if (c == 0) {
    t_.clear();
    return *this;
  }
  for (auto& [m, x] : t_) x *= c;
  return *this;
}

SitePoly SitePoly::operator+(const SitePoly& o) const {
  SitePoly r = *this;
  r += o;
  return r;
}

SitePoly SitePoly::operator-(const SitePoly& o) const {
  SitePoly r = *this;
  r -= o;
  return r;
}

SitePoly SitePoly::operator-() const {
  SitePoly r = *this;
  r *= Rational(-1);
  return r;
}

SitePoly SitePoly::operator*(const SitePoly& o) const {
  SitePoly r;
  for (auto& [m1, c1] : t_)
    for (auto& [m2, c2] : o.t_) r.add(m1 * m2, c1 * c2);
  return r;
}

SitePoly SitePoly::operator*(const Rational& c) const {
  SitePoly r = *this;
  r *= c;
  return r;
}

SitePoly SitePoly::pow(int k) const {
  if (k < 0) {
    if (t_.size() != 1) throw Error(ErrorKind::InvalidArgument, "only monomials can be inverted");
    auto& [m, c] = *t_.begin();
    Rational ck = 1;
    for (int i = 0; i < -k; ++i) ck *= c;
    return SitePoly(m.pow(k), Rational(1) / ck);
  }
  SitePoly r(Rational(1));
  for (int i = 0; i < k; ++i) r = r * *this;
  return r;
}

std::optional<int> SitePoly::homogeneous_degree() const {
  std::optional<int> d;
  for (auto& [m, c] : t_) {
    if (d && *d != m.degree()) return std::nullopt;
    d = m.degree();
  }
  return d;
}

std::string SitePoly::to_text() const {
  if (t_.empty()) return "0";
  std::string out;
  for (auto& [m, c] : t_) {
    Rational a = abs(c);
    std::string sign = c < 0 ? "-" : "+";
    if (out.empty())
      out = c < 0 ? "-" : "";
    else
      out += " " + sign + " ";
    if (m.is_one())
      out += to_string(a);
    else if (a == 1)
      out += m.to_text();
    else
      out += to_string(a) + "*" + m.to_text();
  }
  return out;
}

std::string SitePoly::to_latex() const {
  if (t_.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto& [m, c] : t_) {
    Rational a = abs(c);
    if (first)
      out += c < 0 ? "-" : "";
    else
      out += c < 0 ? " - " : " + ";
    first = false;
    std::string num;
    if (a.get_den() == 1)
      num = a == 1 && !m.is_one() ? "" : to_string(a);
    else
      num = "\\frac{" + a.get_num().get_str() + "}{" + a.get_den().get_str() + "}";
    out += num + (m.is_one() ? "" : m.to_latex());
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

SitePoly derivative(const Monomial& m, const std::function<SitePoly(Symbol)>& d_symbol) {
  SitePoly r;
  for (auto& [s, p] : m.factors()) {
    SitePoly ds = d_symbol(s);
    if (ds.is_zero()) continue;
    Monomial rest = m * Monomial::of(s, -1);
    r += ds * SitePoly(rest, Rational(p));
  }
  return r;
}

}  // namespace

SitePoly d_field(const Monomial& m) {
  return derivative(m, [](Symbol s) {
    if (s.kind == SymKind::Omega) return SitePoly(Monomial::gamma(2) * Monomial::omega(s.index + 1));
    return SitePoly(Monomial::gamma(s.index + 1));
  });
}

SitePoly d_field(const SitePoly& p) {
  SitePoly r;
  for (auto& [m, c] : p.terms()) r += d_field(m) * c;
  return r;
}

SitePoly d_source(const Monomial& m) {
  return derivative(m, [](Symbol s) {
    if (s.kind == SymKind::Gamma)
      throw Error(ErrorKind::InvalidArgument, "source derivative of a vertex function symbol");
    return SitePoly(Monomial::omega(s.index + 1));
  });
}

SitePoly d_source(const SitePoly& p) {
  SitePoly r;
  for (auto& [m, c] : p.terms()) r += d_source(m) * c;
  return r;
}

SitePoly substitute(const SitePoly& p, const std::function<std::optional<SitePoly>(Symbol)>& rule) {
  SitePoly out;
  for (auto& [m, c] : p.terms()) {
    SitePoly term(c);
    for (auto& [s, e] : m.factors()) {
      auto rep = rule(s);
      SitePoly base = rep ? *rep : SitePoly(Monomial::of(s));
      term = term * base.pow(e);
    }
    out += term;
  }
  return out;
}

}  // namespace lce
