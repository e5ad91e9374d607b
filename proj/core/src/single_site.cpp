#include "lce/single_site.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <mutex>
#include <set>

#include "lce/dashed_trees.hpp"
#include "lce/errors.hpp"

namespace lce {

double SingleSiteModel::s(double chi) const {
  switch (kind) {
    case ModelKind::Gaussian:
      return 0.5 * chi * chi;
    case ModelKind::Quartic:
      return 0.5 * chi * chi + lambda * chi * chi * chi * chi;
    case ModelKind::Ising:
      throw Error(ErrorKind::InvalidArgument, "the Ising measure has no density");
    case ModelKind::Custom:
      return action(chi);
  }
  return 0.0;
}

std::string SingleSiteModel::name() const {
  switch (kind) {
    case ModelKind::Gaussian:
      return "gaussian";
    case ModelKind::Quartic:
      return "quartic(" + std::to_string(lambda) + ")";
    case ModelKind::Ising:
      return "ising";
    case ModelKind::Custom:
      return "custom";
  }
  return "";
}

SingleSiteModel parse_model(const std::string& name, double lambda) {
  if (name == "gaussian") return SingleSiteModel::gaussian();
  if (name == "quartic") return SingleSiteModel::quartic(lambda);
  if (name == "ising") return SingleSiteModel::ising();
  throw Error(ErrorKind::InvalidArgument, "unknown model '" + name + "'");
}

namespace {

void check_order(int order) {
  if (order < 1 || order > kMaxJetOrder)
    throw Error(ErrorKind::InvalidArgument, "jet order must lie in 1.." + std::to_string(kMaxJetOrder));
}

SingleSiteJet ising_jet(double h, int order) {
  const double t = std::tanh(h);
  // p holds the polynomial in t equal to omega_m, starting at omega_1 = t.
  std::vector<double> p{0.0, 1.0};
  SingleSiteJet j{JetBasis::Omega, h, std::log(2.0 * std::cosh(h)), {}};
  for (int m = 1; m <= order; ++m) {
    double v = 0.0;
    for (std::size_t k = p.size(); k-- > 0;) v = v * t + p[k];
    j.values.push_back(v);
    std::vector<double> dp(p.size() + 1, 0.0);
    for (std::size_t k = 1; k < p.size(); ++k) {
      dp[k - 1] += k * p[k];
      dp[k + 1] -= k * p[k];
    }
    p = std::move(dp);
  }
  return j;
}

double mode_of(const SingleSiteModel& model, double h) {
  if (model.kind == ModelKind::Quartic) {
    double x = h / (1.0 + std::abs(h));
    for (int it = 0; it < 200; ++it) {
      double f = x + 4 * model.lambda * x * x * x - h;
      double df = 1 + 12 * model.lambda * x * x;
      double dx = f / df;
      x -= dx;
      if (std::abs(dx) < 1e-15 * (1 + std::abs(x))) break;
    }
    return x;
  }
  auto neg = [&](double x) { return model.s(x) - h * x; };
  double best = 0.0;
  double bv = neg(0.0);
  for (double x = -40.0; x <= 40.0; x += 0.01) {
    double v = neg(x);
    if (v < bv) {
      bv = v;
      best = x;
    }
  }
  return boost::math::tools::brent_find_minima(neg, best - 0.02, best + 0.02, 52).first;
}

SingleSiteJet quadrature_jet(const SingleSiteModel& model, double h, int order) {
  const double x0 = mode_of(model, h);
  auto f = [&](double x) { return -model.s(x) + h * x; };
  const double f0 = f(x0);
  if (!std::isfinite(f0)) throw Error(ErrorKind::QuadratureFailure, "action not finite at its minimum");
  auto extent = [&](double dir) {
    double len = 1.0;
    for (int it = 0; it < 60; ++it, len *= 1.5) {
      double lg = f(x0 + dir * len) - f0 + order * std::log(std::max(1.0, len));
      if (lg < std::log(1e-18) - 5) return len;
    }
    throw Error(ErrorKind::QuadratureFailure, "integrand tail does not decay");
  };
  const double lo = x0 - extent(-1.0);
  const double hi = x0 + extent(1.0);
  std::vector<double> mom(order + 1);
  for (int k = 0; k <= order; ++k) {
    auto g = [&](double x) { return std::pow(x - x0, k) * std::exp(f(x) - f0); };
    double err = 0.0;
    double l1 = 0.0;
    double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(g, lo, hi, 20, 1e-13, &err, &l1);
    if (!std::isfinite(v) || err > 1e-12 * std::max(l1, 1e-300))
      throw Error(ErrorKind::QuadratureFailure, "moment " + std::to_string(k) + " did not converge");
    mom[k] = v;
  }
  std::vector<double> m(order + 1);
  for (int k = 0; k <= order; ++k) m[k] = mom[k] / mom[0];
  // Cumulants of the centred variable from its moments.
  std::vector<double> kappa(order + 1, 0.0);
  for (int n = 1; n <= order; ++n) {
    double v = m[n];
    double binom = 1.0;  // C(n-1, k-1)
    for (int k = 1; k < n; ++k) {
      v -= binom * kappa[k] * m[n - k];
      binom = binom * (n - k) / k;
    }
    kappa[n] = v;
  }
  SingleSiteJet j{JetBasis::Omega, h, std::log(mom[0]) + f0, {}};
  for (int n = 1; n <= order; ++n) j.values.push_back(n == 1 ? x0 + kappa[1] : kappa[n]);
  return j;
}

}  // namespace

SingleSiteJet omega_jet(const SingleSiteModel& model, double h, int order) {
  check_order(order);
  switch (model.kind) {
    case ModelKind::Gaussian: {
      SingleSiteJet j{JetBasis::Omega, h, 0.5 * h * h + 0.5 * std::log(2 * M_PI), std::vector<double>(order, 0.0)};
      j.values[0] = h;
      if (order >= 2) j.values[1] = 1.0;
      return j;
    }
    case ModelKind::Ising:
      return ising_jet(h, order);
    case ModelKind::Quartic:
      if (model.lambda < 0) throw Error(ErrorKind::InvalidArgument, "quartic coupling must be non-negative");
      if (model.lambda == 0) return omega_jet(SingleSiteModel::gaussian(), h, order);
      return quadrature_jet(model, h, order);
    case ModelKind::Custom:
      if (!model.action) throw Error(ErrorKind::InvalidArgument, "custom model without action");
      return quadrature_jet(model, h, order);
  }
  return {};
}

double solve_source(const SingleSiteModel& model, double phi) {
  switch (model.kind) {
    case ModelKind::Gaussian:
      return phi;
    case ModelKind::Ising:
      if (std::abs(phi) >= 1) throw Error(ErrorKind::InvalidArgument, "Ising mean field must satisfy |phi| < 1");
      return std::atanh(phi);
    default:
      break;
  }
  double h = model.kind == ModelKind::Quartic ? phi + 4 * model.lambda * phi * phi * phi : phi;
  for (int it = 0; it < 100; ++it) {
    auto j = omega_jet(model, h, 2);
    if (j[2] <= 0) throw Error(ErrorKind::SingularSecondDerivative, "omega_2 <= 0 while solving for h");
    double dh = (j[1] - phi) / j[2];
    h -= dh;
    if (std::abs(dh) < 1e-14 * (1 + std::abs(h))) return h;
  }
  throw Error(ErrorKind::InvalidArgument, "Newton iteration for h(phi) did not converge");
}

SingleSiteJet gamma_jet(const SingleSiteModel& model, double phi, int order) {
  return legendre_dual(omega_jet(model, solve_source(model, phi), order));
}

SingleSiteJet legendre_dual(const SingleSiteJet& jet) {
  const int order = jet.order();
  if (order < 1) throw Error(ErrorKind::InvalidArgument, "empty jet");
  SingleSiteJet out;
  out.basis = jet.basis == JetBasis::Omega ? JetBasis::Gamma : JetBasis::Omega;
  out.argument = jet.values[0];
  out.zeroth = jet.argument * jet.values[0] - jet.zeroth;
  out.values.push_back(jet.argument);
  if (order == 1) return out;
  if (jet.values[1] == 0) throw Error(ErrorKind::SingularSecondDerivative, "second derivative vanishes");
  std::vector<double> a(order - 1);
  double fact = 1.0;
  for (int n = 1; n < order; ++n) {
    fact *= n;
    a[n - 1] = jet.values[n] / fact;
  }
  auto b = inverse_series_coeffs(a);
  out.values.insert(out.values.end(), b.begin(), b.end());
  return out;
}

void for_each_euler_tuple(int n, const std::function<void(const std::vector<int>&)>& visit) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "series index must be positive");
  std::vector<int> k(n + 1, 0);
  std::function<void(int, int)> rec = [&](int j, int rest) {
    if (rest == 0) {
      visit(k);
      return;
    }
    if (j < 2) return;
    for (int c = rest / (j - 1); c >= 0; --c) {
      k[j] = c;
      rec(j - 1, rest - c * (j - 1));
    }
    k[j] = 0;
  };
  rec(n, n - 1);
}

namespace {

template <class T>
T ipow(const T& x, int e) {
  T r = 1;
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

}  // namespace

namespace {

long double from_integer(const Integer& z, long double) { return static_cast<long double>(z.get_d()); }
Rational from_integer(const Integer& z, const Rational&) { return Rational(z); }

template <class T>
std::vector<T> revert(const std::vector<T>& a) {
  if (a.empty()) return {};
  if (a[0] == 0) throw Error(ErrorKind::ZeroLinearCoefficient, "a_1 must be nonzero");
  const int order = static_cast<int>(a.size());
  const T inv = T(1) / a[0];
  std::vector<T> b;
  for (int n = 1; n <= order; ++n) {
    T sum = 0;
    for_each_euler_tuple(n, [&](const std::vector<int>& k) {
      int ks = 0;
      int s = 0;
      T prod = 1;
      for (int j = 2; j < static_cast<int>(k.size()); ++j) {
        if (!k[j]) continue;
        ks += k[j];
        s += j * k[j];
        prod *= ipow(a[j - 1], k[j]);
        prod /= from_integer(factorial(k[j]), T());
      }
      T term = prod * ipow(inv, 1 + s) * from_integer(factorial(s), T());
      if (ks % 2)
        sum -= term;
      else
        sum += term;
    });
    b.push_back(sum);
  }
  return b;
}

}  // namespace

std::vector<double> inverse_series_coeffs(const std::vector<double>& a) {
  // The alternating sum cancels heavily at high order.
  auto b = revert(std::vector<long double>(a.begin(), a.end()));
  return {b.begin(), b.end()};
}
std::vector<Rational> inverse_series_coeffs(const std::vector<Rational>& a) { return revert(a); }

int c_order(const std::map<int, int>& i) {
  int l = 2;
  bool any = false;
  for (auto [j, c] : i) {
    if (j < 3 || c < 0) throw Error(ErrorKind::ConstraintViolation, "indices i_j need j >= 3 and i_j >= 0");
    if (c > 0) any = true;
    l += (j - 2) * c;
  }
  if (!any) throw Error(ErrorKind::ConstraintViolation, "at least one i_j must be positive");
  for (auto [j, c] : i)
    if (c > 0 && j >= l) throw Error(ErrorKind::ConstraintViolation, "i_j with j >= l violates the degree constraint");
  return l;
}

Integer c_coefficient(const std::map<int, int>& i, int expected_l) {
  const int l = c_order(i);
  if (expected_l && expected_l != l)
    throw Error(ErrorKind::ConstraintViolation,
                "indices fix l = " + std::to_string(l) + ", not " + std::to_string(expected_l));
  int total = 0;
  for (auto [j, c] : i) total += c;
  Rational c = Rational(factorial(l - 2 + total));
  for (auto [j, n] : i) {
    Integer den = factorial(n);
    for (int r = 0; r < n; ++r) den *= factorial(j - 1);
    c /= Rational(den);
  }
  return c.get_num();
}

int ExternalTree::line_count() const {
  int e = 0;
  for (const auto& a : adj) e += static_cast<int>(a.size());
  return e / 2;
}

Monomial ExternalTree::weight() const {
  Monomial m = Monomial::omega(2, -line_count());
  for (int v = n_external; v < static_cast<int>(adj.size()); ++v) m *= Monomial::omega(static_cast<int>(adj[v].size()));
  return m;
}

namespace {

struct RawTree {
  std::vector<bool> external;
  std::vector<std::pair<int, int>> edges;
};

ExternalTree finish(const RawTree& r) {
  const int n = static_cast<int>(r.external.size());
  std::vector<int> pos(n);
  int next = 0;
  for (int v = 0; v < n; ++v)
    if (r.external[v]) pos[v] = next++;
  ExternalTree t;
  t.n_external = next;
  for (int v = 0; v < n; ++v)
    if (!r.external[v]) pos[v] = next++;
  t.adj.assign(n, {});
  for (auto [u, v] : r.edges) {
    t.adj[pos[u]].push_back(pos[v]);
    t.adj[pos[v]].push_back(pos[u]);
  }
  std::vector<std::string> labels(n);
  for (int v = 0; v < n; ++v) labels[v] = v < t.n_external ? "e" : "i";
  auto c = canonical_tree(t.adj, labels);
  t.code = c.code;
  t.aut = c.aut;
  return t;
}

}  // namespace

std::vector<ExternalTree> enumerate_external_trees(int l) {
  if (l < 2) throw Error(ErrorKind::InvalidArgument, "trees need at least two external vertices");
  if (l > kTreeRuleCap) throw Error(ErrorKind::OrderCapExceeded, "order cap is " + std::to_string(kTreeRuleCap));
  std::vector<RawTree> level{RawTree{{true, true}, {{0, 1}}}};
  for (int k = 3; k <= l; ++k) {
    std::vector<RawTree> next;
    std::set<std::string> seen;
    auto keep = [&](RawTree r) {
      auto t = finish(r);
      if (seen.insert(t.code).second) next.push_back(std::move(r));
    };
    for (const auto& t : level) {
      const int n = static_cast<int>(t.external.size());
      for (int v = 0; v < n; ++v) {
        if (t.external[v]) continue;
        RawTree r = t;
        r.external.push_back(true);
        r.edges.emplace_back(v, n);
        keep(std::move(r));
      }
      for (std::size_t e = 0; e < t.edges.size(); ++e) {
        RawTree r = t;
        auto [u, v] = r.edges[e];
        r.external.push_back(false);
        r.external.push_back(true);
        r.edges[e] = {u, n};
        r.edges.emplace_back(n, v);
        r.edges.emplace_back(n, n + 1);
        keep(std::move(r));
      }
    }
    level = std::move(next);
  }
  std::vector<ExternalTree> out;
  for (const auto& r : level) out.push_back(finish(r));
  std::sort(out.begin(), out.end(), [](const ExternalTree& a, const ExternalTree& b) { return a.code < b.code; });
  return out;
}

SitePoly gamma_tree_rule(int l) {
  SitePoly out;
  const Integer lf = factorial(l);
  for (const auto& t : enumerate_external_trees(l)) {
    Rational c(lf, t.aut);
    c.canonicalize();
    if (t.internal_count() % 2) c = -c;
    out.add(t.weight(), c);
  }
  return out;
}

SitePoly gamma_recursion(int l) {
  if (l < 2) throw Error(ErrorKind::InvalidArgument, "gamma_l needs l >= 2");
  std::vector<SitePoly> g(l + 1);
  g[2] = SitePoly(Monomial::omega(2, -1));
  for (int L = 3; L <= l; ++L) {
    // F(z) = sum_{k=1}^{L-2} gamma_{k+1} z^k / k!
    std::vector<SitePoly> f(L + 1);
    for (int k = 1; k <= L - 2; ++k) f[k] = g[k + 1] * Rational(1, factorial(k));
    std::vector<SitePoly> pw(L + 1);
    pw[0] = SitePoly(Rational(1));
    SitePoly sum;
    for (int j = 1; j <= L; ++j) {
      std::vector<SitePoly> nx(L + 1);
      for (int a = 0; a <= L; ++a) {
        if (pw[a].is_zero()) continue;
        for (int b = 1; a + b <= L; ++b)
          if (!f[b].is_zero()) nx[a + b] += pw[a] * f[b];
      }
      pw = std::move(nx);
      if (j >= 2 && !pw[L].is_zero()) {
        Rational c(factorial(L), factorial(j));
        c.canonicalize();
        sum += SitePoly(Monomial::omega(j), c) * pw[L];
      }
    }
    g[L] = -sum;
  }
  return g[l];
}

SitePoly gamma_inverse_series(int l) {
  if (l < 2) throw Error(ErrorKind::InvalidArgument, "gamma_l needs l >= 2");
  const int n = l - 1;
  SitePoly out;
  for_each_euler_tuple(n, [&](const std::vector<int>& k) {
    int ks = 0;
    int s = 0;
    Rational c = 1;
    Monomial m;
    for (int j = 2; j < static_cast<int>(k.size()); ++j) {
      if (!k[j]) continue;
      ks += k[j];
      s += j * k[j];
      Integer den = factorial(k[j]);
      for (int r = 0; r < k[j]; ++r) den *= factorial(j);
      c /= Rational(den);
      m *= Monomial::omega(j + 1, k[j]);
    }
    c *= Rational(factorial(s));
    if (ks % 2) c = -c;
    m *= Monomial::omega(2, -(1 + s));
    out.add(m, c);
  });
  return out;
}

namespace {

std::mutex cache_mutex;

SitePoly flip_basis(const SitePoly& p) {
  SitePoly out;
  for (auto& [m, c] : p.terms()) {
    Monomial f;
    for (auto& [s, e] : m.factors())
      f *= Monomial::of({s.kind == SymKind::Omega ? SymKind::Gamma : SymKind::Omega, s.index}, e);
    out.add(f, c);
  }
  return out;
}

}  // namespace

const SitePoly& gamma_in_omega(int m) {
  if (m < 2) throw Error(ErrorKind::InvalidArgument, "gamma_1 = h is not a polynomial in the omegas");
  static std::map<int, SitePoly> cache;
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto it = cache.find(m);
  if (it == cache.end()) it = cache.emplace(m, gamma_inverse_series(m)).first;
  return it->second;
}

const SitePoly& omega_in_gamma(int m) {
  static std::map<int, SitePoly> cache;
  SitePoly g = gamma_in_omega(m);
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto it = cache.find(m);
  if (it == cache.end()) it = cache.emplace(m, flip_basis(g)).first;
  return it->second;
}

SitePoly to_pure_omega(const SitePoly& p) {
  return substitute(p, [](Symbol s) -> std::optional<SitePoly> {
    if (s.kind == SymKind::Omega) return std::nullopt;
    return gamma_in_omega(s.index);
  });
}

Expression to_pure_omega(const Expression& e) {
  return map_weights(e, [](const Monomial& m) { return to_pure_omega(SitePoly(m)); });
}

}  // namespace lce
