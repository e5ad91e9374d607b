#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "lce/expression.hpp"
#include "lce/rational.hpp"
#include "lce/site_poly.hpp"

namespace lce {

inline constexpr int kMaxJetOrder = 16;
inline constexpr int kTreeRuleCap = 12;

enum class ModelKind { Gaussian, Quartic, Ising, Custom };

// Single-site measure d(chi) exp(-s(chi)).
struct SingleSiteModel {
  ModelKind kind = ModelKind::Gaussian;
  double lambda = 0.0;                    // Quartic: s = chi^2/2 + lambda chi^4
  std::function<double(double)> action;  // Custom only

  static SingleSiteModel gaussian() { return {ModelKind::Gaussian, 0.0, {}}; }
  static SingleSiteModel quartic(double lambda) { return {ModelKind::Quartic, lambda, {}}; }
  static SingleSiteModel ising() { return {ModelKind::Ising, 0.0, {}}; }
  static SingleSiteModel custom(std::function<double(double)> s) { return {ModelKind::Custom, 0.0, std::move(s)}; }

  double s(double chi) const;
  std::string name() const;
};

SingleSiteModel parse_model(const std::string& name, double lambda = 0.1);

enum class JetBasis { Omega, Gamma };

// values[m-1] is the m-th derivative at `argument`, m = 1..M. zeroth is the
// function value itself when known.
struct SingleSiteJet {
  JetBasis basis = JetBasis::Omega;
  double argument = 0.0;
  double zeroth = 0.0;
  std::vector<double> values;

  int order() const { return static_cast<int>(values.size()); }
  double operator[](int m) const { return values.at(m - 1); }
};

// omega_m(h), m = 1..M.
SingleSiteJet omega_jet(const SingleSiteModel& model, double h, int order);

// Solves omega_1(h) = phi for h.
double solve_source(const SingleSiteModel& model, double phi);

// gamma_m(phi) = legendre_dual(omega_jet(h(phi))).
SingleSiteJet gamma_jet(const SingleSiteModel& model, double phi, int order);

// Maps between the omega tower at h and the gamma tower at phi = omega_1.
SingleSiteJet legendre_dual(const SingleSiteJet& jet);

// Reverts a(z) = sum a_n z^n (a[0] = a_1) into b(w) = sum b_n w^n / n!,
// returning b_1..b_M.
std::vector<double> inverse_series_coeffs(const std::vector<double>& a);
std::vector<Rational> inverse_series_coeffs(const std::vector<Rational>& a);

// Visits every k = (k_2, k_3, ...) (k[j] for j >= 2) with sum (j-1) k_j = n-1.
void for_each_euler_tuple(int n, const std::function<void(const std::vector<int>&)>& visit);

// c_{i_3...i_{l-1}}; i maps j >= 3 to i_j. l follows from the degree
// constraint; a nonzero expected_l is checked against it.
Integer c_coefficient(const std::map<int, int>& i, int expected_l = 0);
int c_order(const std::map<int, int>& i);

// Trees with l univalent external vertices and internal vertices of valency
// >= 3. Externals come first.
struct ExternalTree {
  int n_external = 0;
  std::vector<std::vector<int>> adj;
  std::string code;
  Integer aut;

  int internal_count() const { return static_cast<int>(adj.size()) - n_external; }
  int line_count() const;
  Monomial weight() const;  // omega_2^{-lines} prod omega_k
};

std::vector<ExternalTree> enumerate_external_trees(int l);

// gamma_l in the omega basis by the three independent routes.
SitePoly gamma_tree_rule(int l);
SitePoly gamma_recursion(int l);
SitePoly gamma_inverse_series(int l);

// Cached gamma_m and omega_m (m >= 2) in the opposite basis.
const SitePoly& gamma_in_omega(int m);
const SitePoly& omega_in_gamma(int m);

SitePoly to_pure_omega(const SitePoly& p);
Expression to_pure_omega(const Expression& e);

}  // namespace lce
