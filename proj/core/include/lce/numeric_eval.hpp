#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "lce/expression.hpp"
#include "lce/single_site.hpp"

namespace lce {

struct LatticeModel {
  Eigen::MatrixXd ell;  // symmetric, zero diagonal
  SingleSiteModel site;

  int sites() const { return static_cast<int>(ell.rows()); }
  // Throws InvalidArgument unless ell is square, symmetric and zero on the diagonal.
  void validate() const;
};

// phi_x (or H_x) per site.
using FieldConfig = Eigen::VectorXd;

// omega_m and gamma_m per site; index 0 of omega is omega itself.
struct SiteJets {
  std::vector<std::vector<double>> omega;  // [x][m], m = 0..M
  std::vector<std::vector<double>> gamma;  // [x][m], m = 0..M; empty when unknown

  int order() const { return omega.empty() ? -1 : static_cast<int>(omega[0].size()) - 1; }
};

// Jets at mean field phi: omega at h(phi), gamma at phi.
SiteJets jets_at_field(const SingleSiteModel& model, const FieldConfig& phi, int order);
// Jets at source H; gamma left empty.
SiteJets jets_at_source(const SingleSiteModel& model, const FieldConfig& h, int order);

// Rank-r tensor over sites, row-major in the slot order.
struct Tensor {
  int rank = 0;
  int sites = 0;
  std::vector<double> data;

  double scalar() const { return data.at(0); }
  Eigen::MatrixXd matrix() const;
  Eigen::VectorXd vector() const;
};

// Unconstrained lattice sum of every term. All terms must carry the same
// number of slots.
Tensor eval_expression(const Expression& e, const Eigen::MatrixXd& ell, const SiteJets& jets);
Tensor eval_expression(const Expression& e, const LatticeModel& lat, const FieldConfig& phi);

// Gamma_0^{(2)} from the jets; throws SingularGamma0 when gamma_2 <= 0 somewhere.
Eigen::VectorXd gamma0_second_diagonal(const SiteJets& jets);

struct FlowReport {
  int order = 0;
  double lhs = 0.0;  // l Gamma_l
  double rhs = 0.0;  // trace side of the flow recursion
  double residual = 0.0;
};

// Caches Gamma_2..Gamma_L and their second field derivatives.
class FlowVerifier {
 public:
  explicit FlowVerifier(int max_order);

  int max_order() const { return max_order_; }
  const Expression& gamma(int l) const { return gamma_.at(l); }
  const Expression& gamma_second(int l) const { return second_.at(l); }

  FlowReport check(int l, const LatticeModel& lat, const FieldConfig& phi) const;

 private:
  int max_order_;
  std::vector<Expression> gamma_;
  std::vector<Expression> second_;
};

FlowReport flow_residual(int l, const LatticeModel& lat, const FieldConfig& phi);

// Random symmetric hopping matrix with zero diagonal, entries uniform in [-1, 1].
Eigen::MatrixXd random_hopping(int sites, std::uint64_t seed);
// Random mean field (|phi| <= 0.8 for Ising, <= 1 otherwise).
FieldConfig random_field(const SingleSiteModel& model, int sites, std::uint64_t seed);

// (-1)^{l+1} Tr ell^l / (2l).
double gaussian_closed_form(const Eigen::MatrixXd& ell, int l);

struct SusceptibilityRow {
  int order = 0;
  double series = 0.0;     // kappa^order coefficient of chi_2 from the W graphs
  double reference = 0.0;  // closed-form reference when available
  bool has_reference = false;
};

// Periodic nearest-neighbour lattice of box^dim sites.
Eigen::MatrixXd periodic_lattice(int dim, int box);

// Coefficients of chi_2 = sum_x W^{(2)}_{x,0} at H = 0 for orders 0..l_max.
std::vector<SusceptibilityRow> susceptibility_demo(const SingleSiteModel& model, int dim, int l_max, int box);

Eigen::MatrixXd matrix_from_json(const nlohmann::json& j);
FieldConfig vector_from_json(const nlohmann::json& j);

}  // namespace lce
