#include <doctest.h>

#include <complex>

#include <Eigen/Eigenvalues>

#include "lce/assemble.hpp"
#include "lce/errors.hpp"
#include "lce/numeric_eval.hpp"

using namespace lce;

namespace {

Eigen::MatrixXd two_site(double c) {
  Eigen::MatrixXd m(2, 2);
  m << 0, c, c, 0;
  return m;
}

// kappa^l coefficient of (1/2) log det(1 + kappa ell) by a discrete contour
// integral on |kappa| = r inside the disc of analyticity.
double logdet_coefficient(const Eigen::MatrixXd& ell, int l) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(ell);
  const auto lam = es.eigenvalues();
  const double rho = std::max(lam.cwiseAbs().maxCoeff(), 1e-12);
  const double r = 0.5 / rho;
  const int m = 256;
  std::complex<double> acc = 0;
  for (int k = 0; k < m; ++k) {
    const double th = 2 * M_PI * k / m;
    const std::complex<double> z = std::polar(r, th);
    std::complex<double> f = 0;
    for (int i = 0; i < lam.size(); ++i) f += std::log(1.0 + z * lam[i]);
    acc += 0.5 * f * std::polar(1.0, -l * th);
  }
  return (acc / static_cast<double>(m)).real() / std::pow(r, l);
}

LatticeModel lattice(const SingleSiteModel& m, const Eigen::MatrixXd& ell) { return {ell, m}; }

}  // namespace

TEST_SUITE("numeric_eval") {
  TEST_CASE("Gamma_2 on two sites") {
    const double c = 0.7;
    auto g2 = gamma_expansion(2);
    auto lat = lattice(SingleSiteModel::gaussian(), two_site(c));
    FieldConfig phi(2);
    phi << 0.1, -0.2;
    CHECK(eval_expression(g2, lat, phi).scalar() == doctest::Approx(-c * c / 2));
    auto q = lattice(SingleSiteModel::quartic(0.1), two_site(c));
    auto jets = jets_at_field(q.site, phi, 4);
    const double expect = -0.25 * 2 * c * c * jets.omega[0][2] * jets.omega[1][2];
    CHECK(eval_expression(g2, q, phi).scalar() == doctest::Approx(expect));
  }

  TEST_CASE("degenerate lattices") {
    auto one = lattice(SingleSiteModel::quartic(0.1), Eigen::MatrixXd::Zero(1, 1));
    FieldConfig phi = FieldConfig::Constant(1, 0.3);
    for (int l = 2; l <= 5; ++l) CHECK(eval_expression(gamma_expansion(l), one, phi).scalar() == 0.0);
    Expression tri;
    tri.add({parse_graph("3:3; 0-1, 1-2, 0-2"), {Monomial::omega(2), Monomial::omega(2), Monomial::omega(2)}, {}}, 1);
    auto two = lattice(SingleSiteModel::gaussian(), two_site(1.0));
    CHECK(eval_expression(tri, two, FieldConfig::Zero(2)).scalar() == 0.0);
  }

  TEST_CASE("evaluation is linear") {
    auto lat = lattice(SingleSiteModel::quartic(0.1), random_hopping(4, 3));
    auto phi = random_field(lat.site, 4, 3);
    auto a = gamma_expansion(4), b = gamma_expansion(3);
    Expression c = a + b * 2;
    const double lhs = eval_expression(c, lat, phi).scalar();
    const double rhs = eval_expression(a, lat, phi).scalar() + 2 * eval_expression(b, lat, phi).scalar();
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  }

  TEST_CASE("Gaussian series equals the log-determinant expansion") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      auto ell = random_hopping(5, seed);
      auto lat = lattice(SingleSiteModel::gaussian(), ell);
      auto phi = random_field(lat.site, 5, seed);
      for (int l = 2; l <= 6; ++l) {
        const double series = eval_expression(gamma_expansion(l), lat, phi).scalar();
        const double oracle = logdet_coefficient(ell, l);
        CHECK(std::abs(series - oracle) < 1e-10 * (1 + std::abs(oracle)));
        CHECK(std::abs(gaussian_closed_form(ell, l) - oracle) < 1e-10 * (1 + std::abs(oracle)));
      }
    }
  }

  TEST_CASE("first field derivative matches finite differences") {
    auto lat = lattice(SingleSiteModel::quartic(0.1), random_hopping(3, 9));
    FieldConfig phi = random_field(lat.site, 3, 9);
    auto g = gamma_expansion(3);
    auto d = eval_expression(functional_derivative(g), lat, phi).vector();
    const double eps = 1e-4;
    for (int x = 0; x < 3; ++x) {
      FieldConfig p = phi, m = phi;
      p[x] += eps;
      m[x] -= eps;
      const double fd = (eval_expression(g, lat, p).scalar() - eval_expression(g, lat, m).scalar()) / (2 * eps);
      CHECK(d[x] == doctest::Approx(fd).epsilon(1e-6));
    }
  }

  TEST_CASE("flow residuals") {
    FlowVerifier fv(5);
    for (const auto& model : {SingleSiteModel::quartic(0.1), SingleSiteModel::ising(), SingleSiteModel::gaussian()}) {
      auto lat = lattice(model, random_hopping(4, 21));
      auto phi = random_field(model, 4, 21);
      for (int l = 2; l <= 5; ++l) CHECK(fv.check(l, lat, phi).residual < 1e-8);
    }
    auto lat = lattice(SingleSiteModel::gaussian(), random_hopping(3, 4));
    auto rep = flow_residual(3, lat, FieldConfig::Zero(3));
    CHECK(rep.residual < 1e-10);
    CHECK(rep.lhs == doctest::Approx(3 * gaussian_closed_form(lat.ell, 3)));
  }

  TEST_CASE("susceptibility demo references") {
    auto g = susceptibility_demo(SingleSiteModel::gaussian(), 1, 4, 6);
    for (const auto& row : g) {
      REQUIRE(row.has_reference);
      CHECK(row.series == doctest::Approx(row.reference));
      CHECK(row.series == doctest::Approx(std::pow(-2.0, row.order)));
    }
    auto is = susceptibility_demo(SingleSiteModel::ising(), 1, 4, 6);
    for (const auto& row : is) CHECK(row.series == doctest::Approx(row.reference));
    CHECK_THROWS_AS(susceptibility_demo(SingleSiteModel::gaussian(), 1, 4, 4), Error);
  }

  TEST_CASE("errors") {
    SiteJets bad;
    bad.omega = {{0, 0, 1}};
    bad.gamma = {{0, 0, -1.0}};
    try {
      gamma0_second_diagonal(bad);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::SingularGamma0);
    }
    Eigen::MatrixXd asym(2, 2);
    asym << 0, 1, 0.5, 0;
    CHECK_THROWS_AS(lattice(SingleSiteModel::gaussian(), asym).validate(), Error);
    auto lat = lattice(SingleSiteModel::gaussian(), two_site(1));
    CHECK_THROWS_AS(eval_expression(gamma_expansion(2), lat, FieldConfig::Zero(3)), Error);
    CHECK_THROWS_AS(matrix_from_json(nlohmann::json::parse("[[0,1],[1]]")), Error);
    CHECK(vector_from_json(nlohmann::json::parse("{\"phi\": [0.5, 0.25]}"))[1] == 0.25);
  }
}
