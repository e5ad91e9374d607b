#include "lce/numeric_eval.hpp"

#include <cmath>
#include <random>

#include "lce/assemble.hpp"
#include "lce/errors.hpp"

namespace lce {

void LatticeModel::validate() const {
  if (ell.rows() != ell.cols()) throw Error(ErrorKind::InvalidArgument, "hopping matrix must be square");
  for (int x = 0; x < ell.rows(); ++x) {
    if (ell(x, x) != 0) throw Error(ErrorKind::InvalidArgument, "hopping matrix must vanish on the diagonal");
    for (int y = 0; y < x; ++y)
      if (ell(x, y) != ell(y, x)) throw Error(ErrorKind::InvalidArgument, "hopping matrix must be symmetric");
  }
}

namespace {

std::vector<double> with_zeroth(const SingleSiteJet& j) {
  std::vector<double> v{j.zeroth};
  v.insert(v.end(), j.values.begin(), j.values.end());
  return v;
}

}  // namespace

SiteJets jets_at_field(const SingleSiteModel& model, const FieldConfig& phi, int order) {
  SiteJets out;
  for (int x = 0; x < phi.size(); ++x) {
    auto oj = omega_jet(model, solve_source(model, phi[x]), std::max(order, 2));
    auto gj = legendre_dual(oj);
    out.omega.push_back(with_zeroth(oj));
    out.gamma.push_back(with_zeroth(gj));
  }
  return out;
}

SiteJets jets_at_source(const SingleSiteModel& model, const FieldConfig& h, int order) {
  SiteJets out;
  for (int x = 0; x < h.size(); ++x) out.omega.push_back(with_zeroth(omega_jet(model, h[x], std::max(order, 1))));
  return out;
}

Eigen::MatrixXd Tensor::matrix() const {
  if (rank != 2) throw Error(ErrorKind::RootArityMismatch, "tensor is not a matrix");
  Eigen::MatrixXd m(sites, sites);
  for (int x = 0; x < sites; ++x)
    for (int y = 0; y < sites; ++y) m(x, y) = data[x * sites + y];
  return m;
}

Eigen::VectorXd Tensor::vector() const {
  if (rank != 1) throw Error(ErrorKind::RootArityMismatch, "tensor is not a vector");
  return Eigen::Map<const Eigen::VectorXd>(data.data(), sites);
}

namespace {

double pairwise_sum(const double* v, std::size_t n) {
  if (n == 0) return 0.0;
  if (n == 1) return v[0];
  std::size_t h = n / 2;
  return pairwise_sum(v, h) + pairwise_sum(v + h, n - h);
}

class TermEvaluator {
 public:
  TermEvaluator(const Eigen::MatrixXd& ell, const SiteJets& jets) : ell_(ell), jets_(jets), n_(ell.rows()) {
    nonzero_.resize(n_);
    for (int x = 0; x < n_; ++x)
      for (int y = 0; y < n_; ++y)
        if (ell(x, y) != 0) nonzero_[x].push_back(y);
  }

  std::vector<double> run(const GraphTerm& t) {
    const int nv = t.graph.vertex_count();
    rank_ = static_cast<int>(t.roots.size());
    roots_ = t.roots;
    std::size_t cells = 1;
    for (int i = 0; i < rank_; ++i) cells *= n_;
    out_.assign(cells, 0.0);

    site_weight_.assign(nv, std::vector<double>(n_, 1.0));
    for (int v = 0; v < nv; ++v)
      for (auto& [s, e] : t.weights[v].factors())
        for (int x = 0; x < n_; ++x) site_weight_[v][x] *= std::pow(symbol_value(s, x), e);

    // Visit order: breadth first inside each component.
    order_.clear();
    std::vector<bool> seen(nv, false);
    for (int r = 0; r < nv; ++r) {
      if (seen[r]) continue;
      seen[r] = true;
      std::size_t head = order_.size();
      order_.push_back(r);
      while (head < order_.size()) {
        int u = order_[head++];
        for (int w = 0; w < nv; ++w)
          if (!seen[w] && t.graph.mult(u, w)) {
            seen[w] = true;
            order_.push_back(w);
          }
      }
    }
    back_.assign(nv, {});
    for (int i = 0; i < nv; ++i)
      for (int j = 0; j < i; ++j) {
        int m = t.graph.mult(order_[i], order_[j]);
        if (m) back_[i].push_back({order_[j], m});
      }
    site_.assign(nv, 0);
    dfs(0, 1.0);
    return out_;
  }

 private:
  double symbol_value(const Symbol& s, int x) const {
    const auto& table = s.kind == SymKind::Omega ? jets_.omega : jets_.gamma;
    if (table.empty())
      throw Error(ErrorKind::JetOrderInsufficient, "no vertex-function jets available for gamma symbols");
    if (s.index >= static_cast<int>(table[x].size()))
      throw Error(ErrorKind::JetOrderInsufficient,
                  "symbol index " + std::to_string(s.index) + " exceeds the jet order");
    return table[x][s.index];
  }

  void dfs(std::size_t i, double acc) {
    if (i == order_.size()) {
      std::size_t idx = 0;
      for (int r : roots_) idx = idx * n_ + site_[r];
      out_[idx] += acc;
      return;
    }
    const int v = order_[i];
    auto visit = [&](int x) {
      double a = acc * site_weight_[v][x];
      for (auto [w, m] : back_[i]) {
        double l = ell_(x, site_[w]);
        a *= m == 1 ? l : std::pow(l, m);
        if (a == 0) return;
      }
      if (a == 0) return;
      site_[v] = x;
      dfs(i + 1, a);
    };
    if (back_[i].empty()) {
      for (int x = 0; x < n_; ++x) visit(x);
    } else {
      for (int x : nonzero_[site_[back_[i][0].first]]) visit(x);
    }
  }

  const Eigen::MatrixXd& ell_;
  const SiteJets& jets_;
  int n_;
  std::vector<std::vector<int>> nonzero_;
  int rank_ = 0;
  std::vector<int> roots_;
  std::vector<double> out_;
  std::vector<std::vector<double>> site_weight_;
  std::vector<int> order_;
  std::vector<std::vector<std::pair<int, int>>> back_;
  std::vector<int> site_;
};

}  // namespace

Tensor eval_expression(const Expression& e, const Eigen::MatrixXd& ell, const SiteJets& jets) {
  const int n = static_cast<int>(ell.rows());
  if (static_cast<int>(jets.omega.size()) != n)
    throw Error(ErrorKind::InvalidArgument, "jets must be given for every site");
  Tensor t;
  t.sites = n;
  bool first = true;
  std::vector<std::vector<double>> parts;
  TermEvaluator ev(ell, jets);
  for (auto& [key, entry] : e) {
    int r = static_cast<int>(entry.term.roots.size());
    if (first) {
      t.rank = r;
      first = false;
    } else if (r != t.rank) {
      throw Error(ErrorKind::RootArityMismatch, "terms carry different numbers of slots");
    }
    auto v = ev.run(entry.term);
    const double c = entry.coefficient.get_d();
    for (double& x : v) x *= c;
    parts.push_back(std::move(v));
  }
  std::size_t cells = 1;
  for (int i = 0; i < t.rank; ++i) cells *= n;
  t.data.assign(cells, 0.0);
  std::vector<double> column(parts.size());
  for (std::size_t c = 0; c < cells; ++c) {
    for (std::size_t p = 0; p < parts.size(); ++p) column[p] = parts[p][c];
    t.data[c] = pairwise_sum(column.data(), column.size());
  }
  return t;
}

Tensor eval_expression(const Expression& e, const LatticeModel& lat, const FieldConfig& phi) {
  lat.validate();
  if (phi.size() != lat.sites()) throw Error(ErrorKind::InvalidArgument, "field size differs from site count");
  int order = std::max(max_symbol_index(e, SymKind::Omega), max_symbol_index(e, SymKind::Gamma));
  return eval_expression(e, lat.ell, jets_at_field(lat.site, phi, std::max(order, 2)));
}

Eigen::VectorXd gamma0_second_diagonal(const SiteJets& jets) {
  if (jets.gamma.empty()) throw Error(ErrorKind::JetOrderInsufficient, "vertex-function jets required");
  Eigen::VectorXd a(jets.gamma.size());
  for (std::size_t x = 0; x < jets.gamma.size(); ++x) {
    if (jets.gamma[x].size() < 3) throw Error(ErrorKind::JetOrderInsufficient, "gamma_2 not available");
    a[x] = jets.gamma[x][2];
    if (!(a[x] > 0)) throw Error(ErrorKind::SingularGamma0, "gamma_2 <= 0 at site " + std::to_string(x));
  }
  return a;
}

FlowVerifier::FlowVerifier(int max_order) : max_order_(max_order) {
  if (max_order < 1) throw Error(ErrorKind::InvalidArgument, "order must be positive");
  gamma_.resize(max_order + 1);
  second_.resize(max_order + 1);
  for (int l = 2; l <= max_order; ++l) {
    gamma_[l] = gamma_expansion(l, std::max(kSymbolicOrderCap, max_order));
    if (l < max_order)
      second_[l] = functional_derivative(functional_derivative(gamma_[l], Variable::Field), Variable::Field);
  }
}

FlowReport FlowVerifier::check(int l, const LatticeModel& lat, const FieldConfig& phi) const {
  if (l < 1 || l > max_order_) throw Error(ErrorKind::InvalidArgument, "order outside the verifier range");
  lat.validate();
  const int n = lat.sites();
  if (phi.size() != n) throw Error(ErrorKind::InvalidArgument, "field size differs from site count");
  int order = 2;
  auto need = [&](const Expression& e) {
    order = std::max({order, max_symbol_index(e, SymKind::Omega), max_symbol_index(e, SymKind::Gamma)});
  };
  if (l >= 2) need(gamma_[l]);
  for (int i = 2; i < l; ++i) need(second_[i]);
  auto jets = jets_at_field(lat.site, phi, order);
  Eigen::VectorXd ainv = gamma0_second_diagonal(jets).cwiseInverse();

  std::vector<Eigen::MatrixXd> u(l);
  u[0] = Eigen::MatrixXd::Identity(n, n);
  if (l >= 2) u[1] = ainv.asDiagonal() * lat.ell;
  for (int i = 2; i < l; ++i) u[i] = ainv.asDiagonal() * eval_expression(second_[i], lat.ell, jets).matrix();

  FlowReport rep;
  rep.order = l;
  if (l == 1) {
    Eigen::MatrixXd u1 = ainv.asDiagonal() * lat.ell;
    rep.lhs = 0.0;
    rep.rhs = 0.5 * u1.trace();
  } else {
    // q[s] = sum over compositions of s of (-1)^n u_{i_1} ... u_{i_n}.
    std::vector<Eigen::MatrixXd> q(l);
    q[0] = Eigen::MatrixXd::Identity(n, n);
    for (int s = 1; s < l; ++s) {
      q[s] = Eigen::MatrixXd::Zero(n, n);
      for (int i = 1; i <= s; ++i) q[s] -= u[i] * q[s - i];
    }
    rep.lhs = l * eval_expression(gamma_[l], lat.ell, jets).scalar();
    rep.rhs = 0.5 * (u[1] * q[l - 1]).trace();
  }
  rep.residual = std::abs(rep.lhs - rep.rhs) / std::max(1.0, std::abs(rep.lhs));
  return rep;
}

FlowReport flow_residual(int l, const LatticeModel& lat, const FieldConfig& phi) {
  return FlowVerifier(std::max(l, 2)).check(l, lat, phi);
}

Eigen::MatrixXd random_hopping(int sites, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(sites, sites);
  for (int x = 0; x < sites; ++x)
    for (int y = x + 1; y < sites; ++y) m(x, y) = m(y, x) = dist(rng);
  return m;
}

FieldConfig random_field(const SingleSiteModel& model, int sites, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  double r = model.kind == ModelKind::Ising ? 0.8 : 1.0;
  std::uniform_real_distribution<double> dist(-r, r);
  FieldConfig f(sites);
  for (int x = 0; x < sites; ++x) f[x] = dist(rng);
  return f;
}

double gaussian_closed_form(const Eigen::MatrixXd& ell, int l) {
  if (l < 1) throw Error(ErrorKind::InvalidArgument, "order must be positive");
  Eigen::MatrixXd p = ell;
  for (int i = 1; i < l; ++i) p = p * ell;
  double v = p.trace() / (2.0 * l);
  return (l % 2) ? v : -v;
}

Eigen::MatrixXd periodic_lattice(int dim, int box) {
  if (dim < 1 || box < 2) throw Error(ErrorKind::InvalidArgument, "need dim >= 1 and box >= 2");
  int n = 1;
  for (int d = 0; d < dim; ++d) n *= box;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int x = 0; x < n; ++x) {
    int stride = 1;
    for (int d = 0; d < dim; ++d, stride *= box) {
      int c = (x / stride) % box;
      int y = x - c * stride + ((c + 1) % box) * stride;
      m(x, y) += 1.0;
      m(y, x) += 1.0;
    }
  }
  return m;
}

std::vector<SusceptibilityRow> susceptibility_demo(const SingleSiteModel& model, int dim, int l_max, int box) {
  if (l_max < 0) throw Error(ErrorKind::InvalidArgument, "order must be non-negative");
  if (box <= l_max)
    throw Error(ErrorKind::BoxTooSmall, "box " + std::to_string(box) + " must exceed the order " + std::to_string(l_max));
  Eigen::MatrixXd ell = periodic_lattice(dim, box);
  const int n = static_cast<int>(ell.rows());
  auto jets = jets_at_source(model, FieldConfig::Zero(n), l_max + 3);
  std::vector<SusceptibilityRow> rows;
  Eigen::MatrixXd power = Eigen::MatrixXd::Identity(n, n);
  double fact = 1.0;
  for (int l = 0; l <= l_max; ++l) {
    auto w2 = functional_derivative(functional_derivative(w_expansion(l, std::max(kSymbolicOrderCap, l_max)),
                                                          Variable::Source),
                                    Variable::Source);
    auto m = eval_expression(w2, ell, jets).matrix();
    SusceptibilityRow row;
    row.order = l;
    row.series = m.col(0).sum();
    if (l > 0) fact *= l;
    if (model.kind == ModelKind::Gaussian) {
      row.has_reference = true;
      row.reference = ((l % 2) ? -1.0 : 1.0) * power.col(0).sum();
    } else if (model.kind == ModelKind::Ising && dim == 1) {
      row.has_reference = true;
      row.reference = std::pow(-2.0, l) / fact;
    }
    rows.push_back(row);
    power = power * ell;
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json(const nlohmann::json& j) {
  const nlohmann::json& a = j.is_object() ? j.at("ell") : j;
  if (!a.is_array()) throw Error(ErrorKind::ParseError, "matrix must be an array of rows");
  const int n = static_cast<int>(a.size());
  Eigen::MatrixXd m(n, n);
  for (int x = 0; x < n; ++x) {
    if (!a[x].is_array() || static_cast<int>(a[x].size()) != n)
      throw Error(ErrorKind::ParseError, "matrix rows must have length " + std::to_string(n));
    for (int y = 0; y < n; ++y) m(x, y) = a[x][y].get<double>();
  }
  return m;
}

FieldConfig vector_from_json(const nlohmann::json& j) {
  const nlohmann::json& a = j.is_object() ? j.at("phi") : j;
  if (!a.is_array()) throw Error(ErrorKind::ParseError, "field must be an array");
  FieldConfig f(a.size());
  for (std::size_t x = 0; x < a.size(); ++x) f[x] = a[x].get<double>();
  return f;
}

}  // namespace lce
