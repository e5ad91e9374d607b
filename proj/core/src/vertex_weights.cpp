#include "lce/vertex_weights.hpp"

#include <algorithm>
#include <set>

#include "lce/errors.hpp"

namespace lce {

int BlockProfile::total_degree() const {
  int s = 0;
  for (auto [l, m] : blocks.elements()) s += m * degree.at(l);
  return s;
}

BlockProfile block_profile(const Multigraph& g, const BlockDecomposition& bd, int v) {
  std::vector<std::pair<std::string, int>> found;  // (rooted code, degree)
  for (int bi : bd.incidence.at(v)) {
    const auto& blk = bd.blocks[bi];
    Multigraph sub = g.induced(blk.vertices);
    int root = static_cast<int>(std::find(blk.vertices.begin(), blk.vertices.end(), v) - blk.vertices.begin());
    RootedMultigraph rg{sub, {{root, 1}}};
    found.emplace_back(rooted_canonical_code(rg), sub.degree(root));
  }
  std::sort(found.begin(), found.end());
  BlockProfile bp;
  std::vector<std::pair<int, int>> elems;
  for (auto& [code, deg] : found) {
    auto it = std::find(bp.names.begin(), bp.names.end(), code);
    int label = static_cast<int>(it - bp.names.begin());
    if (it == bp.names.end()) {
      bp.names.push_back(code);
      bp.degree[label] = deg;
    }
    elems.emplace_back(label, 1);
  }
  bp.blocks = Multiset(std::move(elems));
  return bp;
}

namespace {

void check_degrees(const std::vector<int>& d) {
  if (d.empty()) throw Error(ErrorKind::EmptyMultiset, "no blocks at the vertex");
  for (int x : d)
    if (x < 2) throw Error(ErrorKind::InvalidDegree, "block degree " + std::to_string(x) + " < 2");
}

}  // namespace

SitePoly mu_gamma_blocks(const BlockProfile& b) {
  std::vector<int> degs;
  for (auto [l, m] : b.blocks.elements()) {
    auto it = b.degree.find(l);
    if (it == b.degree.end()) throw Error(ErrorKind::InvalidArgument, "block class without degree");
    for (int i = 0; i < m; ++i) degs.push_back(it->second);
  }
  check_degrees(degs);
  const Integer perm = perm_order(b.blocks);
  SitePoly out;
  for (int n = 1; n <= b.blocks.cardinality(); ++n)
    for (const auto& t : label_trees(b.blocks, n)) {
      Rational c(perm, labeled_sym(t));
      c.canonicalize();
      if (sign(t.base) < 0) c = -c;
      out.add(weight(t, b.degree), c);
    }
  return out;
}

std::map<std::vector<int>, Rational> integer_tree_coefficients(const DashedTree& t, const std::vector<int>& d,
                                                               const std::vector<int>& dn) {
  const int n = t.n_open;
  if (static_cast<int>(dn.size()) != n) throw Error(ErrorKind::ShapeMismatch, "Dn size differs from open circles");
  const auto val = t.valencies();
  const Integer p = degree_partition_count(d, dn);
  const Integer aut = tree_aut_order(t);
  std::map<std::vector<int>, Integer> bij;
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  do {
    std::vector<int> rho(n);
    for (int v = 0; v < n; ++v) rho[v] = val[v] + dn[perm[v]];
    std::sort(rho.begin(), rho.end());
    bij[rho] += 1;
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::map<std::vector<int>, Rational> out;
  for (auto& [rho, count] : bij) {
    Rational c(count * p, aut);
    c.canonicalize();
    out.emplace(rho, c);
  }
  return out;
}

SitePoly mu_gamma_degrees(const std::vector<int>& d) {
  check_degrees(d);
  SitePoly out;
  const int size = static_cast<int>(d.size());
  for (int n = 1; n <= size; ++n) {
    const auto trees = enumerate_dashed(n);
    for (const auto& dn : degree_sum_multisets(d, n))
      for (const auto& t : trees) {
        const int s = sign(t);
        const auto val = t.valencies();
        for (auto& [rho, c] : integer_tree_coefficients(t, d, dn)) {
          // The monomial depends only on the multiset rho.
          Monomial w;
          for (int r : rho) w *= Monomial::omega(r);
          w *= Monomial::gamma(2, t.open_open_lines());
          for (int v = t.n_open; v < t.vertex_count(); ++v) w *= Monomial::gamma(val[v]);
          if (n > 1)
            for (int r : rho)
              if (r < 3) throw Error(ErrorKind::DegreeUnderflow, "ddeg below 3");
          out.add(w, s < 0 ? Rational(-c) : c);
        }
      }
  }
  return out;
}

GradingReport grading_check(const SitePoly& e, int d_v) {
  GradingReport r;
  for (auto& [m, c] : e.terms())
    if (m.degree() != d_v) {
      r.ok = false;
      r.offending.push_back(m.to_text() + " has degree " + std::to_string(m.degree()));
    }
  if (e.coefficient(Monomial::omega(d_v)) != 1) {
    r.ok = false;
    r.offending.push_back("leading term w" + std::to_string(d_v) + " must have coefficient 1");
  }
  return r;
}

}  // namespace lce
