#include "lce/assemble.hpp"

#include "lce/errors.hpp"
#include "lce/single_site.hpp"
#include "lce/vertex_weights.hpp"

namespace lce {

namespace {

void check_cap(int l, int cap) {
  if (l > cap)
    throw Error(ErrorKind::OrderCapExceeded,
                "order " + std::to_string(l) + " exceeds the cap " + std::to_string(cap));
}

Rational signed_inverse(int sign, const Integer& sym) {
  Rational c(sign, 1);
  c /= Rational(sym);
  return c;
}

Expression source_derivative(const Expression& e, int k) {
  Expression r = e;
  for (int i = 0; i < k; ++i) r = functional_derivative(r, Variable::Source);
  return r;
}

}  // namespace

std::vector<std::vector<int>> compositions(int n, int min_part) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int rest) {
    if (rest == 0) {
      if (!cur.empty()) out.push_back(cur);
      return;
    }
    for (int p = min_part; p <= rest; ++p) {
      cur.push_back(p);
      rec(rest - p);
      cur.pop_back();
    }
  };
  if (n > 0) rec(n);
  return out;
}

Expression w_expansion(int l, int cap) {
  if (l < 0) throw Error(ErrorKind::InvalidArgument, "order must be non-negative");
  check_cap(l, cap);
  Expression e;
  const int sign = (l % 2) ? -1 : 1;
  for (const auto& g : enumerate_connected(l, std::max(cap, l))) {
    GraphTerm t{g, {}, {}};
    for (int v = 0; v < g.vertex_count(); ++v) t.weights.push_back(Monomial::omega(g.degree(v)));
    e.add(std::move(t), signed_inverse(sign, aut_order(g)));
  }
  return e;
}

std::vector<Expression> w_recursion_series(int l) {
  if (l < 0) throw Error(ErrorKind::InvalidArgument, "order must be non-negative");
  std::vector<Expression> w(l + 1);
  w[0].add(GraphTerm{Multigraph(1), {Monomial::omega(0)}, {}}, 1);
  std::vector<Expression> dw;
  dw.push_back(functional_derivative(w[0], Variable::Source));
  for (int n = 0; n < l; ++n) {
    Expression inner = connect_slots(functional_derivative(dw[n], Variable::Source), 0, 1);
    for (int k = 0; k <= n; ++k) inner += connect_slots(product(dw[k], dw[n - k]), 0, 1);
    w[n + 1] = inner * Rational(-1, 2 * (n + 1));
    dw.push_back(functional_derivative(w[n + 1], Variable::Source));
  }
  return w;
}

Expression w_recursion(int l) { return w_recursion_series(l).back(); }

Expression gamma_expansion(int l, int cap) {
  if (l < 1) throw Error(ErrorKind::InvalidArgument, "Gamma_l is defined here for l >= 1");
  check_cap(l, cap);
  Expression e;
  if (l == 1) return e;
  const int sign = (l % 2) ? 1 : -1;
  for (const auto& g : enumerate_1li(l, std::max(cap, l))) {
    auto bd = block_decomposition(g);
    std::vector<SitePoly> weights;
    for (int v = 0; v < g.vertex_count(); ++v) {
      if (bd.incidence[v].size() < 2)
        weights.emplace_back(Monomial::omega(g.degree(v)));
      else
        weights.push_back(mu_gamma_blocks(block_profile(g, bd, v)));
    }
    e.add_expanded(g, weights, {}, signed_inverse(sign, aut_order(g)));
  }
  return e;
}

Expression w_derivative_1li(const Expression& w, int k) { return restrict_1li(source_derivative(w, k)); }

std::vector<Expression> gamma_mixed_recursion_series(int l) {
  if (l < 1) throw Error(ErrorKind::InvalidArgument, "order must be positive");
  auto w = w_recursion_series(l);
  std::vector<Expression> g(l + 1);
  std::vector<Expression> g1(l + 1);
  for (int n = 2; n <= l; ++n) {
    Expression r = restrict_1li(w[n]) * Rational(-1);
    for (int m = 2; m <= n - 2; ++m) {
      for (int k = 1; k <= m / 2; ++k) {
        Expression wk = w_derivative_1li(w[n - m], k);
        Rational c = make_rational(n - m, n);
        c /= Rational(factorial(k));
        for (const auto& comp : compositions(m, 2)) {
          if (static_cast<int>(comp.size()) != k) continue;
          std::vector<Expression> parts;
          for (int mi : comp) parts.push_back(g1[mi]);
          r.add(contract_join(wk, parts), -c);
        }
      }
    }
    g[n] = std::move(r);
    g1[n] = functional_derivative(g[n], Variable::Field);
  }
  return g;
}

Expression gamma_mixed_recursion(int l) { return gamma_mixed_recursion_series(l).back(); }

std::vector<Expression> gamma_full_recursion_series(int l) {
  if (l < 1) throw Error(ErrorKind::InvalidArgument, "order must be positive");
  auto w = w_recursion_series(l);
  std::vector<Expression> g(l + 1);
  std::vector<Expression> h(l + 1);
  // H_1 = V^(1): an ell line from the slot to a vertex carrying phi = omega_1.
  {
    GraphTerm t{Multigraph(2), {Monomial(), Monomial::omega(1)}, {0}};
    t.graph.add_edge(0, 1);
    h[1].add(std::move(t), 1);
  }
  std::vector<std::vector<Expression>> wk(l + 1, std::vector<Expression>(l + 1));
  for (int n = 1; n <= l; ++n) {
    wk[n][0] = w[n];
    for (int k = 1; k <= l; ++k) wk[n][k] = functional_derivative(wk[n][k - 1], Variable::Source);
  }
  for (int n = 2; n <= l; ++n) {
    Expression r = w[n] * Rational(-1);
    for (int m = 1; m <= n - 1; ++m) {
      for (const auto& comp : compositions(m, 1)) {
        const int k = static_cast<int>(comp.size());
        Rational c = make_rational(n - m, n);
        c /= Rational(factorial(k));
        std::vector<Expression> parts;
        bool zero = false;
        for (int mi : comp) {
          if (h[mi].empty()) zero = true;
          parts.push_back(h[mi]);
        }
        if (zero) continue;
        r.add(contract_join(wk[n - m][k], parts), -c);
      }
    }
    g[n] = std::move(r);
    h[n] = functional_derivative(g[n], Variable::Field);
  }
  return g;
}

Expression gamma_full_recursion(int l) { return gamma_full_recursion_series(l).back(); }

std::vector<SignedWord> m_polynomial(int l) {
  std::vector<SignedWord> out;
  for (auto& c : compositions(l, 1)) out.push_back({(c.size() % 2) ? 1 : -1, c});
  return out;
}

bool check_no_articulation_weights(const Expression& gamma_l, int l, std::vector<std::string>* bad) {
  bool ok = true;
  auto flag = [&](const std::string& code) {
    ok = false;
    if (bad) bad->push_back(code);
  };
  const Expression pure = to_pure_omega(gamma_l);
  const int sign = (l % 2) ? 1 : -1;
  for (const auto& g : enumerate_1li(l, std::max(kDefaultOrderCap, l))) {
    if (!block_decomposition(g).articulation_vertices.empty()) continue;
    GraphTerm t{g, {}, {}};
    for (int v = 0; v < g.vertex_count(); ++v) t.weights.push_back(Monomial::omega(g.degree(v)));
    if (pure.coefficient(t) != signed_inverse(sign, aut_order(g))) flag(canonical_code(g));
  }
  for (auto& [key, entry] : pure) {
    const auto& g = entry.term.graph;
    if (!block_decomposition(g).articulation_vertices.empty()) continue;
    for (int v = 0; v < g.vertex_count(); ++v)
      if (!(entry.term.weights[v] == Monomial::omega(g.degree(v)))) {
        flag(canonical_code(g));
        break;
      }
  }
  return ok;
}

}  // namespace lce
