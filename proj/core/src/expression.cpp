#include "lce/expression.hpp"

#include <algorithm>
#include <sstream>

#include "lce/errors.hpp"

namespace lce {

int GraphTerm::degree() const {
  int d = 0;
  for (const auto& w : weights) d += w.degree();
  return d;
}

namespace {

std::string vertex_key(const GraphTerm& t, int v) {
  std::string k = t.weights[v].key();
  std::string s(1, static_cast<char>(k.size()));
  s += k;
  for (std::size_t i = 0; i < t.roots.size(); ++i)
    if (t.roots[i] == v) s.push_back(static_cast<char>(i + 1));
  s.push_back('\0');
  return s;
}

}  // namespace

std::string canonicalize(GraphTerm& t) {
  const int n = t.graph.vertex_count();
  if (static_cast<int>(t.weights.size()) != n)
    throw Error(ErrorKind::InvalidArgument, "weight map must cover every vertex");
  for (int r : t.roots)
    if (r < 0 || r >= n) throw Error(ErrorKind::InvalidArgument, "root out of range");
  std::vector<std::string> keys(n);
  for (int v = 0; v < n; ++v) keys[v] = vertex_key(t, v);
  std::vector<std::string> sorted(keys);
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<int> colors(n);
  for (int v = 0; v < n; ++v)
    colors[v] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), keys[v]) - sorted.begin());
  auto lab = canonical_labeling(t.graph, colors);
  GraphTerm c;
  c.graph = t.graph.relabeled(lab.perm);
  c.weights.resize(n);
  for (int v = 0; v < n; ++v) c.weights[lab.perm[v]] = t.weights[v];
  c.roots.resize(t.roots.size());
  for (std::size_t i = 0; i < t.roots.size(); ++i) c.roots[i] = lab.perm[t.roots[i]];
  t = std::move(c);
  std::string key(1, static_cast<char>(n));
  for (int v = 0; v < n; ++v) key += vertex_key(t, v);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) key.push_back(static_cast<char>(t.graph.mult(u, v)));
  return key;
}

void Expression::add(GraphTerm t, const Rational& c) {
  Rational q = c;
  q.canonicalize();
  if (q == 0) return;
  std::string key = canonicalize(t);
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(std::move(key), Entry{std::move(t), q});
    return;
  }
  it->second.coefficient += q;
  if (it->second.coefficient == 0) terms_.erase(it);
}

void Expression::add_expanded(const Multigraph& g, const std::vector<SitePoly>& weights,
                              const std::vector<int>& roots, const Rational& c) {
  const int n = g.vertex_count();
  if (static_cast<int>(weights.size()) != n) throw Error(ErrorKind::InvalidArgument, "weight count mismatch");
  for (const auto& w : weights)
    if (w.is_zero()) return;
  GraphTerm t{g, std::vector<Monomial>(n), roots};
  std::vector<std::pair<const Monomial*, const Rational*>> pick(n);
  std::function<void(int, const Rational&)> rec = [&](int v, const Rational& acc) {
    if (v == n) {
      for (int u = 0; u < n; ++u) t.weights[u] = *pick[u].first;
      add(t, acc);
      return;
    }
    for (auto& [m, k] : weights[v].terms()) {
      pick[v] = {&m, &k};
      rec(v + 1, acc * k);
    }
  };
  rec(0, c);
}

Expression& Expression::add(const Expression& e, const Rational& scale) {
  if (scale == 0) return *this;
  for (auto& [key, entry] : e.terms_) {
    auto it = terms_.find(key);
    Rational c = entry.coefficient * scale;
    if (it == terms_.end()) {
      terms_.emplace(key, Entry{entry.term, c});
      continue;
    }
    it->second.coefficient += c;
    if (it->second.coefficient == 0) terms_.erase(it);
  }
  return *this;
}

Expression Expression::operator+(const Expression& e) const {
  Expression r = *this;
  r.add(e);
  return r;
}

Expression Expression::operator-(const Expression& e) const {
  Expression r = *this;
  r.add(e, -1);
  return r;
}

Expression Expression::operator*(const Rational& c) const {
  Expression r;
  r.add(*this, c);
  return r;
}

Rational Expression::coefficient(GraphTerm t) const {
  auto it = terms_.find(canonicalize(t));
  return it == terms_.end() ? Rational(0) : it->second.coefficient;
}

bool Expression::operator==(const Expression& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  auto a = terms_.begin();
  auto b = o.terms_.begin();
  for (; a != terms_.end(); ++a, ++b)
    if (a->first != b->first || a->second.coefficient != b->second.coefficient) return false;
  return true;
}

Expression normalize(const Expression& e) {
  Expression r;
  for (auto& [key, entry] : e) r.add(entry.term, entry.coefficient);
  return r;
}

Expression functional_derivative(const Expression& e, Variable var) {
  Expression r;
  for (auto& [key, entry] : e) {
    const auto& t = entry.term;
    for (int v = 0; v < t.graph.vertex_count(); ++v) {
      SitePoly dw = var == Variable::Field ? d_field(t.weights[v]) : d_source(t.weights[v]);
      for (auto& [m, c] : dw.terms()) {
        GraphTerm u = t;
        u.weights[v] = m;
        u.roots.push_back(v);
        r.add(std::move(u), entry.coefficient * c);
      }
    }
  }
  return r;
}

namespace {

// Glues a one-slot part term onto vertex `at` of t.
void glue(GraphTerm& t, const GraphTerm& part, int at) {
  const int n0 = t.graph.vertex_count();
  const int np = part.graph.vertex_count();
  const int proot = part.roots.at(0);
  std::vector<int> map(np);
  int next = n0;
  for (int q = 0; q < np; ++q) map[q] = (q == proot) ? at : next++;
  for (int q = 0; q < np; ++q)
    if (q != proot) {
      t.graph.add_vertex();
      t.weights.push_back(part.weights[q]);
    }
  for (const auto& b : part.graph.bundles()) t.graph.add_edge(map[b.u], map[b.v], b.mult);
  t.weights[at] *= part.weights[proot];
}

}  // namespace

Expression contract_join(const Expression& a, const std::vector<Expression>& parts) {
  const std::size_t k = parts.size();
  for (auto& [key, entry] : a)
    if (entry.term.roots.size() != k)
      throw Error(ErrorKind::RootArityMismatch, "term carries " + std::to_string(entry.term.roots.size()) +
                                                    " slots but " + std::to_string(k) + " parts were given");
  for (const auto& p : parts)
    for (auto& [key, entry] : p)
      if (entry.term.roots.size() != 1) throw Error(ErrorKind::RootArityMismatch, "parts must be 1-rooted");
  Expression r;
  for (auto& [key, entry] : a) {
    std::function<void(std::size_t, const GraphTerm&, const Rational&)> rec =
        [&](std::size_t i, const GraphTerm& t, const Rational& c) {
          if (i == k) {
            GraphTerm u = t;
            u.roots.clear();
            r.add(std::move(u), c);
            return;
          }
          for (auto& [pk, pe] : parts[i]) {
            GraphTerm u = t;
            glue(u, pe.term, t.roots[i]);
            rec(i + 1, u, c * pe.coefficient);
          }
        };
    rec(0, entry.term, entry.coefficient);
  }
  return r;
}

Expression product(const Expression& a, const Expression& b) {
  Expression r;
  for (auto& [ka, ea] : a)
    for (auto& [kb, eb] : b) {
      const int na = ea.term.graph.vertex_count();
      const int nb = eb.term.graph.vertex_count();
      GraphTerm t;
      t.graph = Multigraph(na + nb);
      for (const auto& x : ea.term.graph.bundles()) t.graph.add_edge(x.u, x.v, x.mult);
      for (const auto& x : eb.term.graph.bundles()) t.graph.add_edge(x.u + na, x.v + na, x.mult);
      t.weights = ea.term.weights;
      t.weights.insert(t.weights.end(), eb.term.weights.begin(), eb.term.weights.end());
      t.roots = ea.term.roots;
      for (int rv : eb.term.roots) t.roots.push_back(rv + na);
      r.add(std::move(t), ea.coefficient * eb.coefficient);
    }
  return r;
}

Expression connect_slots(const Expression& e, int i, int j) {
  if (i == j) throw Error(ErrorKind::InvalidArgument, "cannot connect a slot to itself");
  Expression r;
  for (auto& [key, entry] : e) {
    const auto& t = entry.term;
    const int ns = static_cast<int>(t.roots.size());
    if (i < 0 || j < 0 || i >= ns || j >= ns) throw Error(ErrorKind::RootArityMismatch, "slot out of range");
    if (t.roots[i] == t.roots[j]) continue;
    GraphTerm u = t;
    u.graph.add_edge(t.roots[i], t.roots[j]);
    u.roots.erase(u.roots.begin() + std::max(i, j));
    u.roots.erase(u.roots.begin() + std::min(i, j));
    r.add(std::move(u), entry.coefficient);
  }
  return r;
}

Expression filter(const Expression& e, const std::function<bool(const GraphTerm&)>& keep) {
  Expression r;
  for (auto& [key, entry] : e)
    if (keep(entry.term)) r.add(entry.term, entry.coefficient);
  return r;
}

Expression restrict_1li(const Expression& e) {
  return filter(e, [](const GraphTerm& t) { return is_1li(t.graph); });
}

Expression map_weights(const Expression& e, const std::function<SitePoly(const Monomial&)>& f) {
  Expression r;
  for (auto& [key, entry] : e) {
    std::vector<SitePoly> w;
    w.reserve(entry.term.weights.size());
    for (const auto& m : entry.term.weights) w.push_back(f(m));
    r.add_expanded(entry.term.graph, w, entry.term.roots, entry.coefficient);
  }
  return r;
}

std::optional<int> homogeneous_degree(const Expression& e) {
  std::optional<int> d;
  for (auto& [key, entry] : e) {
    int x = entry.term.degree();
    if (d && *d != x) return std::nullopt;
    d = x;
  }
  return d;
}

int degree_of(const Expression& e) {
  auto d = homogeneous_degree(e);
  if (!d) throw Error(ErrorKind::NonHomogeneous, e.empty() ? "empty expression" : "terms of different degree");
  return *d;
}

int max_symbol_index(const Expression& e, SymKind kind) {
  int m = -1;
  for (auto& [key, entry] : e)
    for (const auto& w : entry.term.weights) m = std::max(m, w.max_index(kind));
  return m;
}

// ---------------------------------------------------------------------------

nlohmann::json to_json(const Expression& e) {
  nlohmann::json terms = nlohmann::json::array();
  for (auto& [key, entry] : e) {
    const auto& t = entry.term;
    nlohmann::json weights = nlohmann::json::array();
    for (int v = 0; v < t.graph.vertex_count(); ++v) {
      nlohmann::json factors = nlohmann::json::array();
      for (auto& [s, p] : t.weights[v].factors()) {
        if (s.kind == SymKind::Omega && s.index == 2 && p < 0)
          factors.push_back({{"symbol", "omega2inv"}, {"index", 2}, {"power", -p}});
        else
          factors.push_back(
              {{"symbol", s.kind == SymKind::Omega ? "omega" : "gamma"}, {"index", s.index}, {"power", p}});
      }
      weights.push_back({{"vertex", v}, {"factors", factors}});
    }
    terms.push_back({{"coefficient", to_string(entry.coefficient)},
                     {"graph", to_text(t.graph)},
                     {"weights", weights},
                     {"roots", t.roots}});
  }
  return terms;
}

Expression expression_from_json(const nlohmann::json& j) {
  const nlohmann::json& terms = j.is_object() && j.contains("terms") ? j.at("terms") : j;
  if (!terms.is_array()) throw Error(ErrorKind::ParseError, "expression JSON must be an array of terms");
  Expression e;
  try {
    for (const auto& jt : terms) {
      GraphTerm t;
      t.graph = parse_graph(jt.at("graph").get<std::string>());
      t.weights.assign(t.graph.vertex_count(), Monomial());
      for (const auto& jw : jt.at("weights")) {
        int v = jw.at("vertex").get<int>();
        if (v < 0 || v >= t.graph.vertex_count()) throw Error(ErrorKind::ParseError, "weight vertex out of range");
        Monomial m;
        for (const auto& f : jw.at("factors")) {
          auto sym = f.at("symbol").get<std::string>();
          int index = f.at("index").get<int>();
          int power = f.contains("power") ? f.at("power").get<int>() : 1;
          if (sym == "omega")
            m *= Monomial::omega(index, power);
          else if (sym == "gamma")
            m *= Monomial::gamma(index, power);
          else if (sym == "omega2inv")
            m *= Monomial::omega(2, -power);
          else
            throw Error(ErrorKind::ParseError, "unknown symbol '" + sym + "'");
        }
        t.weights[v] *= m;
      }
      if (jt.contains("roots")) t.roots = jt.at("roots").get<std::vector<int>>();
      e.add(std::move(t), parse_rational(jt.at("coefficient").get<std::string>()));
    }
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorKind::ParseError, ex.what());
  }
  return e;
}

std::string to_text(const Expression& e) {
  std::ostringstream os;
  for (auto& [key, entry] : e) {
    const auto& t = entry.term;
    os << to_string(entry.coefficient) << "  [" << to_text(t.graph) << "]  {";
    for (int v = 0; v < t.graph.vertex_count(); ++v) os << (v ? ", " : "") << v << ": " << t.weights[v].to_text();
    os << "}";
    if (!t.roots.empty()) {
      os << "  roots ";
      for (std::size_t i = 0; i < t.roots.size(); ++i) os << (i ? "," : "") << t.roots[i];
    }
    os << "\n";
  }
  return os.str();
}

std::string to_latex(const Expression& e, const std::string& argument) {
  if (e.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [key, entry] : e) {
    const auto& t = entry.term;
    const Rational& c = entry.coefficient;
    Rational a = abs(c);
    if (first)
      os << (c < 0 ? "-" : "");
    else
      os << (c < 0 ? " - " : " + ");
    first = false;
    if (a.get_den() != 1)
      os << "\\frac{" << a.get_num().get_str() << "}{" << a.get_den().get_str() << "}\\,";
    else if (a != 1)
      os << a.get_num().get_str() << "\\,";
    for (int v = 0; v < t.graph.vertex_count(); ++v) {
      if (t.weights[v].is_one()) continue;
      for (auto& [s, p] : t.weights[v].factors()) {
        os << (s.kind == SymKind::Omega ? "\\omega_{" : "\\gamma_{") << s.index << "}(" << argument << "_{x_{"
           << v + 1 << "}})";
        if (p != 1) os << "^{" << p << "}";
      }
    }
    for (const auto& b : t.graph.bundles()) {
      os << "\\,(\\ell_{x_{" << b.u + 1 << "}x_{" << b.v + 1 << "}})";
      if (b.mult != 1) os << "^{" << b.mult << "}";
    }
  }
  return os.str();
}

}  // namespace lce
