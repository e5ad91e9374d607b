#include "lce/multigraph.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

#include "lce/errors.hpp"

namespace lce {

Multigraph::Multigraph(int n) : n_(n), m_(static_cast<std::size_t>(n) * n, 0) {}

Multigraph Multigraph::from_bundles(int n, const std::vector<Bundle>& bundles) {
  Multigraph g(n);
  for (const auto& b : bundles) g.add_edge(b.u, b.v, b.mult);
  return g;
}

int Multigraph::edge_count() const {
  int e = 0;
  for (int u = 0; u < n_; ++u)
    for (int v = u + 1; v < n_; ++v) e += mult(u, v);
  return e;
}

int Multigraph::degree(int v) const {
  int d = 0;
  for (int w = 0; w < n_; ++w) d += mult(v, w);
  return d;
}

std::vector<int> Multigraph::degrees() const {
  std::vector<int> d(n_);
  for (int v = 0; v < n_; ++v) d[v] = degree(v);
  return d;
}

void Multigraph::add_edge(int u, int v, int k) {
  if (u == v) throw Error(ErrorKind::InvalidArgument, "self-loops are not allowed");
  if (u < 0 || v < 0 || u >= n_ || v >= n_)
    throw Error(ErrorKind::InvalidArgument, "vertex index out of range");
  m_[u * n_ + v] += k;
  m_[v * n_ + u] += k;
  if (m_[u * n_ + v] < 0) throw Error(ErrorKind::InvalidArgument, "negative multiplicity");
}

void Multigraph::set_mult(int u, int v, int k) {
  if (u == v) throw Error(ErrorKind::InvalidArgument, "self-loops are not allowed");
  m_[u * n_ + v] = k;
  m_[v * n_ + u] = k;
}

int Multigraph::add_vertex() {
  std::vector<int> m(static_cast<std::size_t>(n_ + 1) * (n_ + 1), 0);
  for (int u = 0; u < n_; ++u)
    for (int v = 0; v < n_; ++v) m[u * (n_ + 1) + v] = m_[u * n_ + v];
  m_ = std::move(m);
  return n_++;
}

std::vector<Bundle> Multigraph::bundles() const {
  std::vector<Bundle> out;
  for (int u = 0; u < n_; ++u)
    for (int v = u + 1; v < n_; ++v)
      if (mult(u, v) > 0) out.push_back({u, v, mult(u, v)});
  return out;
}

Multigraph Multigraph::relabeled(const std::vector<int>& perm) const {
  Multigraph g(n_);
  for (int u = 0; u < n_; ++u)
    for (int v = 0; v < n_; ++v) g.m_[perm[u] * n_ + perm[v]] = m_[u * n_ + v];
  return g;
}

Multigraph Multigraph::induced(const std::vector<int>& keep) const {
  const int k = static_cast<int>(keep.size());
  Multigraph g(k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (i != j) g.m_[i * k + j] = mult(keep[i], keep[j]);
  return g;
}

// ---------------------------------------------------------------------------
// Canonical labelling

namespace {

class CanonSearch {
 public:
  CanonSearch(const Multigraph& g, const std::vector<int>& colors) : g_(g), n_(g.vertex_count()), base_(colors) {}

  CanonicalLabeling run() {
    std::vector<int> c = rank(base_);
    search(c);
    return {best_perm_, count_};
  }

 private:
  static std::vector<int> rank(const std::vector<int>& keys) {
    std::vector<int> sorted(keys);
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<int> r(keys.size());
    for (std::size_t i = 0; i < keys.size(); ++i)
      r[i] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), keys[i]) - sorted.begin());
    return r;
  }

  static int classes(const std::vector<int>& c) {
    int k = 0;
    for (int x : c) k = std::max(k, x + 1);
    return k;
  }

  void refine(std::vector<int>& c) const {
    int k = classes(c);
    std::vector<std::vector<int>> sig(n_);
    while (true) {
      for (int v = 0; v < n_; ++v) {
        auto& s = sig[v];
        s.clear();
        s.push_back(c[v]);
        std::vector<std::pair<int, int>> nb;
        for (int w = 0; w < n_; ++w)
          if (int m = g_.mult(v, w)) nb.emplace_back(c[w], m);
        std::sort(nb.begin(), nb.end());
        for (auto [cw, m] : nb) {
          s.push_back(cw);
          s.push_back(m);
        }
      }
      std::vector<std::vector<int>> distinct(sig);
      std::sort(distinct.begin(), distinct.end());
      distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
      for (int v = 0; v < n_; ++v)
        c[v] = static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), sig[v]) - distinct.begin());
      const int k2 = static_cast<int>(distinct.size());
      if (k2 == k) return;
      k = k2;
    }
  }

  void search(std::vector<int> c) {
    refine(c);
    const int k = classes(c);
    if (k == n_) {
      leaf(c);
      return;
    }
    std::vector<int> size(k, 0);
    for (int x : c) ++size[x];
    int target = 0;
    while (size[target] == 1) ++target;
    for (int v = 0; v < n_; ++v) {
      if (c[v] != target) continue;
      std::vector<int> c2(n_);
      for (int u = 0; u < n_; ++u) c2[u] = 2 * c[u] + ((c[u] == target && u != v) ? 1 : 0);
      search(rank(c2));
    }
  }

  void leaf(const std::vector<int>& pos) {
    std::vector<int> inv(n_);
    for (int v = 0; v < n_; ++v) inv[pos[v]] = v;
    std::vector<int> code;
    code.reserve(n_ + n_ * (n_ - 1) / 2);
    for (int i = 0; i < n_; ++i) code.push_back(base_[inv[i]]);
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j) code.push_back(g_.mult(inv[i], inv[j]));
    if (count_ == 0 || code > best_) {
      best_ = std::move(code);
      best_perm_ = pos;
      count_ = 1;
    } else if (code == best_) {
      ++count_;
    }
  }

  const Multigraph& g_;
  int n_;
  std::vector<int> base_;
  std::vector<int> best_;
  std::vector<int> best_perm_;
  std::uint64_t count_ = 0;
};

}  // namespace

CanonicalLabeling canonical_labeling(const Multigraph& g, const std::vector<int>& colors) {
  if (g.vertex_count() == 0) return {{}, 1};
  return CanonSearch(g, colors).run();
}

Multigraph canonical_form(const Multigraph& g) {
  auto lab = canonical_labeling(g, std::vector<int>(g.vertex_count(), 0));
  return g.relabeled(lab.perm);
}

CanonicalCode canonical_code(const Multigraph& g) { return to_text(canonical_form(g)); }

std::uint64_t vertex_aut_order(const Multigraph& g) {
  return canonical_labeling(g, std::vector<int>(g.vertex_count(), 0)).vertex_automorphisms;
}

namespace {
Integer bundle_factor(const Multigraph& g) {
  Integer f = 1;
  for (const auto& b : g.bundles()) f *= factorial(b.mult);
  return f;
}

std::vector<int> root_colors(const RootedMultigraph& g) {
  std::vector<int> col(g.base.vertex_count(), 0);
  for (std::size_t i = 0; i < g.roots.size(); ++i) {
    const auto [v, m] = g.roots[i];
    if (col[v] != 0) throw Error(ErrorKind::InvalidArgument, "root vertices must be distinct");
    col[v] = static_cast<int>((i + 1) * 1024 + m);
  }
  return col;
}
}  // namespace

Integer aut_order(const Multigraph& g) {
  Integer a = static_cast<unsigned long>(vertex_aut_order(g));
  return a * bundle_factor(g);
}

Integer rooted_aut_order(const RootedMultigraph& g) {
  auto lab = canonical_labeling(g.base, root_colors(g));
  Integer a = static_cast<unsigned long>(lab.vertex_automorphisms);
  return a * bundle_factor(g.base);
}

RootedMultigraph rooted_canonical_form(const RootedMultigraph& g) {
  auto lab = canonical_labeling(g.base, root_colors(g));
  RootedMultigraph r{g.base.relabeled(lab.perm), {}};
  for (auto [v, m] : g.roots) r.roots.emplace_back(lab.perm[v], m);
  return r;
}

CanonicalCode rooted_canonical_code(const RootedMultigraph& g) {
  auto r = rooted_canonical_form(g);
  std::string s = to_text(r.base) + " | ";
  for (std::size_t i = 0; i < r.roots.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(r.roots[i].first) + "*" + std::to_string(r.roots[i].second);
  }
  return s;
}

// ---------------------------------------------------------------------------
// Text form

std::string to_text(const Multigraph& g) {
  std::ostringstream os;
  os << g.vertex_count() << ":" << g.edge_count() << ";";
  bool first = true;
  for (const auto& b : g.bundles()) {
    os << (first ? " " : ", ") << b.u << "-" << b.v << "*" << b.mult;
    first = false;
  }
  return os.str();
}

Multigraph parse_graph(const std::string& text) {
  auto fail = [&](const std::string& why) -> Multigraph {
    throw Error(ErrorKind::ParseError, "graph code '" + text + "': " + why);
  };
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto number = [&]() -> int {
    skip();
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (start == pos) fail("expected a number");
    return std::stoi(text.substr(start, pos - start));
  };
  auto expect = [&](char ch) {
    skip();
    if (pos >= text.size() || text[pos] != ch) fail(std::string("expected '") + ch + "'");
    ++pos;
  };
  const int n = number();
  expect(':');
  const int m = number();
  expect(';');
  if (n < 1) fail("vertex count must be positive");
  Multigraph g(n);
  skip();
  while (pos < text.size()) {
    const int u = number();
    expect('-');
    const int v = number();
    int k = 1;
    skip();
    if (pos < text.size() && text[pos] == '*') {
      ++pos;
      k = number();
    }
    if (u >= n || v >= n || u == v || k < 1) fail("invalid bundle");
    g.add_edge(u, v, k);
    skip();
    if (pos < text.size()) expect(',');
    skip();
  }
  if (g.edge_count() != m) fail("edge count mismatch");
  return g;
}

// ---------------------------------------------------------------------------
// Connectivity

bool is_connected(const Multigraph& g) {
  const int n = g.vertex_count();
  if (n == 0) return false;
  std::vector<char> seen(n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w = 0; w < n; ++w)
      if (!seen[w] && g.mult(v, w) > 0) {
        seen[w] = 1;
        ++count;
        stack.push_back(w);
      }
  }
  return count == n;
}

namespace {

// Tarjan lowpoint search over the simple underlying graph; reports bridges
// and biconnected components (as bundle-index sets).
struct Lowpoint {
  const Multigraph& g;
  std::vector<Bundle> bundles;
  std::vector<std::vector<std::pair<int, int>>> adj;  // (neighbour, bundle)
  std::vector<int> disc, low;
  std::vector<int> edge_stack;
  std::vector<std::vector<int>> components;
  std::vector<int> bridge_list;
  int timer = 0;

  explicit Lowpoint(const Multigraph& graph) : g(graph), bundles(graph.bundles()) {
    const int n = g.vertex_count();
    adj.assign(n, {});
    for (int i = 0; i < static_cast<int>(bundles.size()); ++i) {
      adj[bundles[i].u].emplace_back(bundles[i].v, i);
      adj[bundles[i].v].emplace_back(bundles[i].u, i);
    }
    disc.assign(n, -1);
    low.assign(n, 0);
    for (int v = 0; v < n; ++v)
      if (disc[v] < 0) dfs(v, -1);
  }

  void dfs(int v, int parent_edge) {
    disc[v] = low[v] = timer++;
    for (auto [w, e] : adj[v]) {
      if (e == parent_edge) continue;
      if (disc[w] < 0) {
        edge_stack.push_back(e);
        dfs(w, e);
        low[v] = std::min(low[v], low[w]);
        if (low[w] >= disc[v]) {
          std::vector<int> comp;
          while (true) {
            int x = edge_stack.back();
            edge_stack.pop_back();
            comp.push_back(x);
            if (x == e) break;
          }
          std::sort(comp.begin(), comp.end());
          components.push_back(std::move(comp));
        }
        if (low[w] > disc[v] && bundles[e].mult == 1) bridge_list.push_back(e);
      } else if (disc[w] < disc[v]) {
        edge_stack.push_back(e);
        low[v] = std::min(low[v], disc[w]);
      }
    }
  }
};

}  // namespace

std::vector<int> bridges(const Multigraph& g) {
  Lowpoint lp(g);
  std::sort(lp.bridge_list.begin(), lp.bridge_list.end());
  return lp.bridge_list;
}

bool is_1li(const Multigraph& g) { return is_connected(g) && bridges(g).empty(); }

int cycle_rank(const Multigraph& g) { return g.edge_count() - g.vertex_count() + 1; }

BlockDecomposition block_decomposition(const Multigraph& g) {
  if (!is_connected(g)) throw Error(ErrorKind::DisconnectedInput, "block decomposition needs a connected graph");
  const int n = g.vertex_count();
  BlockDecomposition bd;
  bd.incidence.assign(n, {});
  if (n == 1) {
    bd.blocks.push_back({{0}, {}});
    bd.incidence[0].push_back(0);
    return bd;
  }
  Lowpoint lp(g);
  std::sort(lp.components.begin(), lp.components.end());
  for (auto& comp : lp.components) {
    Block b;
    b.bundles = comp;
    for (int e : comp) {
      b.vertices.push_back(lp.bundles[e].u);
      b.vertices.push_back(lp.bundles[e].v);
    }
    std::sort(b.vertices.begin(), b.vertices.end());
    b.vertices.erase(std::unique(b.vertices.begin(), b.vertices.end()), b.vertices.end());
    const int idx = static_cast<int>(bd.blocks.size());
    for (int v : b.vertices) bd.incidence[v].push_back(idx);
    bd.blocks.push_back(std::move(b));
  }
  for (int v = 0; v < n; ++v)
    if (bd.incidence[v].size() >= 2) bd.articulation_vertices.push_back(v);
  return bd;
}

}  // namespace lce
