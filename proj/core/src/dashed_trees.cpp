#include "lce/dashed_trees.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "lce/errors.hpp"

namespace lce {

namespace {

struct Encoded {
  std::string code;
  Integer aut;
};

Encoded encode(const std::vector<std::vector<int>>& adj, const std::vector<std::string>& labels, int v, int parent) {
  std::vector<Encoded> kids;
  for (int w : adj[v])
    if (w != parent) kids.push_back(encode(adj, labels, w, v));
  std::sort(kids.begin(), kids.end(), [](const Encoded& a, const Encoded& b) { return a.code < b.code; });
  Encoded e{"(" + labels[v], 1};
  for (std::size_t i = 0; i < kids.size();) {
    std::size_t j = i;
    while (j < kids.size() && kids[j].code == kids[i].code) {
      e.aut *= kids[j].aut;
      e.code += kids[j].code;
      ++j;
    }
    e.aut *= factorial(static_cast<unsigned>(j - i));
    i = j;
  }
  e.code += ")";
  return e;
}

std::vector<int> centres(const std::vector<std::vector<int>>& adj) {
  const int n = static_cast<int>(adj.size());
  if (n <= 2) {
    std::vector<int> c;
    for (int v = 0; v < n; ++v) c.push_back(v);
    return c;
  }
  std::vector<int> deg(n);
  std::vector<int> layer;
  for (int v = 0; v < n; ++v) {
    deg[v] = static_cast<int>(adj[v].size());
    if (deg[v] <= 1) layer.push_back(v);
  }
  int remaining = n;
  while (remaining > 2) {
    remaining -= static_cast<int>(layer.size());
    std::vector<int> next;
    for (int v : layer)
      for (int w : adj[v])
        if (--deg[w] == 1) next.push_back(w);
    layer = std::move(next);
  }
  std::sort(layer.begin(), layer.end());
  return layer;
}

}  // namespace

TreeCanon canonical_tree(const std::vector<std::vector<int>>& adj, const std::vector<std::string>& labels) {
  auto c = centres(adj);
  if (c.size() == 1) {
    auto e = encode(adj, labels, c[0], -1);
    return {e.code, e.aut};
  }
  auto a = encode(adj, labels, c[0], c[1]);
  auto b = encode(adj, labels, c[1], c[0]);
  if (b.code < a.code) std::swap(a, b);
  Integer aut = a.aut * b.aut;
  if (a.code == b.code) aut *= 2;
  return {"[" + a.code + b.code + "]", aut};
}

// ---------------------------------------------------------------------------

std::vector<int> DashedTree::valencies() const {
  std::vector<int> val(vertex_count(), 0);
  for (auto [a, b] : edges) {
    ++val[a];
    ++val[b];
  }
  return val;
}

std::vector<std::vector<int>> DashedTree::adjacency() const {
  std::vector<std::vector<int>> adj(vertex_count());
  for (auto [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  return adj;
}

int DashedTree::open_open_lines() const {
  int k = 0;
  for (auto [a, b] : edges)
    if (is_open(a) && is_open(b)) ++k;
  return k;
}

bool is_valid_dashed_tree(const DashedTree& t) {
  const int n = t.vertex_count();
  if (t.n_open < 1 || static_cast<int>(t.edges.size()) != n - 1) return false;
  auto adj = t.adjacency();
  std::vector<char> seen(n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : adj[v])
      if (!seen[w]) {
        seen[w] = 1;
        ++count;
        stack.push_back(w);
      }
  }
  if (count != n) return false;
  auto val = t.valencies();
  for (int v = 0; v < n; ++v) {
    if (t.is_open(v) && n > 1 && val[v] < 1) return false;
    if (!t.is_open(v) && val[v] < 3) return false;
  }
  for (auto [a, b] : t.edges)
    if (!t.is_open(a) && !t.is_open(b)) return false;
  return true;
}

namespace {

std::vector<std::string> plain_labels(const DashedTree& t) {
  std::vector<std::string> labels(t.vertex_count());
  for (int v = 0; v < t.vertex_count(); ++v) labels[v] = t.is_open(v) ? "o" : "x";
  return labels;
}

// Builds a DashedTree from typed vertices, placing open circles first.
DashedTree from_typed(const std::vector<char>& open, const std::vector<std::pair<int, int>>& edges) {
  const int n = static_cast<int>(open.size());
  std::vector<int> idx(n);
  DashedTree t;
  for (int v = 0; v < n; ++v)
    if (open[v]) idx[v] = t.n_open++;
  for (int v = 0; v < n; ++v)
    if (!open[v]) idx[v] = t.n_open + t.n_dashed++;
  for (auto [a, b] : edges) t.edges.emplace_back(std::min(idx[a], idx[b]), std::max(idx[a], idx[b]));
  std::sort(t.edges.begin(), t.edges.end());
  return t;
}

}  // namespace

std::string tree_code(const DashedTree& t) { return canonical_tree(t.adjacency(), plain_labels(t)).code; }

Integer tree_aut_order(const DashedTree& t) { return canonical_tree(t.adjacency(), plain_labels(t)).aut; }

int sign(const DashedTree& t) { return ((t.edges.size() + t.n_dashed) % 2) ? -1 : 1; }

std::vector<DashedTree> enumerate_dashed(int n, int cap) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "at least one open circle is required");
  if (n > cap) throw Error(ErrorKind::OrderCapExceeded, "dashed trees beyond n=" + std::to_string(cap));
  std::map<std::string, DashedTree> level;
  DashedTree single;
  single.n_open = 1;
  level.emplace(tree_code(single), single);
  for (int k = 1; k < n; ++k) {
    std::map<std::string, DashedTree> next;
    for (auto& [code, t] : level) {
      const int nv = t.vertex_count();
      std::vector<char> open(nv);
      for (int v = 0; v < nv; ++v) open[v] = t.is_open(v);
      auto offer = [&](std::vector<char> types, std::vector<std::pair<int, int>> edges) {
        DashedTree u = from_typed(types, edges);
        next.emplace(tree_code(u), u);
      };
      for (int v = 0; v < nv; ++v) {
        auto types = open;
        auto edges = t.edges;
        types.push_back(1);
        edges.emplace_back(v, nv);
        offer(types, edges);
      }
      for (std::size_t e = 0; e < t.edges.size(); ++e) {
        auto [a, b] = t.edges[e];
        if (!t.is_open(a) || !t.is_open(b)) continue;
        auto types = open;
        auto edges = t.edges;
        edges.erase(edges.begin() + static_cast<long>(e));
        types.push_back(0);
        types.push_back(1);
        edges.emplace_back(a, nv);
        edges.emplace_back(b, nv);
        edges.emplace_back(nv, nv + 1);
        offer(types, edges);
      }
    }
    level = std::move(next);
  }
  std::vector<DashedTree> out;
  for (auto& [code, t] : level) out.push_back(t);
  return out;
}

// ---------------------------------------------------------------------------

namespace {

std::string cell_key(const Multiset& c) {
  std::string k;
  for (auto [l, m] : c.elements()) k += std::to_string(l) + "^" + std::to_string(m) + ".";
  return k;
}

}  // namespace

std::vector<LabeledDashedTree> label_trees(const Multiset& b, int n) {
  if (b.empty()) throw Error(ErrorKind::EmptyMultiset, "cannot label trees by an empty multiset");
  const auto trees = enumerate_dashed(n);
  const auto parts = multiset_partitions(b, n);
  std::map<std::string, LabeledDashedTree> out;
  for (std::size_t ti = 0; ti < trees.size(); ++ti) {
    const auto& t = trees[ti];
    const auto adj = t.adjacency();
    for (const auto& p : parts) {
      // Cells are sorted, so equal cells are adjacent; assign class ids.
      std::vector<int> cls(n);
      for (int i = 0; i < n; ++i) cls[i] = (i > 0 && p.cells[i] == p.cells[i - 1]) ? cls[i - 1] : i;
      std::vector<int> assign(cls);
      std::sort(assign.begin(), assign.end());
      do {
        std::vector<std::string> labels(t.vertex_count(), "x");
        for (int v = 0; v < n; ++v) labels[v] = "o" + cell_key(p.cells[assign[v]]);
        auto canon = canonical_tree(adj, labels);
        if (out.count(canon.code)) continue;
        LabeledDashedTree lt;
        lt.base = t;
        lt.base_index = static_cast<int>(ti);
        lt.partition = p;
        lt.cell_of_open = assign;
        lt.aut = canon.aut;
        lt.code = canon.code;
        out.emplace(canon.code, std::move(lt));
      } while (std::next_permutation(assign.begin(), assign.end()));
    }
  }
  std::vector<LabeledDashedTree> result;
  result.reserve(out.size());
  for (auto& [code, lt] : out) result.push_back(std::move(lt));
  return result;
}

Integer labeled_sym(const LabeledDashedTree& t) { return t.aut * fix_order(t.partition); }

int cell_degree(const Multiset& cell, const DegreeMap& d) {
  int s = 0;
  for (auto [l, m] : cell.elements()) {
    auto it = d.find(l);
    if (it == d.end()) throw Error(ErrorKind::InvalidArgument, "label without degree");
    s += m * it->second;
  }
  return s;
}

Monomial weight_from_profile(const DashedTree& t, const std::vector<int>& rho) {
  const auto val = t.valencies();
  Monomial w;
  for (int v = 0; v < t.n_open; ++v) {
    // A lone open circle carries the bare omega_{d(v)}.
    if (t.vertex_count() > 1 && rho[v] < 3)
      throw Error(ErrorKind::DegreeUnderflow, "open circle with ddeg " + std::to_string(rho[v]));
    w *= Monomial::omega(rho[v]);
  }
  w *= Monomial::gamma(2, t.open_open_lines());
  for (int v = t.n_open; v < t.vertex_count(); ++v) w *= Monomial::gamma(val[v]);
  return w;
}

Monomial weight(const LabeledDashedTree& t, const DegreeMap& d) {
  const auto val = t.base.valencies();
  std::vector<int> rho(t.base.n_open);
  for (int v = 0; v < t.base.n_open; ++v) rho[v] = val[v] + cell_degree(t.partition.cells[t.cell_of_open[v]], d);
  return weight_from_profile(t.base, rho);
}

std::vector<int> ddeg_profile(const IntegerLabeledTree& t) {
  if (static_cast<int>(t.labels.size()) != t.base.n_open)
    throw Error(ErrorKind::ShapeMismatch, "one label per open circle is required");
  const auto val = t.base.valencies();
  std::vector<int> rho(t.base.n_open);
  for (int v = 0; v < t.base.n_open; ++v) rho[v] = val[v] + t.labels[v];
  std::sort(rho.begin(), rho.end());
  return rho;
}

Monomial weight(const IntegerLabeledTree& t) {
  if (static_cast<int>(t.labels.size()) != t.base.n_open)
    throw Error(ErrorKind::ShapeMismatch, "one label per open circle is required");
  const auto val = t.base.valencies();
  std::vector<int> rho(t.base.n_open);
  for (int v = 0; v < t.base.n_open; ++v) rho[v] = val[v] + t.labels[v];
  return weight_from_profile(t.base, rho);
}

Integer nu0_count(const DashedTree& t, const std::vector<int>& dn, const std::vector<int>& rho) {
  const auto val = t.valencies();
  return nu0_count(std::vector<int>(val.begin(), val.begin() + t.n_open), dn, rho);
}

std::string to_text(const DashedTree& t, const std::vector<std::string>& open_labels) {
  const auto adj = t.adjacency();
  auto c = centres(adj);
  std::function<std::string(int, int)> rec = [&](int v, int parent) {
    std::string s = t.is_open(v) ? "o" : "x";
    if (t.is_open(v) && v < static_cast<int>(open_labels.size())) s += "[" + open_labels[v] + "]";
    std::vector<std::string> kids;
    for (int w : adj[v])
      if (w != parent) kids.push_back(rec(w, v));
    std::sort(kids.begin(), kids.end());
    if (!kids.empty()) {
      s += "(";
      for (std::size_t i = 0; i < kids.size(); ++i) s += (i ? ", " : "") + kids[i];
      s += ")";
    }
    return s;
  };
  return rec(c[0], -1);
}

}  // namespace lce
