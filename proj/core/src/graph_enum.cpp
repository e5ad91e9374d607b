#include "lce/graph_enum.hpp"

#include <algorithm>
#include <functional>

#include "lce/errors.hpp"

namespace lce {

namespace {

void check_cap(int l, int cap) {
  if (l < 0) throw Error(ErrorKind::InvalidArgument, "order must be non-negative");
  if (l > cap)
    throw Error(ErrorKind::OrderCapExceeded, "order " + std::to_string(l) + " exceeds cap " + std::to_string(cap));
}

std::vector<Multigraph> next_level(const std::vector<Multigraph>& level) {
  std::map<CanonicalCode, Multigraph> out;
  auto offer = [&](const Multigraph& g) {
    Multigraph c = canonical_form(g);
    out.emplace(to_text(c), std::move(c));
  };
  for (const auto& g : level) {
    const int n = g.vertex_count();
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) {
        Multigraph h = g;
        h.add_edge(u, v);
        offer(h);
      }
    for (int u = 0; u < n; ++u) {
      Multigraph h = g;
      int w = h.add_vertex();
      h.add_edge(u, w);
      offer(h);
    }
  }
  std::vector<Multigraph> result;
  result.reserve(out.size());
  for (auto& [code, g] : out) result.push_back(std::move(g));
  return result;
}

}  // namespace

std::vector<std::vector<Multigraph>> enumerate_connected_levels(int l, int cap) {
  check_cap(l, cap);
  std::vector<std::vector<Multigraph>> levels;
  levels.push_back({Multigraph(1)});
  for (int k = 1; k <= l; ++k) levels.push_back(next_level(levels.back()));
  return levels;
}

std::vector<Multigraph> enumerate_connected(int l, int cap) {
  return std::move(enumerate_connected_levels(l, cap).back());
}

std::vector<Multigraph> enumerate_1li(int l, int cap) {
  if (l < 2) throw Error(ErrorKind::InvalidArgument, "1LI graphs need at least two edges");
  std::vector<Multigraph> out;
  for (auto& g : enumerate_connected(l, cap))
    if (is_1li(g)) out.push_back(std::move(g));
  return out;
}

std::map<int, long> articulation_census(int l, int cap) {
  std::map<int, long> census;
  for (const auto& g : enumerate_1li(l, cap))
    ++census[static_cast<int>(block_decomposition(g).articulation_vertices.size())];
  return census;
}

std::vector<RootedMultigraph> enumerate_rooted(int l, int r, int cap) {
  if (r < 1) throw Error(ErrorKind::InvalidArgument, "at least one root is required");
  std::map<CanonicalCode, RootedMultigraph> out;
  for (const auto& g : enumerate_connected(l, cap)) {
    const int n = g.vertex_count();
    if (r > n) continue;
    std::vector<int> pick;
    std::vector<char> used(n, 0);
    std::function<void()> rec = [&] {
      if (static_cast<int>(pick.size()) == r) {
        RootedMultigraph rg{g, {}};
        for (int v : pick) rg.roots.emplace_back(v, 1);
        auto c = rooted_canonical_form(rg);
        out.emplace(rooted_canonical_code(c), std::move(c));
        return;
      }
      for (int v = 0; v < n; ++v) {
        if (used[v]) continue;
        used[v] = 1;
        pick.push_back(v);
        rec();
        pick.pop_back();
        used[v] = 0;
      }
    };
    rec();
  }
  std::vector<RootedMultigraph> result;
  for (auto& [code, g] : out) result.push_back(std::move(g));
  return result;
}

}  // namespace lce
