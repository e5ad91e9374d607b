#include <doctest.h>

#include <random>

#include "lce/errors.hpp"
#include "lce/graph_enum.hpp"
#include "lce/multigraph.hpp"
#include "oracles.hpp"

using namespace lce;

namespace {

Multigraph g_of(const std::string& s) { return parse_graph(s); }

}  // namespace

TEST_SUITE("multigraph") {
  TEST_CASE("canonical codes identify isomorphic graphs") {
    auto p1 = g_of("3:2; 0-1, 1-2");
    auto p2 = g_of("3:2; 1-2, 2-0");
    CHECK(canonical_code(p1) == canonical_code(p2));
    CHECK(canonical_code(g_of("2:2; 0-1*2")) != canonical_code(g_of("2:1; 0-1")));
    CHECK(canonical_code(g_of("3:3; 0-1, 1-2, 0-2")) != canonical_code(p1));
  }

  TEST_CASE("canonical code is invariant under random relabeling") {
    std::mt19937_64 rng(7);
    for (const auto& g : enumerate_connected(5)) {
      std::vector<int> perm(g.vertex_count());
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      CHECK(canonical_code(g.relabeled(perm)) == canonical_code(g));
    }
  }

  TEST_CASE("symmetry factors of displayed graphs") {
    CHECK(aut_order(g_of("2:2; 0-1*2")) == 4);
    CHECK(aut_order(g_of("2:3; 0-1*3")) == 12);
    CHECK(aut_order(g_of("3:4; 0-1*2, 0-2*2")) == 8);
    CHECK(aut_order(g_of("4:7; 0-1*2, 0-2*2, 0-3*3")) == 48);
  }

  TEST_CASE("aut_order agrees with exhaustive permutation count") {
    for (int l = 1; l <= 6; ++l)
      for (const auto& g : enumerate_connected(l)) {
        if (g.vertex_count() > 7) continue;
        CHECK(aut_order(g) == oracle::aut_order(oracle::matrix_of(g)));
      }
  }

  TEST_CASE("rooted automorphisms") {
    RootedMultigraph dbl{g_of("2:2; 0-1*2"), {{0, 1}}};
    CHECK(rooted_aut_order(dbl) == 2);
    RootedMultigraph tri{g_of("3:3; 0-1, 1-2, 0-2"), {{0, 1}}};
    CHECK(rooted_aut_order(tri) == 2);
    RootedMultigraph tri2{g_of("3:3; 0-1, 1-2, 0-2"), {{0, 1}, {1, 1}}};
    CHECK(rooted_aut_order(tri2) == 1);
    for (const auto& g : enumerate_connected(4)) {
      auto m = oracle::matrix_of(g);
      for (int r = 0; r < g.vertex_count(); ++r)
        CHECK(rooted_aut_order({g, {{r, 1}}}) == oracle::aut_order(m, {r}));
    }
  }

  TEST_CASE("bridges and 1LI") {
    auto e = g_of("2:1; 0-1");
    CHECK(bridges(e).size() == 1);
    CHECK_FALSE(is_1li(e));
    CHECK(is_1li(g_of("2:2; 0-1*2")));
    CHECK(is_1li(g_of("3:4; 0-1*2, 0-2*2")));
    CHECK_FALSE(is_1li(g_of("3:3; 0-1*2, 1-2")));
    CHECK_FALSE(is_connected(g_of("4:2; 0-1, 2-3")));
    for (int l = 1; l <= 5; ++l)
      for (const auto& g : enumerate_connected(l))
        CHECK(is_1li(g) == oracle::bridgeless(oracle::matrix_of(g)));
  }

  TEST_CASE("Euler relation and degree identity") {
    for (int l = 0; l <= 5; ++l)
      for (const auto& g : enumerate_connected(l)) {
        int s = 0;
        for (int d : g.degrees()) s += d;
        CHECK(s == 2 * g.edge_count());
        CHECK(cycle_rank(g) == g.edge_count() - g.vertex_count() + 1);
        CHECK(cycle_rank(g) >= 0);
      }
  }

  TEST_CASE("block decomposition invariants") {
    auto glasses = g_of("3:4; 0-1*2, 0-2*2");
    auto bd = block_decomposition(glasses);
    CHECK(bd.blocks.size() == 2);
    CHECK(bd.articulation_vertices == std::vector<int>{0});
    for (int l = 1; l <= 5; ++l)
      for (const auto& g : enumerate_connected(l)) {
        auto d = block_decomposition(g);
        std::vector<int> seen(g.bundles().size(), 0);
        for (const auto& b : d.blocks)
          for (int e : b.bundles) ++seen[e];
        for (int c : seen) CHECK(c == 1);
        int arts = 0;
        for (int v = 0; v < g.vertex_count(); ++v) {
          bool art = d.incidence[v].size() >= 2;
          arts += art;
          CHECK(art == std::binary_search(d.articulation_vertices.begin(), d.articulation_vertices.end(), v));
        }
        CHECK(arts == oracle::articulation_count(oracle::matrix_of(g)));
        for (const auto& b : d.blocks) {
          auto sub = g.induced(b.vertices);
          CHECK(block_decomposition(sub).articulation_vertices.empty());
        }
      }
    CHECK_THROWS_AS(block_decomposition(g_of("4:2; 0-1, 2-3")), Error);
  }

  TEST_CASE("text round trip and parse errors") {
    auto g = g_of("4:7; 0-1*2, 0-2*2, 0-3*3");
    CHECK(parse_graph(to_text(g)) == g);
    CHECK_THROWS_AS(parse_graph("2:1; 0-0"), Error);
    CHECK_THROWS_AS(parse_graph("2:2; 0-1"), Error);
    CHECK_THROWS_AS(parse_graph("x"), Error);
  }
}
