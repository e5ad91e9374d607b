#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lce/rational.hpp"

namespace lce {

// A bundle of `mult` parallel edges between u < v.
struct Bundle {
  int u = 0;
  int v = 0;
  int mult = 0;
  bool operator==(const Bundle&) const = default;
};

// Loop-free multigraph stored as a symmetric multiplicity matrix.
class Multigraph {
 public:
  Multigraph() = default;
  explicit Multigraph(int n);
  static Multigraph from_bundles(int n, const std::vector<Bundle>& bundles);

  int vertex_count() const { return n_; }
  int edge_count() const;
  int mult(int u, int v) const { return m_[u * n_ + v]; }
  int degree(int v) const;
  std::vector<int> degrees() const;

  void add_edge(int u, int v, int k = 1);
  void set_mult(int u, int v, int k);
  int add_vertex();

  // Bundles in (u, v) order; indices into this list are the edge indices
  // used by BlockDecomposition and bridges().
  std::vector<Bundle> bundles() const;

  // perm[v] is the new index of vertex v.
  Multigraph relabeled(const std::vector<int>& perm) const;

  // Vertex-induced subgraph on `keep` (in the given order).
  Multigraph induced(const std::vector<int>& keep) const;

  bool operator==(const Multigraph& o) const { return n_ == o.n_ && m_ == o.m_; }

 private:
  int n_ = 0;
  std::vector<int> m_;
};

struct RootedMultigraph {
  Multigraph base;
  // (vertex, multiplicity); vertices distinct, fixed individually.
  std::vector<std::pair<int, int>> roots;
};

using CanonicalCode = std::string;

struct CanonicalLabeling {
  std::vector<int> perm;            // perm[v] = canonical position of v
  std::uint64_t vertex_automorphisms = 0;
};

// Colour-preserving canonical labelling by exhaustive individualisation and
// refinement. Colours are compared by value.
CanonicalLabeling canonical_labeling(const Multigraph& g, const std::vector<int>& colors);

Multigraph canonical_form(const Multigraph& g);
CanonicalCode canonical_code(const Multigraph& g);
Integer aut_order(const Multigraph& g);
std::uint64_t vertex_aut_order(const Multigraph& g);

Integer rooted_aut_order(const RootedMultigraph& g);
CanonicalCode rooted_canonical_code(const RootedMultigraph& g);
RootedMultigraph rooted_canonical_form(const RootedMultigraph& g);

// Text form "n:m; u-v*k, ..." with the bundle list in (u, v) order.
std::string to_text(const Multigraph& g);
Multigraph parse_graph(const std::string& text);

bool is_connected(const Multigraph& g);
// Indices (into bundles()) of bundles that are bridges. A bundle of
// multiplicity >= 2 is never a bridge.
std::vector<int> bridges(const Multigraph& g);
bool is_1li(const Multigraph& g);

// |E| - |V| + 1 for a connected graph.
int cycle_rank(const Multigraph& g);

struct Block {
  std::vector<int> vertices;  // sorted
  std::vector<int> bundles;   // indices into bundles(), sorted
};

struct BlockDecomposition {
  std::vector<Block> blocks;
  std::vector<int> articulation_vertices;   // sorted
  std::vector<std::vector<int>> incidence;  // vertex -> block indices
};

BlockDecomposition block_decomposition(const Multigraph& g);

}  // namespace lce
