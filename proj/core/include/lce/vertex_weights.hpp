#pragma once

#include <string>
#include <vector>

#include "lce/dashed_trees.hpp"
#include "lce/multigraph.hpp"
#include "lce/partitions.hpp"
#include "lce/site_poly.hpp"

namespace lce {

// Multiset of rooted 1VI block classes meeting at a vertex, with the degree
// of the vertex inside each class.
struct BlockProfile {
  Multiset blocks;
  DegreeMap degree;
  std::vector<std::string> names;  // optional, indexed by label

  int total_degree() const;
};

// Block profile of vertex v; labels are assigned in order of the rooted
// canonical codes of the blocks, which also become the names.
BlockProfile block_profile(const Multigraph& g, const BlockDecomposition& bd, int v);

// Sum over partition-labelled dashed trees.
SitePoly mu_gamma_blocks(const BlockProfile& b);

// Sum over integer-labelled dashed trees; depends only on the degrees.
SitePoly mu_gamma_degrees(const std::vector<int>& d);

// c(t, Dn, rho) = |nu0(Dn, rho)| P(D, Dn) / |Aut(t)| for one tree shape,
// keyed by the sorted profile rho.
std::map<std::vector<int>, Rational> integer_tree_coefficients(const DashedTree& t, const std::vector<int>& d,
                                                               const std::vector<int>& dn);

struct GradingReport {
  bool ok = true;
  std::vector<std::string> offending;
};

GradingReport grading_check(const SitePoly& e, int d_v);

}  // namespace lce
