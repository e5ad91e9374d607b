#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "lce/partitions.hpp"
#include "lce/rational.hpp"
#include "lce/site_poly.hpp"

namespace lce {

struct TreeCanon {
  std::string code;
  Integer aut;  // automorphisms preserving labels
};

// Centre-rooted canonical encoding of a labelled tree. Labels must not
// contain parentheses or brackets.
TreeCanon canonical_tree(const std::vector<std::vector<int>>& adj, const std::vector<std::string>& labels);

// Tree with open-circle vertices 0..n_open-1 followed by dashed vertices.
struct DashedTree {
  int n_open = 0;
  int n_dashed = 0;
  std::vector<std::pair<int, int>> edges;

  int vertex_count() const { return n_open + n_dashed; }
  bool is_open(int v) const { return v < n_open; }
  std::vector<int> valencies() const;
  std::vector<std::vector<int>> adjacency() const;
  int open_open_lines() const;
};

bool is_valid_dashed_tree(const DashedTree& t);

std::vector<DashedTree> enumerate_dashed(int n, int cap = 8);
std::string tree_code(const DashedTree& t);
Integer tree_aut_order(const DashedTree& t);
// (-1)^(lines + dashed vertices)
int sign(const DashedTree& t);

struct LabeledDashedTree {
  DashedTree base;
  int base_index = 0;           // position of base in enumerate_dashed(n)
  SetPartition partition;
  std::vector<int> cell_of_open;  // open vertex -> index into partition.cells
  Integer aut;                  // |Aut(T)|
  std::string code;
};

// Every tree with n open circles labelled by every partition of B into n
// cells, one representative per labelled isomorphism class.
std::vector<LabeledDashedTree> label_trees(const Multiset& b, int n);

Integer labeled_sym(const LabeledDashedTree& t);

using DegreeMap = std::map<int, int>;

int cell_degree(const Multiset& cell, const DegreeMap& d);

// omega_{|o|+d(c)} per open circle, gamma_2 per open-open line, gamma_m per
// m-valent dashed vertex.
Monomial weight(const LabeledDashedTree& t, const DegreeMap& d);

struct IntegerLabeledTree {
  DashedTree base;
  std::vector<int> labels;  // per open vertex
};

std::vector<int> ddeg_profile(const IntegerLabeledTree& t);
Monomial weight(const IntegerLabeledTree& t);
// Monomial determined by a ddeg profile on a given tree shape.
Monomial weight_from_profile(const DashedTree& t, const std::vector<int>& rho);

Integer nu0_count(const DashedTree& t, const std::vector<int>& dn, const std::vector<int>& rho);

// Nested-parenthesis form with "o[cell]" and "x" nodes.
std::string to_text(const DashedTree& t, const std::vector<std::string>& open_labels = {});

}  // namespace lce
