#pragma once

#include <map>
#include <vector>

#include "lce/multigraph.hpp"

namespace lce {

inline constexpr int kDefaultOrderCap = 8;

// Connected loop-free multigraphs with exactly l edges, one per isomorphism
// class, in canonical form and ascending canonical-code order. l = 0 yields
// the single-vertex graph.
std::vector<Multigraph> enumerate_connected(int l, int cap = kDefaultOrderCap);

// All levels 0..l at once.
std::vector<std::vector<Multigraph>> enumerate_connected_levels(int l, int cap = kDefaultOrderCap);

std::vector<Multigraph> enumerate_1li(int l, int cap = kDefaultOrderCap);

// Number of articulation vertices -> number of 1LI graphs with l edges.
std::map<int, long> articulation_census(int l, int cap = kDefaultOrderCap);

// Rooted classes with r distinct, individually fixed roots of multiplicity 1.
std::vector<RootedMultigraph> enumerate_rooted(int l, int r, int cap = kDefaultOrderCap);

}  // namespace lce
