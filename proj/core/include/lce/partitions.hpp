#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "lce/rational.hpp"

namespace lce {

// Multiset over integer labels, kept sorted by label.
class Multiset {
 public:
  Multiset() = default;
  explicit Multiset(std::vector<std::pair<int, int>> elems);
  static Multiset from_elements(const std::vector<int>& labels);

  const std::vector<std::pair<int, int>>& elements() const { return elems_; }
  int cardinality() const;
  int multiplicity(int label) const;
  bool empty() const { return elems_.empty(); }
  // Labels repeated by multiplicity, ascending.
  std::vector<int> expanded() const;

  auto operator<=>(const Multiset&) const = default;
  bool operator==(const Multiset&) const = default;

 private:
  std::vector<std::pair<int, int>> elems_;
};

struct SetPartition {
  std::vector<Multiset> cells;  // sorted
  auto operator<=>(const SetPartition&) const = default;
  bool operator==(const SetPartition&) const = default;
};

// Visits every set partition of {0..size-1} into exactly n nonempty blocks as
// a restricted growth string (block index per element).
void for_each_set_partition(int size, int n, const std::function<void(const std::vector<int>&)>& visit);

std::vector<SetPartition> multiset_partitions(const Multiset& b, int n);

Integer stirling2(int i, int n);
Integer bell(int i);

Integer perm_order(const Multiset& b);
Integer fix_order(const SetPartition& p);

// Number of partitions of |D| distinct elements carrying degrees D into
// |Dn| cells whose degree sums form the multiset Dn.
Integer degree_partition_count(const std::vector<int>& d, const std::vector<int>& dn);

// Distinct sorted multisets of cell degree sums over all partitions of D into n cells.
std::vector<std::vector<int>> degree_sum_multisets(const std::vector<int>& d, int n);

// |nu0(Dn, rho)| for open vertices of the given valencies: the number of
// bijections from the entries of Dn (treated as distinct) to the open
// vertices such that {valency + label} equals rho.
Integer nu0_count(const std::vector<int>& open_valencies, const std::vector<int>& dn, const std::vector<int>& rho);

// Parses "b^2,b'" style multisets; names are assigned labels in order of
// first appearance.
Multiset parse_multiset(const std::string& text, std::vector<std::string>& names);
std::string to_text(const Multiset& m, const std::vector<std::string>& names);

}  // namespace lce
