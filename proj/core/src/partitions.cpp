#include "lce/partitions.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "lce/errors.hpp"

namespace lce {

Multiset::Multiset(std::vector<std::pair<int, int>> elems) {
  std::map<int, int> acc;
  for (auto [label, m] : elems) {
    if (m < 0) throw Error(ErrorKind::InvalidArgument, "negative multiplicity");
    acc[label] += m;
  }
  for (auto [label, m] : acc)
    if (m > 0) elems_.emplace_back(label, m);
}

Multiset Multiset::from_elements(const std::vector<int>& labels) {
  std::vector<std::pair<int, int>> e;
  for (int x : labels) e.emplace_back(x, 1);
  return Multiset(std::move(e));
}

int Multiset::cardinality() const {
  int s = 0;
  for (auto [l, m] : elems_) s += m;
  return s;
}

int Multiset::multiplicity(int label) const {
  for (auto [l, m] : elems_)
    if (l == label) return m;
  return 0;
}

std::vector<int> Multiset::expanded() const {
  std::vector<int> out;
  for (auto [l, m] : elems_)
    for (int i = 0; i < m; ++i) out.push_back(l);
  return out;
}

void for_each_set_partition(int size, int n, const std::function<void(const std::vector<int>&)>& visit) {
  if (n < 1 || n > size) return;
  std::vector<int> a(size, 0);
  std::function<void(int, int)> rec = [&](int i, int used) {
    if (size - i < n - used) return;
    if (i == size) {
      if (used == n) visit(a);
      return;
    }
    for (int c = 0; c < used; ++c) {
      a[i] = c;
      rec(i + 1, used);
    }
    if (used < n) {
      a[i] = used;
      rec(i + 1, used + 1);
    }
  };
  rec(0, 0);
}

std::vector<SetPartition> multiset_partitions(const Multiset& b, int n) {
  if (b.empty()) throw Error(ErrorKind::EmptyMultiset, "cannot partition an empty multiset");
  const auto items = b.expanded();
  const int size = static_cast<int>(items.size());
  if (n < 1 || n > size) throw Error(ErrorKind::InvalidArgument, "cell count out of range");
  std::set<SetPartition> seen;
  for_each_set_partition(size, n, [&](const std::vector<int>& a) {
    std::vector<std::vector<int>> cells(n);
    for (int i = 0; i < size; ++i) cells[a[i]].push_back(items[i]);
    SetPartition p;
    for (auto& c : cells) p.cells.push_back(Multiset::from_elements(c));
    std::sort(p.cells.begin(), p.cells.end());
    seen.insert(std::move(p));
  });
  return {seen.begin(), seen.end()};
}

Integer stirling2(int i, int n) {
  if (n < 0 || i < 0 || n > i) return 0;
  std::vector<std::vector<Integer>> s(i + 1, std::vector<Integer>(i + 1, 0));
  s[0][0] = 1;
  for (int a = 1; a <= i; ++a)
    for (int k = 1; k <= a; ++k) s[a][k] = Integer(k) * s[a - 1][k] + s[a - 1][k - 1];
  return s[i][n];
}

Integer bell(int i) {
  Integer b = 0;
  for (int n = 0; n <= i; ++n) b += stirling2(i, n);
  return b;
}

Integer perm_order(const Multiset& b) {
  Integer r = 1;
  for (auto [l, m] : b.elements()) r *= factorial(m);
  return r;
}

Integer fix_order(const SetPartition& p) {
  Integer r = 1;
  for (const auto& c : p.cells) r *= perm_order(c);
  return r;
}

Integer degree_partition_count(const std::vector<int>& d, const std::vector<int>& dn) {
  long sd = 0, sdn = 0;
  for (int x : d) sd += x;
  for (int x : dn) sdn += x;
  if (sd != sdn) throw Error(ErrorKind::DegreeSumMismatch, "degree sums differ");
  const int n = static_cast<int>(dn.size());
  if (n < 1 || n > static_cast<int>(d.size())) return 0;
  std::vector<int> target(dn);
  std::sort(target.begin(), target.end());
  Integer count = 0;
  for_each_set_partition(static_cast<int>(d.size()), n, [&](const std::vector<int>& a) {
    std::vector<int> sums(n, 0);
    for (std::size_t i = 0; i < d.size(); ++i) sums[a[i]] += d[i];
    std::sort(sums.begin(), sums.end());
    if (sums == target) ++count;
  });
  return count;
}

std::vector<std::vector<int>> degree_sum_multisets(const std::vector<int>& d, int n) {
  std::set<std::vector<int>> out;
  for_each_set_partition(static_cast<int>(d.size()), n, [&](const std::vector<int>& a) {
    std::vector<int> sums(n, 0);
    for (std::size_t i = 0; i < d.size(); ++i) sums[a[i]] += d[i];
    std::sort(sums.begin(), sums.end());
    out.insert(sums);
  });
  return {out.begin(), out.end()};
}

Integer nu0_count(const std::vector<int>& open_valencies, const std::vector<int>& dn, const std::vector<int>& rho) {
  const std::size_t n = open_valencies.size();
  if (dn.size() != n || rho.size() != n)
    throw Error(ErrorKind::ShapeMismatch, "Dn and rho must have one entry per open vertex");
  std::vector<int> target(rho);
  std::sort(target.begin(), target.end());
  std::vector<int> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<int>(i);
  Integer count = 0;
  do {
    std::vector<int> got(n);
    for (std::size_t i = 0; i < n; ++i) got[i] = open_valencies[i] + dn[perm[i]];
    std::sort(got.begin(), got.end());
    if (got == target) ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

Multiset parse_multiset(const std::string& text, std::vector<std::string>& names) {
  std::vector<std::pair<int, int>> elems;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c); }),
               item.end());
    if (item.empty()) continue;
    int mult = 1;
    if (auto caret = item.find('^'); caret != std::string::npos) {
      try {
        mult = std::stoi(item.substr(caret + 1));
      } catch (...) {
        throw Error(ErrorKind::ParseError, "bad multiplicity in '" + item + "'");
      }
      item = item.substr(0, caret);
      if (mult < 1) throw Error(ErrorKind::ParseError, "multiplicity must be positive");
    }
    auto it = std::find(names.begin(), names.end(), item);
    int label = static_cast<int>(it - names.begin());
    if (it == names.end()) names.push_back(item);
    elems.emplace_back(label, mult);
  }
  if (elems.empty()) throw Error(ErrorKind::EmptyMultiset, "empty multiset '" + text + "'");
  return Multiset(std::move(elems));
}

std::string to_text(const Multiset& m, const std::vector<std::string>& names) {
  std::string s;
  for (auto [l, k] : m.elements()) {
    if (!s.empty()) s += ",";
    s += (l < static_cast<int>(names.size())) ? names[l] : ("#" + std::to_string(l));
    if (k > 1) s += "^" + std::to_string(k);
  }
  return s;
}

}  // namespace lce
