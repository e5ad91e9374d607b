#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lce/multigraph.hpp"
#include "lce/rational.hpp"
#include "lce/site_poly.hpp"

namespace lce {

// A vertex-weighted multigraph standing for the unconstrained lattice sum
// over all vertex -> site maps of prod(ell) * prod(weights). Slot i of a
// rooted term is pinned to the site carried by vertex roots[i]; several
// slots may share a vertex.
struct GraphTerm {
  Multigraph graph;
  std::vector<Monomial> weights;
  std::vector<int> roots;

  int degree() const;
};

// Brings t into canonical form (vertex weights and slot sets act as
// colours) and returns its key.
std::string canonicalize(GraphTerm& t);

class Expression {
 public:
  struct Entry {
    GraphTerm term;
    Rational coefficient;
  };

  void add(GraphTerm t, const Rational& c);
  // Term with polynomial vertex weights, multiplied out.
  void add_expanded(const Multigraph& g, const std::vector<SitePoly>& weights, const std::vector<int>& roots,
                    const Rational& c);
  Expression& add(const Expression& e, const Rational& scale = 1);
  Expression& operator+=(const Expression& e) { return add(e); }
  Expression& operator-=(const Expression& e) { return add(e, -1); }
  Expression operator+(const Expression& e) const;
  Expression operator-(const Expression& e) const;
  Expression operator*(const Rational& c) const;

  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  const std::map<std::string, Entry>& entries() const { return terms_; }
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }

  // Coefficient of the class of t (0 if absent).
  Rational coefficient(GraphTerm t) const;

  bool operator==(const Expression& o) const;

 private:
  std::map<std::string, Entry> terms_;
};

// Re-canonicalises every term and merges; idempotent.
Expression normalize(const Expression& e);

enum class Variable { Field, Source };

// Appends one slot: sum over vertices of the term with that vertex carrying
// the new slot and its weight differentiated by the product rule.
Expression functional_derivative(const Expression& e, Variable var = Variable::Field);

// Glues the root of parts[i] onto the vertex of slot i of each term of a.
// Every term of a must carry exactly parts.size() slots and every part term
// exactly one.
Expression contract_join(const Expression& a, const std::vector<Expression>& parts);

// Disjoint union; slots of b follow those of a.
Expression product(const Expression& a, const Expression& b);

// Contracts slots i and j with one ell line; terms with both slots on one
// vertex vanish since ell has zero diagonal.
Expression connect_slots(const Expression& e, int i, int j);

Expression filter(const Expression& e, const std::function<bool(const GraphTerm&)>& keep);
Expression restrict_1li(const Expression& e);

// Applies a polynomial rewrite to every vertex weight.
Expression map_weights(const Expression& e, const std::function<SitePoly(const Monomial&)>& f);

std::optional<int> homogeneous_degree(const Expression& e);
// Throws NonHomogeneous when the terms disagree or the expression is empty.
int degree_of(const Expression& e);

int max_symbol_index(const Expression& e, SymKind kind);

nlohmann::json to_json(const Expression& e);
Expression expression_from_json(const nlohmann::json& j);
std::string to_text(const Expression& e);
std::string to_latex(const Expression& e, const std::string& argument = "\\varphi");

}  // namespace lce
