#pragma once

#include <vector>

#include "lce/expression.hpp"
#include "lce/graph_enum.hpp"

namespace lce {

inline constexpr int kSymbolicOrderCap = 7;

// W_l by the graph rule: (-1)^l / Sym(C) with omega_{d(v)} at each vertex.
Expression w_expansion(int l, int cap = kSymbolicOrderCap);

// W_0..W_l from the flow recursion in the source H.
std::vector<Expression> w_recursion_series(int l);
Expression w_recursion(int l);

// Gamma_l by the articulation-vertex graph rule, mixed omega/gamma basis.
Expression gamma_expansion(int l, int cap = kSymbolicOrderCap);

// Gamma_0..Gamma_l (entries 0 and 1 empty) from the 1LI-reduced mixed
// recursion, using its own lower orders.
std::vector<Expression> gamma_mixed_recursion_series(int l);
Expression gamma_mixed_recursion(int l);

// Same from the unreduced Legendre recursion over all W graphs.
std::vector<Expression> gamma_full_recursion_series(int l);
Expression gamma_full_recursion(int l);

// k-fold source derivative of W_l restricted to 1LI base graphs.
Expression w_derivative_1li(const Expression& w, int k);

struct SignedWord {
  int sign = 1;
  std::vector<int> word;  // indices i_1..i_n of u_{i_1}...u_{i_n}
};

std::vector<SignedWord> m_polynomial(int l);

// Compositions of n into parts >= min_part, in lexicographic order.
std::vector<std::vector<int>> compositions(int n, int min_part = 1);

// True when every 1VI graph of e carries -(-1)^l / Sym with omega_{d(v)}
// weights; offending graph codes are appended to `bad`.
bool check_no_articulation_weights(const Expression& gamma_l, int l, std::vector<std::string>* bad = nullptr);

}  // namespace lce
