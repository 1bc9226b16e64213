#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "curvelim/exactpoly/polynomial.hpp"

namespace curvelim {

using PolyMatrix = std::vector<std::vector<Polynomial>>;

// deg_q(var) rows of p's coefficients above deg_p(var) rows of q's, highest power first.
PolyMatrix sylvester_matrix(const Polynomial& p, const Polynomial& q, std::size_t var);

// Fraction-free Gaussian elimination with row swaps on zero pivots.
Polynomial determinant_bareiss(PolyMatrix m);
// Same elimination with each step's entry updates spread over OpenMP threads.
Polynomial determinant_bareiss_parallel(PolyMatrix m);
// Cofactor expansion along the first row; exponential, small matrices only.
Polynomial determinant_laplace(const PolyMatrix& m);

Polynomial resultant(const Polynomial& p, const Polynomial& q, std::size_t var);
Polynomial resultant(const Polynomial& p, const Polynomial& q, std::string_view var);

struct ResultantCertificate {
  Polynomial resultant;
  Polynomial a;  // a*p + b*q == resultant
  Polynomial b;
};
// Cofactors from the last column of the Sylvester adjugate.
ResultantCertificate resultant_with_cofactors(const Polynomial& p, const Polynomial& q,
                                              std::size_t var);

struct SubresultantStep {
  unsigned degree = 0;     // degree in var of this remainder
  std::size_t terms = 0;
};
struct SubresultantChain {
  Polynomial last;                    // final element of degree 0 in var (the resultant up to sign)
  std::vector<SubresultantStep> trace;
};
// Subresultant pseudo-remainder sequence; lowers the degree in var step by step.
SubresultantChain subresultant_chain(const Polynomial& p, const Polynomial& q, std::size_t var);

}  // namespace curvelim
