#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "curvelim/exactpoly/polynomial.hpp"

namespace curvelim {

struct ContentSplit {
  Scalar content;          // carries the sign of the leading coefficient
  Polynomial primitive;    // integer coefficients, gcd 1, positive leading coefficient
};

// p == content * primitive. For p == 0 the content is 0 and primitive is 0.
ContentSplit gcd_content(const Polynomial& p);
Polynomial primitive_part(const Polynomial& p);

struct GcdResult {
  Polynomial gcd;                 // primitive, positive leading coefficient
  std::vector<Scalar> contents;   // contents of the inputs
};
// Polynomial gcd via primitive pseudo-remainder sequences, recursive in the variables.
GcdResult gcd_content(const Polynomial& p, const Polynomial& q);
Polynomial gcd(const Polynomial& p, const Polynomial& q);

struct PseudoDivision {
  Polynomial quotient;
  Polynomial remainder;
  unsigned power = 0;  // lc(b)^power * a == quotient * b + remainder
};
// Pseudo-division in `var`; the power is always deg(a) - deg(b) + 1 when deg(a) >= deg(b).
PseudoDivision pseudo_divide(const Polynomial& a, const Polynomial& b, std::size_t var);
Polynomial prem(const Polynomial& a, const Polynomial& b, std::size_t var);

// Quotient if b divides a exactly over Q, otherwise nullopt.
std::optional<Polynomial> divide_exact(const Polynomial& a, const Polynomial& b);

// Removes the largest power of `factor` dividing p; returns (quotient, power).
std::pair<Polynomial, unsigned> divide_out(const Polynomial& p, const Polynomial& factor);

}  // namespace curvelim
