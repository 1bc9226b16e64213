#pragma once

#include <gmpxx.h>

#include <string>

namespace curvelim {

// mpq_class keeps values canonical (lowest terms, positive denominator, 0 == 0/1)
// as long as every mutation goes through its operators.
using Scalar = mpq_class;
using Integer = mpz_class;

inline Scalar make_scalar(long num, long den = 1) {
  Scalar q(num, den);
  q.canonicalize();
  return q;
}

inline std::string to_string(const Scalar& q) { return q.get_str(); }
inline std::string to_string(const Integer& z) { return z.get_str(); }

inline bool is_integer(const Scalar& q) { return q.get_den() == 1; }

}  // namespace curvelim
