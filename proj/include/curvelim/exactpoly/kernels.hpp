#pragma once

#include "curvelim/exactpoly/polynomial.hpp"

namespace curvelim::kernels {

// Merge of two canonical polynomials under a common order.
Polynomial add(const Polynomial& a, const Polynomial& b, bool negate_b);

// Reference product: balanced tree of row merges, single thread.
Polynomial mul_serial(const Polynomial& a, const Polynomial& b);
// OpenMP product: chunks of `a` multiplied concurrently, partial sums merged in a tree.
Polynomial mul_parallel(const Polynomial& a, const Polynomial& b);

// Products at least this large (|a|*|b|) go to mul_parallel from operator*.
inline constexpr std::size_t kParallelMulThreshold = 1u << 14;

}  // namespace curvelim::kernels
