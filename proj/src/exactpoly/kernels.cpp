#include "curvelim/exactpoly/kernels.hpp"

#include <omp.h>

#include <algorithm>

#include "curvelim/exactpoly/errors.hpp"

namespace curvelim::kernels {

Polynomial add(const Polynomial& a, const Polynomial& b, bool negate_b) {
  const std::size_t n = a.nvars();
  const MonomialOrder& ord = a.order();
  std::vector<Exponent> exps;
  std::vector<Scalar> coeffs;
  exps.reserve((a.size() + b.size()) * n);
  coeffs.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  auto push = [&](const Exponent* e, Scalar c) {
    exps.insert(exps.end(), e, e + n);
    coeffs.push_back(std::move(c));
  };
  while (i < a.size() && j < b.size()) {
    int c = ord.compare(a.exps(i), b.exps(j), n);
    if (c > 0) {
      push(a.exps(i), a.coeff(i));
      ++i;
    } else if (c < 0) {
      push(b.exps(j), negate_b ? Scalar(-b.coeff(j)) : b.coeff(j));
      ++j;
    } else {
      Scalar s = negate_b ? Scalar(a.coeff(i) - b.coeff(j)) : Scalar(a.coeff(i) + b.coeff(j));
      if (s != 0) push(a.exps(i), std::move(s));
      ++i;
      ++j;
    }
  }
  for (; i < a.size(); ++i) push(a.exps(i), a.coeff(i));
  for (; j < b.size(); ++j) push(b.exps(j), negate_b ? Scalar(-b.coeff(j)) : b.coeff(j));
  return Polynomial::adopt(a.vars(), a.order(), std::move(exps), std::move(coeffs));
}

namespace {

// Product of terms [lo, hi) of a with all of b.
Polynomial product_range(const Polynomial& a, const Polynomial& b, std::size_t lo,
                         std::size_t hi) {
  if (hi - lo == 1) return b.mul_term(a.exps(lo), a.coeff(lo));
  std::size_t mid = lo + (hi - lo) / 2;
  return add(product_range(a, b, lo, mid), product_range(a, b, mid, hi), false);
}

}  // namespace

Polynomial mul_serial(const Polynomial& a, const Polynomial& b) {
  a.check_compatible(b);
  if (a.is_zero() || b.is_zero()) return Polynomial(a.vars(), a.order());
  // Row merges are cheaper when the shorter operand indexes the rows.
  if (a.size() > b.size()) return product_range(b.with_order(a.order()), a, 0, b.size());
  return product_range(a, b, 0, a.size());
}

Polynomial mul_parallel(const Polynomial& a, const Polynomial& b) {
  a.check_compatible(b);
  if (a.is_zero() || b.is_zero()) return Polynomial(a.vars(), a.order());
  const Polynomial& rows = a.size() <= b.size() ? a : b;
  const Polynomial& cols = a.size() <= b.size() ? b : a;
  const std::size_t threads = static_cast<std::size_t>(std::max(1, omp_get_max_threads()));
  const std::size_t chunks = std::min(rows.size(), threads * 4);
  if (chunks <= 1) return mul_serial(a, b);
  std::vector<Polynomial> parts(chunks);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t k = 0; k < chunks; ++k) {
    std::size_t lo = rows.size() * k / chunks;
    std::size_t hi = rows.size() * (k + 1) / chunks;
    parts[k] = product_range(rows, cols, lo, hi);
  }
  while (parts.size() > 1) {
    std::vector<Polynomial> next((parts.size() + 1) / 2);
    const std::size_t pairs = parts.size() / 2;
#pragma omp parallel for schedule(dynamic, 1)
    for (std::size_t k = 0; k < pairs; ++k) next[k] = add(parts[2 * k], parts[2 * k + 1], false);
    if (parts.size() % 2 == 1) next.back() = std::move(parts.back());
    parts = std::move(next);
  }
  return parts.front().order() == a.order() ? parts.front() : parts.front().with_order(a.order());
}

}  // namespace curvelim::kernels
