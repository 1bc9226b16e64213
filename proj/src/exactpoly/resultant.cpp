#include "curvelim/exactpoly/resultant.hpp"

#include <omp.h>

#include "curvelim/exactpoly/algebra.hpp"
#include "curvelim/exactpoly/compact.hpp"
#include "curvelim/exactpoly/errors.hpp"

namespace curvelim {

namespace {

Polynomial exact_div(const Polynomial& a, const Polynomial& b) {
  if (b.is_constant()) return a.divided(b.coeff(0));
  auto q = divide_exact(a, b);
  if (!q) throw DomainError("internal: inexact division in fraction-free elimination");
  return std::move(*q);
}

bool pivot(PolyMatrix& m, std::size_t k, int& sign) {
  if (!m[k][k].is_zero()) return true;
  for (std::size_t i = k + 1; i < m.size(); ++i) {
    if (!m[i][k].is_zero()) {
      std::swap(m[i], m[k]);
      sign = -sign;
      return true;
    }
  }
  return false;
}

void check_square(const PolyMatrix& m) {
  if (m.empty()) throw DomainError("determinant of an empty matrix");
  for (const auto& row : m) {
    if (row.size() != m.size()) throw DomainError("determinant of a non-square matrix");
  }
}

template <bool kParallel>
Polynomial bareiss(PolyMatrix m) {
  check_square(m);
  const std::size_t n = m.size();
  int sign = 1;
  Polynomial prev = Polynomial::constant(m[0][0].vars(), Scalar(1), m[0][0].order());
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (!pivot(m, k, sign)) return Polynomial(prev.vars(), prev.order());
    const std::size_t rest = n - k - 1;
    const std::size_t cells = rest * rest;
    auto update = [&](std::size_t cell) {
      std::size_t i = k + 1 + cell / rest;
      std::size_t j = k + 1 + cell % rest;
      m[i][j] = exact_div(m[k][k] * m[i][j] - m[i][k] * m[k][j], prev);
    };
    if constexpr (kParallel) {
#pragma omp parallel for schedule(dynamic, 1)
      for (std::size_t cell = 0; cell < cells; ++cell) update(cell);
    } else {
      for (std::size_t cell = 0; cell < cells; ++cell) update(cell);
    }
    prev = m[k][k];
  }
  Polynomial det = m[n - 1][n - 1];
  return sign < 0 ? -det : det;
}

PolyMatrix minor_of(const PolyMatrix& m, std::size_t row, std::size_t col) {
  PolyMatrix out;
  out.reserve(m.size() - 1);
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i == row) continue;
    std::vector<Polynomial> r;
    r.reserve(m.size() - 1);
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (j != col) r.push_back(m[i][j]);
    }
    out.push_back(std::move(r));
  }
  return out;
}

void require_positive_degrees(const Polynomial& p, const Polynomial& q, std::size_t var) {
  p.check_compatible(q);
  if (var >= p.nvars()) throw StructuralError("resultant variable out of range");
  if (p.is_zero() || q.is_zero() || p.degree(var) == 0 || q.degree(var) == 0) {
    throw DomainError("resultant needs positive degree in '" + p.vars()->name(var) +
                      "' for both operands");
  }
}

}  // namespace

PolyMatrix sylvester_matrix(const Polynomial& p, const Polynomial& q, std::size_t var) {
  require_positive_degrees(p, q, var);
  const Polynomial qq = q.with_order(p.order());
  auto pc = coefficients_in(p, var);
  auto qc = coefficients_in(qq, var);
  const std::size_t m = pc.size() - 1;
  const std::size_t n = qc.size() - 1;
  const std::size_t size = m + n;
  Polynomial zero(p.vars(), p.order());
  PolyMatrix s(size, std::vector<Polynomial>(size, zero));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t k = 0; k <= m; ++k) s[r][r + k] = pc[m - k];
  }
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t k = 0; k <= n; ++k) s[n + r][r + k] = qc[n - k];
  }
  return s;
}

Polynomial determinant_bareiss(PolyMatrix m) { return bareiss<false>(std::move(m)); }

Polynomial determinant_bareiss_parallel(PolyMatrix m) { return bareiss<true>(std::move(m)); }

Polynomial determinant_laplace(const PolyMatrix& m) {
  check_square(m);
  if (m.size() == 1) return m[0][0];
  Polynomial total(m[0][0].vars(), m[0][0].order());
  for (std::size_t j = 0; j < m.size(); ++j) {
    if (m[0][j].is_zero()) continue;
    Polynomial term = m[0][j] * determinant_laplace(minor_of(m, 0, j));
    if (j % 2 == 0) {
      total += term;
    } else {
      total -= term;
    }
  }
  return total;
}

Polynomial resultant(const Polynomial& p, const Polynomial& q, std::size_t var) {
  require_positive_degrees(p, q, var);
  Compaction c = Compaction::of({&p, &q}, p.vars());
  MonomialOrder ord = MonomialOrder::grevlex();
  Polynomial pc = c.down(p, ord);
  Polynomial qc = c.down(q, ord);
  Polynomial det = determinant_bareiss_parallel(sylvester_matrix(pc, qc, c.to_compact(var)));
  return c.up(det, p.order());
}

Polynomial resultant(const Polynomial& p, const Polynomial& q, std::string_view var) {
  return resultant(p, q, p.vars()->require(var));
}

ResultantCertificate resultant_with_cofactors(const Polynomial& p, const Polynomial& q,
                                              std::size_t var) {
  require_positive_degrees(p, q, var);
  Compaction c = Compaction::of({&p, &q}, p.vars());
  MonomialOrder ord = MonomialOrder::grevlex();
  Polynomial pc = c.down(p, ord);
  Polynomial qc = c.down(q, ord);
  const std::size_t x = c.to_compact(var);
  PolyMatrix s = sylvester_matrix(pc, qc, x);
  const std::size_t m = pc.degree(x);
  const std::size_t n = qc.degree(x);
  const std::size_t size = m + n;
  const std::size_t last = size - 1;
  std::vector<Polynomial> cof(size, Polynomial(c.table(), ord));
  if (size == 2) {
    cof[0] = s[1][0];
    cof[1] = -s[0][0];
  } else {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::size_t r = 0; r < size; ++r) {
      Polynomial d = determinant_bareiss(minor_of(s, r, last));
      cof[r] = (r + last) % 2 == 0 ? d : -d;
    }
  }
  Polynomial res(c.table(), ord);
  for (std::size_t r = 0; r < size; ++r) res += cof[r] * s[r][last];
  std::vector<Exponent> shift(c.table()->size(), 0);
  Polynomial a(c.table(), ord);
  Polynomial b(c.table(), ord);
  for (std::size_t r = 0; r < n; ++r) {
    shift[x] = static_cast<Exponent>(n - 1 - r);
    a += cof[r].mul_term(shift.data(), Scalar(1));
  }
  for (std::size_t r = 0; r < m; ++r) {
    shift[x] = static_cast<Exponent>(m - 1 - r);
    b += cof[n + r].mul_term(shift.data(), Scalar(1));
  }
  return {c.up(res, p.order()), c.up(a, p.order()), c.up(b, p.order())};
}

SubresultantChain subresultant_chain(const Polynomial& p, const Polynomial& q, std::size_t var) {
  require_positive_degrees(p, q, var);
  Compaction c = Compaction::of({&p, &q}, p.vars());
  MonomialOrder ord = MonomialOrder::grevlex();
  const std::size_t x = c.to_compact(var);
  Polynomial a = c.down(p, ord);
  Polynomial b = c.down(q, ord);
  int sign = 1;
  if (a.degree(x) < b.degree(x)) {
    if (a.degree(x) % 2 == 1 && b.degree(x) % 2 == 1) sign = -sign;
    std::swap(a, b);
  }
  SubresultantChain out;
  out.trace.push_back({a.degree(x), a.size()});
  out.trace.push_back({b.degree(x), b.size()});
  auto lc = [&](const Polynomial& f) { return coefficients_in(f, x).back(); };
  Polynomial one = Polynomial::constant(c.table(), Scalar(1), ord);
  Polynomial g = one;
  Polynomial h = one;
  for (;;) {
    unsigned da = a.degree(x);
    unsigned db = b.degree(x);
    unsigned delta = da - db;
    if (da % 2 == 1 && db % 2 == 1) sign = -sign;
    Polynomial r = prem(a, b, x);
    if (r.is_zero()) {
      out.last = Polynomial(p.vars(), p.order());
      out.trace.push_back({0, 0});
      return out;
    }
    a = std::move(b);
    b = exact_div(r, g * pow(h, delta));
    g = lc(a);
    h = delta == 0 ? h : exact_div(pow(g, delta), pow(h, delta - 1));
    out.trace.push_back({b.degree(x), b.size()});
    if (b.degree(x) == 0) break;
  }
  unsigned da = a.degree(x);
  Polynomial res = da == 0 ? b : exact_div(pow(b, da), pow(h, da - 1));
  out.last = c.up(sign < 0 ? -res : res, p.order());
  return out;
}

}  // namespace curvelim
