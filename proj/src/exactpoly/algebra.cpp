#include "curvelim/exactpoly/algebra.hpp"

#include "curvelim/exactpoly/errors.hpp"
#include "curvelim/exactpoly/kernels.hpp"

namespace curvelim {

ContentSplit gcd_content(const Polynomial& p) {
  if (p.is_zero()) return {Scalar(0), p};
  Integer num_gcd = 0;
  Integer den_lcm = 1;
  for (const Scalar& c : p.coeff_data()) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
  }
  Scalar content(num_gcd, den_lcm);
  content.canonicalize();
  if (p.leading_coeff() < 0) content = -content;
  return {content, p.divided(content)};
}

Polynomial primitive_part(const Polynomial& p) { return gcd_content(p).primitive; }

namespace {

std::optional<std::size_t> main_variable(const Polynomial& p, const Polynomial& q) {
  std::vector<bool> sp = p.support();
  std::vector<bool> sq = q.support();
  for (std::size_t i = p.nvars(); i-- > 0;) {
    if (sp[i] || sq[i]) return i;
  }
  return std::nullopt;
}

Polynomial gcd_rec(const Polynomial& p, const Polynomial& q);

Polynomial content_in(const Polynomial& p, std::size_t var) {
  Polynomial acc(p.vars(), p.order());
  for (const Polynomial& c : coefficients_in(p, var)) {
    if (c.is_zero()) continue;
    acc = gcd_rec(acc, c);
    if (acc.is_one()) break;
  }
  return acc;
}

Polynomial exact_quotient(const Polynomial& a, const Polynomial& b) {
  auto q = divide_exact(a, b);
  if (!q) throw DomainError("internal: expected exact division in gcd");
  return *q;
}

Polynomial gcd_rec(const Polynomial& p, const Polynomial& q) {
  if (p.is_zero()) return primitive_part(q);
  if (q.is_zero()) return primitive_part(p);
  Polynomial one = Polynomial::constant(p.vars(), Scalar(1), p.order());
  if (p.is_constant() || q.is_constant()) return one;
  std::size_t x = *main_variable(p, q);
  if (!p.uses(x)) return gcd_rec(p, content_in(q, x));
  if (!q.uses(x)) return gcd_rec(content_in(p, x), q);
  Polynomial cp = content_in(p, x);
  Polynomial cq = content_in(q, x);
  Polynomial c = gcd_rec(cp, cq);
  Polynomial a = exact_quotient(p, cp);
  Polynomial b = exact_quotient(q, cq);
  if (a.degree(x) < b.degree(x)) std::swap(a, b);
  Polynomial g = one;
  for (;;) {
    Polynomial r = prem(a, b, x);
    if (r.is_zero()) {
      g = b;
      break;
    }
    if (r.degree(x) == 0) {
      g = one;
      break;
    }
    a = std::move(b);
    b = exact_quotient(r, content_in(r, x));
  }
  if (g.uses(x)) g = exact_quotient(g, content_in(g, x));
  return primitive_part(c * g);
}

}  // namespace

GcdResult gcd_content(const Polynomial& p, const Polynomial& q) {
  p.check_compatible(q);
  GcdResult out{gcd_rec(p, q.with_order(p.order())), {}};
  out.contents.push_back(gcd_content(p).content);
  out.contents.push_back(gcd_content(q).content);
  return out;
}

Polynomial gcd(const Polynomial& p, const Polynomial& q) { return gcd_content(p, q).gcd; }

PseudoDivision pseudo_divide(const Polynomial& a, const Polynomial& b, std::size_t var) {
  a.check_compatible(b);
  if (b.is_zero()) throw DomainError("pseudo-division by zero");
  const Polynomial bb = b.with_order(a.order());
  const unsigned db = bb.degree(var);
  const std::vector<Polynomial> bc = coefficients_in(bb, var);
  const Polynomial& lb = bc[db];
  PseudoDivision out{Polynomial(a.vars(), a.order()), a, 0};
  if (a.is_zero() || a.degree(var) < db) return out;
  const unsigned target_power = a.degree(var) - db + 1;
  std::vector<Exponent> shift(a.nvars(), 0);
  unsigned steps = 0;
  while (!out.remainder.is_zero() && out.remainder.degree(var) >= db) {
    unsigned dr = out.remainder.degree(var);
    Polynomial lr = coefficients_in(out.remainder, var)[dr];
    shift[var] = static_cast<Exponent>(dr - db);
    Polynomial t = lr.mul_term(shift.data(), Scalar(1));
    out.quotient = lb * out.quotient + t;
    out.remainder = lb * out.remainder - t * bb;
    ++steps;
  }
  if (steps < target_power) {
    Polynomial f = pow(lb, target_power - steps);
    out.quotient = out.quotient * f;
    out.remainder = out.remainder * f;
  }
  out.power = target_power;
  return out;
}

Polynomial prem(const Polynomial& a, const Polynomial& b, std::size_t var) {
  return pseudo_divide(a, b, var).remainder;
}

std::optional<Polynomial> divide_exact(const Polynomial& a, const Polynomial& b) {
  a.check_compatible(b);
  if (b.is_zero()) throw DomainError("division by zero polynomial");
  const Polynomial bb = b.with_order(a.order());
  const std::size_t n = a.nvars();
  std::vector<Exponent> qe;
  std::vector<Scalar> qc;
  Polynomial r = a;
  std::vector<Exponent> t(n);
  const Exponent* lb = bb.leading_exps();
  while (!r.is_zero()) {
    const Exponent* lr = r.leading_exps();
    for (std::size_t i = 0; i < n; ++i) {
      if (lr[i] < lb[i]) return std::nullopt;
      t[i] = static_cast<Exponent>(lr[i] - lb[i]);
    }
    Scalar c = r.leading_coeff() / bb.leading_coeff();
    qe.insert(qe.end(), t.begin(), t.end());
    qc.push_back(c);
    r = kernels::add(r, bb.mul_term(t.data(), c), true);
  }
  return Polynomial::adopt(a.vars(), a.order(), std::move(qe), std::move(qc));
}

std::pair<Polynomial, unsigned> divide_out(const Polynomial& p, const Polynomial& factor) {
  if (factor.is_constant()) throw DomainError("divide_out needs a nonconstant factor");
  if (p.is_zero()) throw DomainError("divide_out of the zero polynomial");
  Polynomial cur = p;
  unsigned k = 0;
  while (auto q = divide_exact(cur, factor)) {
    cur = std::move(*q);
    ++k;
  }
  return {cur, k};
}

}  // namespace curvelim
