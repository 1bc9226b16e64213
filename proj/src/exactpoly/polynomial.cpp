#include "curvelim/exactpoly/polynomial.hpp"

#include <algorithm>
#include <numeric>

#include "curvelim/exactpoly/errors.hpp"
#include "curvelim/exactpoly/kernels.hpp"

namespace curvelim {

Polynomial::Polynomial(VarTablePtr vars, MonomialOrder order)
    : vars_(std::move(vars)), nvars_(vars_ ? vars_->size() : 0), order_(std::move(order)) {
  if (!vars_) throw StructuralError("polynomial requires a variable table");
}

Polynomial Polynomial::constant(VarTablePtr vars, const Scalar& c, MonomialOrder order) {
  Polynomial p(std::move(vars), std::move(order));
  if (c != 0) {
    p.exponents_.assign(p.nvars_, 0);
    p.coeffs_.push_back(c);
  }
  return p;
}

Polynomial Polynomial::variable(VarTablePtr vars, std::size_t index, MonomialOrder order) {
  Polynomial p(std::move(vars), std::move(order));
  if (index >= p.nvars_) throw StructuralError("variable index out of range");
  p.exponents_.assign(p.nvars_, 0);
  p.exponents_[index] = 1;
  p.coeffs_.emplace_back(1);
  return p;
}

Polynomial Polynomial::variable(VarTablePtr vars, std::string_view name, MonomialOrder order) {
  std::size_t i = vars->require(name);
  return variable(std::move(vars), i, std::move(order));
}

Polynomial Polynomial::monomial(VarTablePtr vars, const std::vector<Exponent>& exps,
                                const Scalar& c, MonomialOrder order) {
  Polynomial p(std::move(vars), std::move(order));
  if (exps.size() != p.nvars_) throw StructuralError("exponent vector length mismatch");
  if (c != 0) {
    p.exponents_ = exps;
    p.coeffs_.push_back(c);
  }
  return p;
}

Polynomial Polynomial::adopt(VarTablePtr vars, MonomialOrder order, std::vector<Exponent> exps,
                             std::vector<Scalar> coeffs) {
  Polynomial p(std::move(vars), std::move(order));
  p.exponents_ = std::move(exps);
  p.coeffs_ = std::move(coeffs);
  return p;
}

Polynomial Polynomial::from_terms(VarTablePtr vars, MonomialOrder order, std::vector<Exponent> exps,
                                  std::vector<Scalar> coeffs) {
  Polynomial p(std::move(vars), std::move(order));
  const std::size_t n = p.nvars_;
  if (exps.size() != coeffs.size() * n) throw StructuralError("term data length mismatch");
  std::vector<std::size_t> idx(coeffs.size());
  std::iota(idx.begin(), idx.end(), 0);
  const Exponent* base = exps.data();
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return p.order_.compare(base + a * n, base + b * n, n) > 0;
  });
  for (std::size_t k = 0; k < idx.size();) {
    std::size_t j = k;
    Scalar sum = coeffs[idx[k]];
    while (++j < idx.size() && p.order_.compare(base + idx[j] * n, base + idx[k] * n, n) == 0) {
      sum += coeffs[idx[j]];
    }
    if (sum != 0) {
      p.exponents_.insert(p.exponents_.end(), base + idx[k] * n, base + idx[k] * n + n);
      p.coeffs_.push_back(std::move(sum));
    }
    k = j;
  }
  return p;
}

bool Polynomial::is_constant() const {
  if (coeffs_.empty()) return true;
  if (coeffs_.size() > 1) return false;
  return std::all_of(exponents_.begin(), exponents_.end(), [](Exponent e) { return e == 0; });
}

bool Polynomial::is_one() const { return is_constant() && !is_zero() && coeffs_[0] == 1; }

Scalar Polynomial::constant_term() const {
  if (coeffs_.empty()) return Scalar(0);
  std::size_t last = coeffs_.size() - 1;
  const Exponent* e = exps(last);
  for (std::size_t i = 0; i < nvars_; ++i) {
    if (e[i] != 0) return Scalar(0);
  }
  return coeffs_[last];
}

unsigned Polynomial::total_degree() const {
  unsigned best = 0;
  for (std::size_t t = 0; t < size(); ++t) {
    const Exponent* e = exps(t);
    unsigned d = 0;
    for (std::size_t i = 0; i < nvars_; ++i) d += e[i];
    best = std::max(best, d);
  }
  return best;
}

unsigned Polynomial::degree(std::size_t var) const {
  if (var >= nvars_) throw StructuralError("variable index out of range");
  unsigned best = 0;
  for (std::size_t t = 0; t < size(); ++t) best = std::max<unsigned>(best, exps(t)[var]);
  return best;
}

unsigned Polynomial::degree(std::string_view var) const { return degree(vars_->require(var)); }

std::vector<bool> Polynomial::support() const {
  std::vector<bool> s(nvars_, false);
  for (std::size_t t = 0; t < size(); ++t) {
    const Exponent* e = exps(t);
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (e[i] != 0) s[i] = true;
    }
  }
  return s;
}

Polynomial Polynomial::with_order(const MonomialOrder& order) const {
  if (order == order_) return *this;
  return from_terms(vars_, order, exponents_, coeffs_);
}

Polynomial Polynomial::in_table(const VarTablePtr& target) const {
  return in_table(target, order_.kind() == MonomialOrder::Kind::kBlock ? MonomialOrder::grevlex()
                                                                       : order_);
}

Polynomial Polynomial::in_table(const VarTablePtr& target, const MonomialOrder& order) const {
  if (target.get() == vars_.get() || target->same_as(*vars_)) {
    Polynomial p = with_order(order);
    p.vars_ = target;
    return p;
  }
  std::vector<bool> used = support();
  std::vector<std::size_t> map(nvars_, 0);
  for (std::size_t i = 0; i < nvars_; ++i) {
    auto j = target->index(vars_->name(i));
    if (j) {
      map[i] = *j;
    } else if (used[i]) {
      throw StructuralError("variable '" + vars_->name(i) + "' missing from target table");
    }
  }
  const std::size_t m = target->size();
  std::vector<Exponent> exps(size() * m, 0);
  for (std::size_t t = 0; t < size(); ++t) {
    const Exponent* e = this->exps(t);
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (e[i] != 0) exps[t * m + map[i]] = e[i];
    }
  }
  return from_terms(target, order, std::move(exps), coeffs_);
}

void Polynomial::check_compatible(const Polynomial& o) const {
  if (!vars_ || !o.vars_) throw StructuralError("operation on a default-constructed polynomial");
  if (vars_.get() != o.vars_.get() && !vars_->same_as(*o.vars_)) {
    throw StructuralError("VarTable mismatch between operands");
  }
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  check_compatible(o);
  *this = kernels::add(*this, o.order_ == order_ ? o : o.with_order(order_), false);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  check_compatible(o);
  *this = kernels::add(*this, o.order_ == order_ ? o : o.with_order(order_), true);
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) {
  *this = *this * o;
  return *this;
}

Polynomial Polynomial::scaled(const Scalar& c) const {
  if (c == 0) return Polynomial(vars_, order_);
  Polynomial r = *this;
  for (auto& x : r.coeffs_) x *= c;
  return r;
}

Polynomial Polynomial::divided(const Scalar& c) const {
  if (c == 0) throw DomainError("division by zero scalar");
  Polynomial r = *this;
  for (auto& x : r.coeffs_) x /= c;
  return r;
}

Polynomial Polynomial::mul_term(const Exponent* e, const Scalar& c) const {
  if (c == 0 || is_zero()) return Polynomial(vars_, order_);
  Polynomial r = *this;
  for (std::size_t t = 0; t < size(); ++t) {
    Exponent* row = r.exponents_.data() + t * nvars_;
    for (std::size_t i = 0; i < nvars_; ++i) {
      unsigned s = unsigned(row[i]) + e[i];
      if (s > 0xFFFFu) throw DomainError("exponent overflow");
      row[i] = static_cast<Exponent>(s);
    }
    r.coeffs_[t] *= c;
  }
  return r;
}

bool Polynomial::operator==(const Polynomial& o) const {
  check_compatible(o);
  if (size() != o.size()) return false;
  if (o.order_ != order_) return *this == o.with_order(order_);
  return exponents_ == o.exponents_ && coeffs_ == o.coeffs_;
}

Polynomial operator+(Polynomial a, const Polynomial& b) {
  a += b;
  return a;
}

Polynomial operator-(Polynomial a, const Polynomial& b) {
  a -= b;
  return a;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.check_compatible(b);
  const Polynomial& bb = b.order() == a.order() ? b : b.with_order(a.order());
  if (a.size() * bb.size() >= kernels::kParallelMulThreshold) return kernels::mul_parallel(a, bb);
  return kernels::mul_serial(a, bb);
}

Polynomial operator*(const Scalar& c, const Polynomial& p) { return p.scaled(c); }

Polynomial pow(const Polynomial& p, unsigned e) {
  Polynomial result = Polynomial::constant(p.vars(), Scalar(1), p.order());
  Polynomial base = p;
  while (e > 0) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e > 0) base = base * base;
  }
  return result;
}

Polynomial add_all(std::vector<Polynomial> terms, const Polynomial& zero) {
  if (terms.empty()) return Polynomial(zero.vars(), zero.order());
  while (terms.size() > 1) {
    std::vector<Polynomial> next;
    next.reserve((terms.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < terms.size(); i += 2) next.push_back(terms[i] + terms[i + 1]);
    if (terms.size() % 2 == 1) next.push_back(std::move(terms.back()));
    terms = std::move(next);
  }
  return std::move(terms.front());
}

Polynomial substitute(const Polynomial& p, std::string_view var, const Polynomial& q) {
  return substitute(p, p.vars()->require(var), q);
}

Polynomial substitute(const Polynomial& p, std::size_t var, const Polynomial& q) {
  std::map<std::size_t, Polynomial> m;
  m.emplace(var, q);
  return substitute_all(p, m);
}

Polynomial substitute_all(const Polynomial& p, const std::map<std::size_t, Polynomial>& images) {
  for (const auto& [v, img] : images) {
    if (v >= p.nvars()) throw StructuralError("substitution variable out of range");
    p.check_compatible(img);
  }
  const std::size_t n = p.nvars();
  // Group terms by the exponents of substituted variables, keep the rest as a coefficient.
  std::map<std::vector<Exponent>, std::vector<std::size_t>> groups;
  for (std::size_t t = 0; t < p.size(); ++t) {
    std::vector<Exponent> key;
    key.reserve(images.size());
    for (const auto& entry : images) key.push_back(p.exps(t)[entry.first]);
    groups[key].push_back(t);
  }
  std::map<std::pair<std::size_t, unsigned>, Polynomial> power_cache;
  auto power_of = [&](std::size_t v, unsigned e) -> const Polynomial& {
    auto key = std::make_pair(v, e);
    auto it = power_cache.find(key);
    if (it != power_cache.end()) return it->second;
    return power_cache.emplace(key, pow(images.at(v).with_order(p.order()), e)).first->second;
  };
  std::vector<Polynomial> parts;
  for (const auto& [key, ts] : groups) {
    std::vector<Exponent> exps;
    std::vector<Scalar> coeffs;
    exps.reserve(ts.size() * n);
    for (std::size_t t : ts) {
      std::size_t start = exps.size();
      exps.insert(exps.end(), p.exps(t), p.exps(t) + n);
      for (const auto& entry : images) exps[start + entry.first] = 0;
      coeffs.push_back(p.coeff(t));
    }
    Polynomial part = Polynomial::from_terms(p.vars(), p.order(), std::move(exps), std::move(coeffs));
    std::size_t k = 0;
    for (const auto& entry : images) {
      if (key[k] != 0) part = part * power_of(entry.first, key[k]);
      ++k;
    }
    parts.push_back(std::move(part));
  }
  return add_all(std::move(parts), p);
}

Polynomial rename_vars(const Polynomial& p, const VarTablePtr& target,
                       const std::vector<std::size_t>& map) {
  if (map.size() != p.nvars()) throw StructuralError("rename map length mismatch");
  const std::size_t m = target->size();
  std::vector<Exponent> exps(p.size() * m, 0);
  for (std::size_t t = 0; t < p.size(); ++t) {
    for (std::size_t i = 0; i < p.nvars(); ++i) {
      Exponent e = p.exps(t)[i];
      if (e == 0) continue;
      if (map[i] >= m) throw StructuralError("rename target out of range");
      unsigned s = unsigned(exps[t * m + map[i]]) + e;
      if (s > 0xFFFFu) throw DomainError("exponent overflow");
      exps[t * m + map[i]] = static_cast<Exponent>(s);
    }
  }
  return Polynomial::from_terms(target, p.order().remapped(map, m), std::move(exps), p.coeff_data());
}

namespace {

std::vector<const Scalar*> resolve_point(const Polynomial& p,
                                         const std::map<std::string, Scalar>& assignment) {
  std::vector<bool> used = p.support();
  std::vector<const Scalar*> point(p.nvars(), nullptr);
  for (std::size_t i = 0; i < p.nvars(); ++i) {
    auto it = assignment.find(p.vars()->name(i));
    if (it != assignment.end()) {
      point[i] = &it->second;
    } else if (used[i]) {
      throw StructuralError("assignment misses variable '" + p.vars()->name(i) + "'");
    }
  }
  return point;
}

}  // namespace

Scalar evaluate(const Polynomial& p, const std::map<std::string, Scalar>& assignment) {
  auto point = resolve_point(p, assignment);
  Scalar total = 0;
  for (std::size_t t = 0; t < p.size(); ++t) {
    Scalar term = p.coeff(t);
    for (std::size_t i = 0; i < p.nvars(); ++i) {
      Exponent e = p.exps(t)[i];
      if (e == 0) continue;
      mpq_class f;
      mpz_pow_ui(f.get_num_mpz_t(), point[i]->get_num_mpz_t(), e);
      mpz_pow_ui(f.get_den_mpz_t(), point[i]->get_den_mpz_t(), e);
      f.canonicalize();
      term *= f;
    }
    total += term;
  }
  return total;
}

Integer evaluate_mod(const Polynomial& p, const std::map<std::string, Scalar>& assignment,
                     const Integer& modulus) {
  if (modulus <= 1) throw DomainError("modulus must exceed 1");
  auto point = resolve_point(p, assignment);
  auto residue = [&](const Scalar& q) {
    Integer den = q.get_den() % modulus;
    Integer inv;
    if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), modulus.get_mpz_t()) == 0) {
      throw DomainError("denominator not invertible modulo the modulus");
    }
    Integer num = q.get_num() % modulus;
    if (num < 0) num += modulus;
    return Integer((num * inv) % modulus);
  };
  std::vector<Integer> vals(p.nvars());
  for (std::size_t i = 0; i < p.nvars(); ++i) {
    if (point[i]) vals[i] = residue(*point[i]);
  }
  Integer total = 0;
  Integer term, f;
  for (std::size_t t = 0; t < p.size(); ++t) {
    term = residue(p.coeff(t));
    for (std::size_t i = 0; i < p.nvars(); ++i) {
      Exponent e = p.exps(t)[i];
      if (e == 0) continue;
      mpz_powm_ui(f.get_mpz_t(), vals[i].get_mpz_t(), e, modulus.get_mpz_t());
      term = (term * f) % modulus;
    }
    total = (total + term) % modulus;
  }
  return total;
}

Polynomial partial(const Polynomial& p, std::string_view var) {
  return partial(p, p.vars()->require(var));
}

Polynomial partial(const Polynomial& p, std::size_t var) {
  if (var >= p.nvars()) throw StructuralError("variable index out of range");
  const std::size_t n = p.nvars();
  std::vector<Exponent> exps;
  std::vector<Scalar> coeffs;
  for (std::size_t t = 0; t < p.size(); ++t) {
    Exponent e = p.exps(t)[var];
    if (e == 0) continue;
    std::size_t start = exps.size();
    exps.insert(exps.end(), p.exps(t), p.exps(t) + n);
    exps[start + var] = static_cast<Exponent>(e - 1);
    coeffs.push_back(p.coeff(t) * e);
  }
  // Lowering one exponent can reorder terms under degree orders.
  return Polynomial::from_terms(p.vars(), p.order(), std::move(exps), std::move(coeffs));
}

std::vector<Polynomial> coefficients_in(const Polynomial& p, std::size_t var) {
  const std::size_t n = p.nvars();
  unsigned d = p.is_zero() ? 0 : p.degree(var);
  std::vector<std::vector<Exponent>> exps(d + 1);
  std::vector<std::vector<Scalar>> coeffs(d + 1);
  for (std::size_t t = 0; t < p.size(); ++t) {
    Exponent e = p.exps(t)[var];
    auto& row = exps[e];
    std::size_t start = row.size();
    row.insert(row.end(), p.exps(t), p.exps(t) + n);
    row[start + var] = 0;
    coeffs[e].push_back(p.coeff(t));
  }
  std::vector<Polynomial> out;
  out.reserve(d + 1);
  for (unsigned k = 0; k <= d; ++k) {
    out.push_back(
        Polynomial::from_terms(p.vars(), p.order(), std::move(exps[k]), std::move(coeffs[k])));
  }
  return out;
}

Polynomial from_coefficients(const std::vector<Polynomial>& coeffs, std::size_t var,
                             const Polynomial& zero) {
  std::vector<Polynomial> parts;
  std::vector<Exponent> shift(zero.nvars(), 0);
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k].is_zero()) continue;
    shift[var] = static_cast<Exponent>(k);
    parts.push_back(coeffs[k].with_order(zero.order()).mul_term(shift.data(), Scalar(1)));
  }
  return add_all(std::move(parts), zero);
}

std::string to_string(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (std::size_t t = 0; t < p.size(); ++t) {
    Scalar c = p.coeff(t);
    bool negative = c < 0;
    if (negative) c = -c;
    if (t == 0) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    std::string mono;
    for (std::size_t i = 0; i < p.nvars(); ++i) {
      Exponent e = p.exps(t)[i];
      if (e == 0) continue;
      if (!mono.empty()) mono += '*';
      mono += p.vars()->name(i);
      if (e > 1) mono += '^' + std::to_string(e);
    }
    if (mono.empty()) {
      out += c.get_str();
    } else if (c == 1) {
      out += mono;
    } else {
      out += c.get_str() + '*' + mono;
    }
  }
  return out;
}

}  // namespace curvelim
