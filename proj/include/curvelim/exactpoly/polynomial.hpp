#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "curvelim/exactpoly/monomial_order.hpp"
#include "curvelim/exactpoly/scalar.hpp"
#include "curvelim/exactpoly/var_table.hpp"

namespace curvelim {

// Sparse multivariate polynomial over Q.
//
// Terms are stored flat: exponents_ holds size() rows of nvars() exponents,
// sorted strictly descending under order_. Zero coefficients are never stored.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(VarTablePtr vars, MonomialOrder order = MonomialOrder::grevlex());

  static Polynomial constant(VarTablePtr vars, const Scalar& c,
                             MonomialOrder order = MonomialOrder::grevlex());
  static Polynomial variable(VarTablePtr vars, std::size_t index,
                             MonomialOrder order = MonomialOrder::grevlex());
  static Polynomial variable(VarTablePtr vars, std::string_view name,
                             MonomialOrder order = MonomialOrder::grevlex());
  static Polynomial monomial(VarTablePtr vars, const std::vector<Exponent>& exps, const Scalar& c,
                             MonomialOrder order = MonomialOrder::grevlex());
  // Terms in any order, duplicates allowed; result is canonical.
  static Polynomial from_terms(VarTablePtr vars, MonomialOrder order, std::vector<Exponent> exps,
                               std::vector<Scalar> coeffs);

  const VarTablePtr& vars() const { return vars_; }
  std::size_t nvars() const { return nvars_; }
  const MonomialOrder& order() const { return order_; }

  std::size_t size() const { return coeffs_.size(); }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const;
  bool is_one() const;

  const Exponent* exps(std::size_t i) const { return exponents_.data() + i * nvars_; }
  const Scalar& coeff(std::size_t i) const { return coeffs_[i]; }
  const Exponent* leading_exps() const { return exps(0); }
  const Scalar& leading_coeff() const { return coeffs_.front(); }
  Scalar constant_term() const;

  unsigned total_degree() const;
  unsigned degree(std::size_t var) const;
  unsigned degree(std::string_view var) const;
  std::vector<bool> support() const;
  bool uses(std::size_t var) const { return degree(var) > 0; }

  Polynomial with_order(const MonomialOrder& order) const;
  // Re-express over another table, matching variables by name.
  Polynomial in_table(const VarTablePtr& target) const;
  Polynomial in_table(const VarTablePtr& target, const MonomialOrder& order) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  Polynomial scaled(const Scalar& c) const;
  Polynomial mul_term(const Exponent* exps, const Scalar& c) const;
  // Divides every coefficient by c; c must be nonzero.
  Polynomial divided(const Scalar& c) const;

  bool operator==(const Polynomial& o) const;
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  const std::vector<Exponent>& exponent_data() const { return exponents_; }
  const std::vector<Scalar>& coeff_data() const { return coeffs_; }

  // Kernel use only: adopt already-canonical storage.
  static Polynomial adopt(VarTablePtr vars, MonomialOrder order, std::vector<Exponent> exps,
                          std::vector<Scalar> coeffs);

  void check_compatible(const Polynomial& o) const;

 private:
  VarTablePtr vars_;
  std::size_t nvars_ = 0;
  MonomialOrder order_;
  std::vector<Exponent> exponents_;
  std::vector<Scalar> coeffs_;
};

Polynomial operator+(Polynomial a, const Polynomial& b);
Polynomial operator-(Polynomial a, const Polynomial& b);
Polynomial operator*(const Polynomial& a, const Polynomial& b);
Polynomial operator*(const Scalar& c, const Polynomial& p);
Polynomial pow(const Polynomial& p, unsigned e);

// Sum of a*b over pairs; avoids re-sorting partial sums.
Polynomial add_all(std::vector<Polynomial> terms, const Polynomial& zero);

Polynomial substitute(const Polynomial& p, std::string_view var, const Polynomial& q);
Polynomial substitute(const Polynomial& p, std::size_t var, const Polynomial& q);
// Simultaneous substitution var -> image for every entry of `images`.
Polynomial substitute_all(const Polynomial& p, const std::map<std::size_t, Polynomial>& images);
// Renames variables: old index i becomes index map[i] in `target`.
Polynomial rename_vars(const Polynomial& p, const VarTablePtr& target,
                       const std::vector<std::size_t>& map);

Scalar evaluate(const Polynomial& p, const std::map<std::string, Scalar>& assignment);
// Residue in [0, modulus); requires modulus > 1 and no denominator divisible by it.
Integer evaluate_mod(const Polynomial& p, const std::map<std::string, Scalar>& assignment,
                     const Integer& modulus);

Polynomial partial(const Polynomial& p, std::string_view var);
Polynomial partial(const Polynomial& p, std::size_t var);

// Coefficients of p viewed as univariate in var; result[k] multiplies var^k.
std::vector<Polynomial> coefficients_in(const Polynomial& p, std::size_t var);
Polynomial from_coefficients(const std::vector<Polynomial>& coeffs, std::size_t var,
                             const Polynomial& zero);

std::string to_string(const Polynomial& p);

}  // namespace curvelim
