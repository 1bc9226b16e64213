#pragma once

#include <random>
#include <vector>

#include "curvelim/exactpoly/polynomial.hpp"

namespace curvelim::testing {

struct RandomPolySpec {
  std::size_t max_terms = 5;
  unsigned max_degree = 3;   // total degree bound
  long coeff_bound = 9;      // coefficients drawn from [-bound, bound] \ {0}
  bool rational = false;     // occasionally use denominators 2..5
};

inline Polynomial random_poly(std::mt19937_64& rng, const VarTablePtr& vars,
                              const RandomPolySpec& spec = {},
                              const MonomialOrder& order = MonomialOrder::grevlex()) {
  std::uniform_int_distribution<std::size_t> nterms(0, spec.max_terms);
  std::uniform_int_distribution<long> coeff(-spec.coeff_bound, spec.coeff_bound);
  std::uniform_int_distribution<long> den(1, 5);
  std::uniform_int_distribution<std::size_t> var(0, vars->size() - 1);
  std::uniform_int_distribution<unsigned> deg(0, spec.max_degree);
  std::vector<Exponent> exps;
  std::vector<Scalar> coeffs;
  std::size_t k = nterms(rng);
  for (std::size_t t = 0; t < k; ++t) {
    std::vector<Exponent> e(vars->size(), 0);
    unsigned d = deg(rng);
    for (unsigned s = 0; s < d; ++s) ++e[var(rng)];
    long c = 0;
    while (c == 0) c = coeff(rng);
    Scalar q(c, spec.rational ? den(rng) : 1);
    q.canonicalize();
    exps.insert(exps.end(), e.begin(), e.end());
    coeffs.push_back(q);
  }
  return Polynomial::from_terms(vars, order, std::move(exps), std::move(coeffs));
}

inline Polynomial random_univariate_dense(std::mt19937_64& rng, const VarTablePtr& vars,
                                          std::size_t var, unsigned degree,
                                          const RandomPolySpec& coeff_spec) {
  Polynomial out(vars);
  std::vector<Exponent> shift(vars->size(), 0);
  for (unsigned k = 0; k <= degree; ++k) {
    Polynomial c = substitute(random_poly(rng, vars, coeff_spec), var, Polynomial(vars));
    if (k == degree && c.is_zero()) c = Polynomial::constant(vars, Scalar(1));
    shift[var] = static_cast<Exponent>(k);
    out += c.mul_term(shift.data(), Scalar(1));
  }
  return out;
}

}  // namespace curvelim::testing
