#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "curvelim/cert/relation.hpp"

namespace curvelim {

struct GroebnerLimits {
  std::size_t max_basis = 4000;
  std::size_t max_pairs = 200000;
  std::string stage = "groebner";
};

struct GroebnerBasis {
  VarTablePtr vars;
  MonomialOrder order;
  // Reduced basis: primitive, positive leading coefficients, sorted by leading monomial (descending).
  std::vector<Polynomial> elements;
  std::vector<Polynomial> inputs;
  std::vector<std::string> input_ids;
  // When tracked: elements[k] == sum_j provenance[k][j] * inputs[j].
  std::vector<std::vector<Polynomial>> provenance;
  std::size_t pairs_reduced = 0;

  bool tracked() const { return !provenance.empty() || elements.empty(); }
  bool is_unit() const { return elements.size() == 1 && elements[0].is_constant(); }
};

// Buchberger with normal selection and the Gebauer-Moeller criteria.
GroebnerBasis groebner(const std::vector<Polynomial>& gens, const MonomialOrder& order,
                       const GroebnerLimits& limits = {}, bool track = false);
GroebnerBasis groebner(const GeneratorSet& gens, const MonomialOrder& order,
                       const GroebnerLimits& limits = {}, bool track = false);

struct NormalForm {
  Polynomial remainder;
  std::vector<Polynomial> cofactors;  // one per basis element
};

// p == sum(cofactors[i] * elements[i]) + remainder, no remainder term divisible by a leading term.
NormalForm normal_form(const Polynomial& p, const GroebnerBasis& basis);
NormalForm normal_form(const Polynomial& p, const std::vector<Polynomial>& divisors);

}  // namespace curvelim
