#pragma once

#include <optional>
#include <string>
#include <vector>

#include "curvelim/cert/certificate.hpp"
#include "curvelim/ideal/groebner.hpp"

namespace curvelim {

struct MembershipOptions {
  unsigned max_power = 8;
  GroebnerLimits limits;
  MonomialOrder order = MonomialOrder::grevlex();
  // Eliminate variables that occur linearly with constant coefficient before Buchberger.
  bool presolve = true;
};

// Certificate for multiplier^k * target in <gens>, k minimal (multiplier = product of the
// saturation multipliers), or nullopt when no k <= max_power works.
std::optional<Certificate> membership(const Polynomial& target, const GeneratorSet& gens,
                                      const std::vector<SaturationRecord>& saturations = {},
                                      const MembershipOptions& options = {},
                                      const std::string& target_id = "target");

struct DerivedGenerators {
  GeneratorSet generators;
  std::vector<Certificate> certificates;  // one per generator, against the input set
};

// Generators of <gens> intersected with the subring omitting front_vars.
DerivedGenerators eliminate(const GeneratorSet& gens, const std::vector<std::string>& front_vars,
                            const GroebnerLimits& limits = {});

// Generators of <gens> : multiplier^infinity via t*multiplier - 1.
DerivedGenerators saturate(const GeneratorSet& gens, const Polynomial& multiplier,
                           const GroebnerLimits& limits = {});

}  // namespace curvelim
