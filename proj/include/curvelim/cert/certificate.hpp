#pragma once

#include <optional>
#include <string>
#include <vector>

#include "curvelim/cert/relation.hpp"

namespace curvelim {

struct CertificateTerm {
  std::string generator_id;
  Polynomial cofactor;
};

// multiplier^power * target == sum(cofactor_i * generator_i).
struct Certificate {
  std::string target_id;
  Polynomial target;
  std::vector<CertificateTerm> terms;
  std::optional<Polynomial> multiplier;
  unsigned power = 0;

  Polynomial scaled_target() const;
  // multiplier^power * target - sum(cofactor_i * generator_i); zero iff the identity holds.
  Polynomial residual(const GeneratorSet& gens) const;
  bool holds(const GeneratorSet& gens) const { return residual(gens).is_zero(); }
  std::vector<std::string> used_generators() const;

  // Canonical printed identity; the digest hashes this text.
  std::string identity_text() const;
  std::string digest() const;
};

std::string sha256_hex(const std::string& data);

}  // namespace curvelim
