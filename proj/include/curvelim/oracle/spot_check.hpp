#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "curvelim/cert/certificate.hpp"

namespace curvelim::oracle {

// 2^64 - 59.
inline constexpr std::uint64_t kDefaultPrime = 18446744073709551557ull;
// 2^64 - 83, 2^64 - 95, 2^64 - 179; used only to confirm witnesses.
inline constexpr std::uint64_t kConfirmPrimes[3] = {18446744073709551533ull,
                                                    18446744073709551521ull,
                                                    18446744073709551437ull};

struct SpotCheckConfig {
  std::uint64_t seed = 0;
  unsigned trials = 100;
  std::uint64_t prime = kDefaultPrime;
  bool parallel = true;

  // Throws StructuralError unless trials >= 1 and prime is prime.
  void validate() const;
};

struct Witness {
  unsigned trial = 0;
  std::map<std::string, std::uint64_t> point;
  std::uint64_t residue = 0;  // value of the checked difference mod prime
  bool confirmed = false;     // nonzero re-established exactly or modulo another prime
  std::string confirmation;   // "exact" or "prime <q>"
};

struct SpotCheckResult {
  unsigned trials = 0;
  std::vector<Witness> failures;
  unsigned degree = 0;
  double false_accept_bound = 0;  // degree / prime, per trial
  double log2_bound = 0;

  bool pass() const { return failures.empty(); }
};

// Uniform point coordinate for `var`, from counter-mode SHA-256 over (seed, step, trial, var).
std::uint64_t sample(std::uint64_t seed, const std::string& step, unsigned trial,
                     const std::string& var, std::uint64_t prime);

SpotCheckResult check_identity(const Polynomial& lhs, const Polynomial& rhs,
                               const SpotCheckConfig& cfg, const std::string& step = "identity");

// multiplier^power * target - sum cofactor_i * gen_i == 0, evaluated pointwise.
SpotCheckResult check_certificate(const Certificate& cert, const GeneratorSet& gens,
                                  const Polynomial& target, const SpotCheckConfig& cfg);
SpotCheckResult check_certificate(const Certificate& cert, const GeneratorSet& gens,
                                  const SpotCheckConfig& cfg);

// Sylvester determinant of p and q in var (formal degrees), computed mod prime at
// sampled points and compared with claimed.
SpotCheckResult check_resultant(const Polynomial& p, const Polynomial& q, std::size_t var,
                                const Polynomial& claimed, const SpotCheckConfig& cfg,
                                const std::string& step = "resultant");

}  // namespace curvelim::oracle
