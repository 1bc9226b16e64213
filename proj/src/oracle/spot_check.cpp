#include "curvelim/oracle/spot_check.hpp"

#include <gmp.h>
#include <openssl/evp.h>

#include <cmath>
#include <stdexcept>

#include "curvelim/exactpoly/errors.hpp"

namespace curvelim::oracle {
namespace {

__extension__ typedef unsigned __int128 u128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % p);
}

std::uint64_t addmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  u128 s = static_cast<u128>(a) + b;
  return static_cast<std::uint64_t>(s >= p ? s - p : s);
}

std::uint64_t submod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return a >= b ? a - b : static_cast<std::uint64_t>(static_cast<u128>(a) + p - b);
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  while (e) {
    if (e & 1) r = mulmod(r, b, p);
    b = mulmod(b, b, p);
    e >>= 1;
  }
  return r;
}

std::uint64_t residue_of(const mpz_class& z, std::uint64_t p) {
  static_assert(sizeof(unsigned long) == 8, "64-bit unsigned long required");
  return mpz_fdiv_ui(z.get_mpz_t(), p);
}

// A signed sum of products of powers of polynomials sharing one table.
struct Factor {
  const Polynomial* poly;
  unsigned power;
};
struct Product {
  bool negate;
  std::vector<Factor> factors;
};
using Form = std::vector<Product>;

unsigned form_degree(const Form& f) {
  unsigned d = 0;
  for (const auto& pr : f) {
    unsigned s = 0;
    for (const auto& fa : pr.factors) s += fa.power * fa.poly->total_degree();
    d = std::max(d, s);
  }
  return d;
}

class ModPoint {
 public:
  ModPoint(std::vector<std::uint64_t> values, std::uint64_t p)
      : p_(p), values_(std::move(values)), powers_(values_.size()) {}

  std::uint64_t power(std::size_t var, unsigned e) {
    auto& t = powers_[var];
    if (t.empty()) t.push_back(1);
    while (t.size() <= e) t.push_back(mulmod(t.back(), values_[var], p_));
    return t[e];
  }

  std::uint64_t coefficient(const Scalar& c) const {
    std::uint64_t num = residue_of(c.get_num(), p_);
    if (c.get_den() == 1) return num;
    std::uint64_t den = residue_of(c.get_den(), p_);
    return mulmod(num, powmod(den, p_ - 2, p_), p_);
  }

  std::uint64_t eval(const Polynomial& q) {
    const std::size_t n = q.nvars();
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < q.size(); ++i) {
      std::uint64_t term = coefficient(q.coeff(i));
      const Exponent* e = q.exps(i);
      for (std::size_t v = 0; v < n && term; ++v) {
        if (e[v]) term = mulmod(term, power(v, e[v]), p_);
      }
      acc = addmod(acc, term, p_);
    }
    return acc;
  }

  std::uint64_t eval(const Form& f) {
    std::uint64_t acc = 0;
    for (const auto& pr : f) {
      std::uint64_t prod = 1;
      for (const auto& fa : pr.factors) prod = mulmod(prod, powmod(eval(*fa.poly), fa.power, p_), p_);
      acc = pr.negate ? submod(acc, prod, p_) : addmod(acc, prod, p_);
    }
    return acc;
  }

 private:
  std::uint64_t p_;
  std::vector<std::uint64_t> values_;
  std::vector<std::vector<std::uint64_t>> powers_;
};

Scalar eval_exact(const Polynomial& q, const std::vector<mpz_class>& values) {
  const std::size_t n = q.nvars();
  std::vector<std::vector<mpz_class>> powers(n);
  Scalar acc = 0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    mpz_class m = 1;
    const Exponent* e = q.exps(i);
    for (std::size_t v = 0; v < n; ++v) {
      if (!e[v]) continue;
      auto& t = powers[v];
      if (t.empty()) t.push_back(1);
      while (t.size() <= e[v]) t.push_back(t.back() * values[v]);
      m *= t[e[v]];
    }
    acc += q.coeff(i) * Scalar(m);
  }
  return acc;
}

Scalar eval_exact(const Form& f, const std::vector<mpz_class>& values) {
  Scalar acc = 0;
  for (const auto& pr : f) {
    Scalar prod = 1;
    for (const auto& fa : pr.factors) {
      Scalar v = eval_exact(*fa.poly, values);
      for (unsigned k = 0; k < fa.power; ++k) prod *= v;
    }
    if (pr.negate) {
      acc -= prod;
    } else {
      acc += prod;
    }
  }
  return acc;
}

std::size_t form_terms(const Form& f) {
  std::size_t t = 0;
  for (const auto& pr : f) {
    for (const auto& fa : pr.factors) t += fa.poly->size();
  }
  return t;
}

void check_denominators(const Form& f, std::uint64_t p) {
  for (const auto& pr : f) {
    for (const auto& fa : pr.factors) {
      for (std::size_t i = 0; i < fa.poly->size(); ++i) {
        if (residue_of(fa.poly->coeff(i).get_den(), p) == 0) {
          throw DomainError("coefficient denominator divisible by the spot-check prime");
        }
      }
    }
  }
}

void confirm(Witness& w, const Form& f, const VarTable& vars, unsigned degree) {
  std::vector<mpz_class> values;
  for (std::size_t v = 0; v < vars.size(); ++v) {
    mpz_class z;
    mpz_set_ui(z.get_mpz_t(), w.point.at(vars.name(v)));
    values.push_back(z);
  }
  // Exact re-evaluation is cheap while the integers stay a few thousand bits wide.
  if (degree <= 64 && form_terms(f) <= 200000) {
    w.confirmed = sgn(eval_exact(f, values)) != 0;
    w.confirmation = "exact";
    return;
  }
  for (std::uint64_t q : kConfirmPrimes) {
    std::vector<std::uint64_t> r;
    for (const auto& z : values) r.push_back(residue_of(z, q));
    ModPoint pt(std::move(r), q);
    if (pt.eval(f) != 0) {
      w.confirmed = true;
      w.confirmation = "prime " + std::to_string(q);
      return;
    }
  }
  w.confirmation = "unconfirmed";
}

SpotCheckResult run(const Form& f, const VarTablePtr& vars, const SpotCheckConfig& cfg,
                    const std::string& step) {
  cfg.validate();
  check_denominators(f, cfg.prime);
  SpotCheckResult res;
  res.trials = cfg.trials;
  res.degree = form_degree(f);
  res.false_accept_bound = static_cast<double>(res.degree) / static_cast<double>(cfg.prime);
  res.log2_bound = res.degree == 0 ? -INFINITY
                                   : std::log2(static_cast<double>(res.degree)) -
                                         std::log2(static_cast<double>(cfg.prime));

  const std::size_t n = vars->size();
  std::vector<std::uint64_t> residues(cfg.trials);
  auto trial = [&](unsigned t) {
    std::vector<std::uint64_t> values(n);
    for (std::size_t v = 0; v < n; ++v) values[v] = sample(cfg.seed, step, t, vars->name(v), cfg.prime);
    ModPoint pt(std::move(values), cfg.prime);
    residues[t] = pt.eval(f);
  };
  if (cfg.parallel) {
    const long count = static_cast<long>(cfg.trials);
#pragma omp parallel for schedule(dynamic)
    for (long t = 0; t < count; ++t) trial(static_cast<unsigned>(t));
  } else {
    for (unsigned t = 0; t < cfg.trials; ++t) trial(t);
  }

  for (unsigned t = 0; t < cfg.trials; ++t) {
    if (residues[t] == 0) continue;
    Witness w;
    w.trial = t;
    w.residue = residues[t];
    for (std::size_t v = 0; v < n; ++v) {
      w.point[vars->name(v)] = sample(cfg.seed, step, t, vars->name(v), cfg.prime);
    }
    // Later witnesses are reported but only the first is re-derived.
    if (res.failures.empty()) confirm(w, f, *vars, res.degree);
    res.failures.push_back(std::move(w));
  }
  return res;
}

}  // namespace

void SpotCheckConfig::validate() const {
  if (trials < 1) throw StructuralError("spot check needs at least one trial");
  mpz_class p;
  mpz_set_ui(p.get_mpz_t(), prime);
  if (prime < 3 || mpz_probab_prime_p(p.get_mpz_t(), 40) == 0) {
    throw StructuralError("spot-check modulus " + std::to_string(prime) + " is not prime");
  }
}

std::uint64_t sample(std::uint64_t seed, const std::string& step, unsigned trial,
                     const std::string& var, std::uint64_t prime) {
  const std::string base = "curvelim-spot|" + std::to_string(seed) + "|" + step + "|" +
                           std::to_string(trial) + "|" + var + "|";
  unsigned char md[EVP_MAX_MD_SIZE];
  // Largest multiple of prime representable in 64 bits; draws above it are rejected.
  const std::uint64_t limit = prime * (UINT64_MAX / prime);
  for (std::uint64_t counter = 0;; ++counter) {
    std::string msg = base + std::to_string(counter);
    unsigned int len = 0;
    if (EVP_Digest(msg.data(), msg.size(), md, &len, EVP_sha256(), nullptr) != 1) {
      throw std::runtime_error("sha256 failed");
    }
    std::uint64_t x = 0;
    for (int i = 0; i < 8; ++i) x = (x << 8) | md[i];
    if (x < limit) return x % prime;
  }
}

SpotCheckResult check_identity(const Polynomial& lhs, const Polynomial& rhs,
                               const SpotCheckConfig& cfg, const std::string& step) {
  lhs.check_compatible(rhs);
  Form f{Product{false, {{&lhs, 1}}}, Product{true, {{&rhs, 1}}}};
  return run(f, lhs.vars(), cfg, step);
}

SpotCheckResult check_certificate(const Certificate& cert, const GeneratorSet& gens,
                                  const Polynomial& target, const SpotCheckConfig& cfg) {
  Form f;
  Product lead{false, {{&target, 1}}};
  if (cert.multiplier && cert.power > 0) {
    cert.multiplier->check_compatible(target);
    lead.factors.push_back({&*cert.multiplier, cert.power});
  }
  f.push_back(std::move(lead));
  for (const auto& t : cert.terms) {
    const Relation* r = gens.find(t.generator_id);
    if (!r) {
      throw StructuralError("certificate for '" + cert.target_id +
                            "' references unknown generator '" + t.generator_id + "'");
    }
    t.cofactor.check_compatible(target);
    r->poly.check_compatible(target);
    f.push_back(Product{true, {{&t.cofactor, 1}, {&r->poly, 1}}});
  }
  return run(f, target.vars(), cfg, cert.target_id);
}

SpotCheckResult check_certificate(const Certificate& cert, const GeneratorSet& gens,
                                  const SpotCheckConfig& cfg) {
  return check_certificate(cert, gens, cert.target, cfg);
}

SpotCheckResult check_resultant(const Polynomial& p, const Polynomial& q, std::size_t var,
                                const Polynomial& claimed, const SpotCheckConfig& cfg,
                                const std::string& step) {
  cfg.validate();
  p.check_compatible(q);
  p.check_compatible(claimed);
  const std::uint64_t prime = cfg.prime;
  const auto cp = coefficients_in(p, var);
  const auto cq = coefficients_in(q, var);
  const std::size_t m = cp.size() - 1;
  const std::size_t n = cq.size() - 1;
  const std::size_t dim = m + n;

  SpotCheckResult res;
  res.trials = cfg.trials;
  res.degree = claimed.total_degree();
  res.false_accept_bound = static_cast<double>(res.degree) / static_cast<double>(prime);
  res.log2_bound = res.degree == 0 ? -INFINITY
                                   : std::log2(static_cast<double>(res.degree)) -
                                         std::log2(static_cast<double>(prime));
  const VarTablePtr& vars = p.vars();
  std::vector<std::uint64_t> diffs(cfg.trials);
  auto trial = [&](unsigned t) {
    std::vector<std::uint64_t> values(vars->size());
    for (std::size_t v = 0; v < vars->size(); ++v) values[v] = sample(cfg.seed, step, t, vars->name(v), prime);
    ModPoint pt(std::move(values), prime);
    // Formal degrees keep the determinant compatible with specialization.
    std::vector<std::vector<std::uint64_t>> a(dim, std::vector<std::uint64_t>(dim, 0));
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t k = 0; k <= m; ++k) a[r][r + k] = pt.eval(cp[m - k]);
    }
    for (std::size_t r = 0; r < m; ++r) {
      for (std::size_t k = 0; k <= n; ++k) a[n + r][r + k] = pt.eval(cq[n - k]);
    }
    std::uint64_t det = 1;
    for (std::size_t c = 0; c < dim && det; ++c) {
      std::size_t piv = c;
      while (piv < dim && a[piv][c] == 0) ++piv;
      if (piv == dim) {
        det = 0;
        break;
      }
      if (piv != c) {
        std::swap(a[piv], a[c]);
        det = submod(0, det, prime);
      }
      det = mulmod(det, a[c][c], prime);
      const std::uint64_t inv = powmod(a[c][c], prime - 2, prime);
      for (std::size_t r = c + 1; r < dim; ++r) {
        if (a[r][c] == 0) continue;
        const std::uint64_t f = mulmod(a[r][c], inv, prime);
        for (std::size_t k = c; k < dim; ++k) a[r][k] = submod(a[r][k], mulmod(f, a[c][k], prime), prime);
      }
    }
    diffs[t] = submod(det, pt.eval(claimed), prime);
  };
  if (cfg.parallel) {
    const long count = static_cast<long>(cfg.trials);
#pragma omp parallel for schedule(dynamic)
    for (long t = 0; t < count; ++t) trial(static_cast<unsigned>(t));
  } else {
    for (unsigned t = 0; t < cfg.trials; ++t) trial(t);
  }
  for (unsigned t = 0; t < cfg.trials; ++t) {
    if (diffs[t] == 0) continue;
    Witness w;
    w.trial = t;
    w.residue = diffs[t];
    for (std::size_t v = 0; v < vars->size(); ++v) w.point[vars->name(v)] = sample(cfg.seed, step, t, vars->name(v), prime);
    res.failures.push_back(std::move(w));
  }
  return res;
}

}  // namespace curvelim::oracle
