#include "curvelim/pipeline/match.hpp"

#include <map>

namespace curvelim::pipeline {
namespace {

Polynomial term_of(const Polynomial& p, std::size_t i) {
  std::vector<Exponent> e(p.exps(i), p.exps(i) + p.nvars());
  return Polynomial::monomial(p.vars(), e, p.coeff(i), p.order());
}

// Coefficients keyed by exponent vector.
std::map<std::vector<Exponent>, Scalar> coefficient_map(const Polynomial& p) {
  std::map<std::vector<Exponent>, Scalar> m;
  for (std::size_t i = 0; i < p.size(); ++i) m.emplace(std::vector<Exponent>(p.exps(i), p.exps(i) + p.nvars()), p.coeff(i));
  return m;
}

}  // namespace

std::vector<std::string> signed_terms(const Polynomial& p) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    std::string t = to_string(term_of(p, i));
    if (t.front() != '-') t = "+" + t;
    out.push_back(std::move(t));
  }
  return out;
}

MatchResult match_polynomials(const Polynomial& derived, const Polynomial& printed) {
  MatchResult r;
  Polynomial d = derived.with_order(printed.order());
  if (d == printed) {
    r.status = "matched";
    r.content = 1;
    r.ratio = 1;
    return r;
  }
  if (d.is_zero() || printed.is_zero()) {
    r.status = "mismatch";
    r.ratio = 1;
    r.diff = signed_terms(d - printed);
    return r;
  }
  const Scalar c = d.leading_coeff() / printed.leading_coeff();
  if (d == printed.scaled(c)) {
    r.status = "matched-up-to-content";
    r.content = c;
    r.ratio = c;
    return r;
  }
  // The dominant ratio over shared monomials localizes the diff to the differing terms.
  auto pm = coefficient_map(printed);
  std::map<Scalar, std::size_t> votes;
  for (std::size_t i = 0; i < d.size(); ++i) {
    auto it = pm.find(std::vector<Exponent>(d.exps(i), d.exps(i) + d.nvars()));
    if (it != pm.end()) ++votes[d.coeff(i) / it->second];
  }
  Scalar best = 1;
  std::size_t best_count = 0;
  for (const auto& [ratio, n] : votes) {
    if (n > best_count) {
      best = ratio;
      best_count = n;
    }
  }
  r.status = "mismatch";
  r.ratio = best;
  r.diff = signed_terms(d - printed.scaled(best));
  return r;
}

}  // namespace curvelim::pipeline
