#include "curvelim/pipeline/endgame.hpp"

#include "curvelim/exactpoly/algebra.hpp"
#include "curvelim/exactpoly/errors.hpp"
#include "curvelim/exactpoly/resultant.hpp"

namespace curvelim::pipeline {

EndgameResult endgame_eliminate(const Polynomial& p, const Polynomial& q, std::size_t var) {
  p.check_compatible(q);
  if (p.degree(var) == 0 || q.degree(var) == 0) {
    throw DomainError("endgame: both polynomials need positive degree in " + p.vars()->name(var));
  }
  EndgameResult out;
  out.trace.push_back({"sylvester", p.degree(var), p.size()});
  out.trace.push_back({"sylvester", q.degree(var), q.size()});
  out.resultant = resultant(p, q, var).with_order(p.order());
  out.eliminant = primitive_part(out.resultant);
  out.trace.push_back({"sylvester", 0, out.eliminant.size()});

  SubresultantChain chain = subresultant_chain(p, q, var);
  for (const auto& s : chain.trace) out.trace.push_back({"gradual", s.degree, s.terms});
  out.gradual = primitive_part(chain.last.with_order(p.order()));

  if (out.eliminant.is_zero() || out.gradual.is_zero()) {
    out.gradual_agrees = out.eliminant.is_zero() && out.gradual.is_zero();
  } else {
    out.gradual_agrees = divide_exact(out.eliminant, out.gradual).has_value() ||
                         divide_exact(out.gradual, out.eliminant).has_value();
  }
  return out;
}

}  // namespace curvelim::pipeline
