#include "curvelim/ideal/membership.hpp"

#include <memory>
#include <stdexcept>

#include "curvelim/exactpoly/compact.hpp"
#include "curvelim/exactpoly/errors.hpp"
#include "engine.hpp"

namespace curvelim {
namespace {

// Engine on the compacted variables, with cofactors mapped back on demand.
class TrackedRun {
 public:
  TrackedRun(const std::vector<Polynomial>& inputs, const MonomialOrder& order,
             const GroebnerLimits& limits, const std::vector<const Polynomial*>& extra = {})
      : order_(order), cmp_(compaction(inputs, extra)) {
    MonomialOrder corder = cmp_.compact_order(order);
    std::vector<Polynomial> down;
    for (const auto& p : inputs) down.push_back(cmp_.down(p, corder));
    engine_ = std::make_unique<detail::Engine>(std::move(down), corder, limits);
    engine_->run();
    for (std::size_t node : engine_->basis()) basis_.push_back(cmp_.up(engine_->element(node), order));
  }

  const std::vector<Polynomial>& basis() const { return basis_; }

  std::vector<Polynomial> cofactors(std::size_t k) {
    std::vector<Polynomial> out;
    for (const auto& c : engine_->expand(engine_->basis()[k])) out.push_back(cmp_.up(c, order_));
    return out;
  }

 private:
  static Compaction compaction(const std::vector<Polynomial>& inputs,
                               const std::vector<const Polynomial*>& extra) {
    std::vector<const Polynomial*> all = extra;
    for (const auto& p : inputs) all.push_back(&p);
    return Compaction::of(all, inputs.front().vars());
  }

  MonomialOrder order_;
  Compaction cmp_;
  std::unique_ptr<detail::Engine> engine_;
  std::vector<Polynomial> basis_;
};

struct Elimination {
  std::size_t var;
  std::size_t source;  // original generator index
  Polynomial relation;  // the generator as it stood when var was removed
};

struct Presolved {
  std::vector<Polynomial> current;  // images of the generators; zero when removed
  std::vector<bool> active;
  std::vector<Elimination> steps;
  Polynomial target;
  Polynomial multiplier;
};

Presolved presolve(const std::vector<Polynomial>& gens, const Polynomial& target,
                   const Polynomial& multiplier, bool enabled) {
  Presolved s{gens, std::vector<bool>(gens.size(), true), {}, target, multiplier};
  if (!enabled) return s;
  const std::size_t n = target.nvars();
  for (;;) {
    long best_var = -1;
    std::size_t best_gen = 0;
    for (std::size_t j = 0; j < s.current.size(); ++j) {
      if (!s.active[j]) continue;
      const Polynomial& g = s.current[j];
      for (std::size_t v = n; v-- > 0;) {
        if (static_cast<long>(v) < best_var) break;
        if (g.degree(v) != 1) continue;
        auto cs = coefficients_in(g, v);
        if (!cs[1].is_constant()) continue;
        if (static_cast<long>(v) > best_var ||
            g.size() < s.current[best_gen].size()) {
          best_var = static_cast<long>(v);
          best_gen = j;
        }
        break;
      }
    }
    if (best_var < 0) return s;
    auto v = static_cast<std::size_t>(best_var);
    const Polynomial& g = s.current[best_gen];
    auto cs = coefficients_in(g, v);
    Scalar e = cs[1].constant_term();
    Polynomial image = cs[0].scaled(-1 / e);
    s.steps.push_back(Elimination{v, best_gen, g});
    s.active[best_gen] = false;
    s.current[best_gen] = Polynomial(g.vars(), g.order());
    for (std::size_t j = 0; j < s.current.size(); ++j) {
      if (!s.active[j]) continue;
      s.current[j] = substitute(s.current[j], v, image);
      if (s.current[j].is_zero()) s.active[j] = false;
    }
    s.target = substitute(s.target, v, image);
    s.multiplier = substitute(s.multiplier, v, image);
  }
}

// Table with the eliminated variables first (in elimination order), for lex division.
struct TriangularFrame {
  VarTablePtr table;
  std::vector<std::size_t> forward;   // full index -> frame index
  std::vector<std::size_t> backward;  // frame index -> full index

  TriangularFrame(const VarTablePtr& full, const std::vector<Elimination>& steps) {
    std::vector<bool> taken(full->size(), false);
    for (const auto& st : steps) {
      backward.push_back(st.var);
      taken[st.var] = true;
    }
    for (std::size_t i = 0; i < full->size(); ++i) {
      if (!taken[i]) backward.push_back(i);
    }
    forward.assign(full->size(), 0);
    std::vector<std::string> names;
    for (std::size_t k = 0; k < backward.size(); ++k) {
      forward[backward[k]] = k;
      names.push_back(full->name(backward[k]));
    }
    table = VarTable::make(std::move(names));
  }

  Polynomial in(const Polynomial& p) const {
    return rename_vars(p, table, forward).with_order(MonomialOrder::lex());
  }
  Polynomial out(const Polynomial& p, const VarTablePtr& full, const MonomialOrder& order) const {
    return rename_vars(p, full, backward).with_order(order);
  }
};

std::vector<Polynomial> divide_triangular(const Polynomial& p, const std::vector<Polynomial>& ls,
                                          const TriangularFrame& frame, const VarTablePtr& full,
                                          const MonomialOrder& order) {
  std::vector<Polynomial> divs;
  for (const auto& l : ls) divs.push_back(frame.in(l));
  NormalForm nf = normal_form(frame.in(p), divs);
  if (!nf.remainder.is_zero()) {
    throw std::logic_error("membership: lifting through linear relations left a remainder");
  }
  std::vector<Polynomial> out;
  for (const auto& q : nf.cofactors) out.push_back(frame.out(q, full, order));
  return out;
}

Certificate build(const std::string& target_id, const Polynomial& target, const GeneratorSet& gens,
                  const std::vector<Polynomial>& coefs, std::optional<Polynomial> multiplier,
                  unsigned power) {
  Certificate cert;
  cert.target_id = target_id;
  cert.target = target;
  cert.multiplier = std::move(multiplier);
  cert.power = power;
  const auto& rel = gens.relations();
  for (std::size_t j = 0; j < rel.size(); ++j) {
    if (!coefs[j].is_zero()) cert.terms.push_back(CertificateTerm{rel[j].id, coefs[j]});
  }
  if (!cert.holds(gens)) {
    throw std::logic_error("certificate for '" + target_id + "' failed exact verification");
  }
  return cert;
}

}  // namespace

std::optional<Certificate> membership(const Polynomial& target, const GeneratorSet& gens,
                                      const std::vector<SaturationRecord>& saturations,
                                      const MembershipOptions& options,
                                      const std::string& target_id) {
  const VarTablePtr& vars = target.vars();
  const MonomialOrder& order = options.order;
  Polynomial t = target.with_order(order);
  std::vector<Polynomial> polys;
  for (const auto& r : gens.relations()) {
    r.poly.check_compatible(t);
    polys.push_back(r.poly.with_order(order));
  }
  Polynomial m = Polynomial::constant(vars, 1, order);
  for (const auto& s : saturations) {
    if (s.multiplier.is_zero()) throw StructuralError("saturation multiplier is zero");
    m *= s.multiplier;
  }
  const unsigned max_power = saturations.empty() ? 0 : options.max_power;
  std::optional<Polynomial> mult;
  if (!saturations.empty()) mult = m;

  Presolved ps = presolve(polys, t, m, options.presolve);
  if (ps.multiplier.is_zero()) {
    throw DomainError("saturation multiplier vanishes modulo the linear hypotheses");
  }
  std::vector<std::size_t> live;
  std::vector<Polynomial> reduced;
  for (std::size_t j = 0; j < ps.current.size(); ++j) {
    if (ps.active[j]) {
      live.push_back(j);
      reduced.push_back(ps.current[j]);
    }
  }

  Polynomial zero(vars, order);
  std::unique_ptr<TrackedRun> run;
  std::optional<std::vector<Polynomial>> a;
  unsigned power = 0;
  Polynomial tk = ps.target;
  for (unsigned k = 0; k <= max_power; ++k) {
    if (k > 0) tk *= ps.multiplier;
    std::vector<Polynomial> coefs(polys.size(), zero);
    if (tk.is_zero()) {
      a = coefs;
      power = k;
      break;
    }
    if (reduced.empty()) continue;
    NormalForm cheap = normal_form(tk, reduced);
    if (cheap.remainder.is_zero()) {
      for (std::size_t i = 0; i < live.size(); ++i) coefs[live[i]] = cheap.cofactors[i];
      a = coefs;
      power = k;
      break;
    }
    if (!run) {
      GroebnerLimits lim = options.limits;
      run = std::make_unique<TrackedRun>(reduced, order, lim, std::vector<const Polynomial*>{&tk});
    }
    NormalForm nf = normal_form(tk, run->basis());
    if (!nf.remainder.is_zero()) continue;
    for (std::size_t e = 0; e < nf.cofactors.size(); ++e) {
      if (nf.cofactors[e].is_zero()) continue;
      auto sub = run->cofactors(e);
      for (std::size_t i = 0; i < live.size(); ++i) {
        if (!sub[i].is_zero()) coefs[live[i]] += nf.cofactors[e] * sub[i];
      }
    }
    a = coefs;
    power = k;
    break;
  }
  if (!a) return std::nullopt;

  std::vector<Polynomial> coefs = *a;
  if (!ps.steps.empty()) {
    TriangularFrame frame(vars, ps.steps);
    Polynomial rest = t;
    if (power > 0) rest = pow(m, power) * t;
    for (std::size_t j = 0; j < polys.size(); ++j) {
      if (!coefs[j].is_zero()) rest -= coefs[j] * polys[j];
    }
    // Each removed relation in terms of the original generators.
    std::vector<Polynomial> ls;
    std::vector<std::vector<Polynomial>> expr;
    for (const auto& st : ps.steps) {
      std::vector<Polynomial> e(polys.size(), zero);
      e[st.source] = Polynomial::constant(vars, 1, order);
      if (!ls.empty()) {
        auto q = divide_triangular(polys[st.source] - st.relation, ls, frame, vars, order);
        for (std::size_t l = 0; l < q.size(); ++l) {
          if (q[l].is_zero()) continue;
          for (std::size_t j = 0; j < polys.size(); ++j) {
            if (!expr[l][j].is_zero()) e[j] -= q[l] * expr[l][j];
          }
        }
      }
      ls.push_back(st.relation);
      expr.push_back(std::move(e));
    }
    auto b = divide_triangular(rest, ls, frame, vars, order);
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (b[i].is_zero()) continue;
      for (std::size_t j = 0; j < polys.size(); ++j) {
        if (!expr[i][j].is_zero()) coefs[j] += b[i] * expr[i][j];
      }
    }
  }
  return build(target_id, target, gens, coefs, mult, power);
}

DerivedGenerators eliminate(const GeneratorSet& gens, const std::vector<std::string>& front_vars,
                            const GroebnerLimits& limits) {
  if (gens.empty()) throw StructuralError("eliminate: empty generator set");
  const VarTablePtr& vars = gens.relations().front().poly.vars();
  std::vector<bool> front(vars->size(), false);
  for (const auto& name : front_vars) front[vars->require(name)] = true;
  MonomialOrder order = MonomialOrder::block(front);
  std::vector<Polynomial> polys;
  for (const auto& r : gens.relations()) polys.push_back(r.poly.with_order(order));

  TrackedRun run(polys, order, limits);
  DerivedGenerators out{GeneratorSet(gens.order()), {}};
  std::size_t count = 0;
  for (std::size_t e = 0; e < run.basis().size(); ++e) {
    const Polynomial& p = run.basis()[e];
    bool free = true;
    for (std::size_t v = 0; v < front.size() && free; ++v) free = !(front[v] && p.uses(v));
    if (!free) continue;
    std::string id = "elim_" + std::to_string(++count);
    Polynomial q = p.with_order(gens.order());
    out.generators.add(id, q);
    out.certificates.push_back(build(id, q, gens, run.cofactors(e), std::nullopt, 0));
  }
  return out;
}

DerivedGenerators saturate(const GeneratorSet& gens, const Polynomial& multiplier,
                           const GroebnerLimits& limits) {
  if (multiplier.is_zero()) throw StructuralError("saturate: zero multiplier");
  if (gens.empty()) throw StructuralError("saturate: empty generator set");
  const VarTablePtr& vars = multiplier.vars();
  std::string fresh = "_sat_t";
  while (vars->contains(fresh)) fresh += "_";
  std::vector<std::string> names = vars->names();
  names.push_back(fresh);
  VarTablePtr ext = VarTable::make(std::move(names));
  const std::size_t tv = ext->size() - 1;
  std::vector<bool> front(ext->size(), false);
  front[tv] = true;
  MonomialOrder order = MonomialOrder::block(front);

  std::vector<Polynomial> polys;
  for (const auto& r : gens.relations()) polys.push_back(r.poly.in_table(ext, order));
  Polynomial mx = multiplier.in_table(ext, order);
  polys.push_back(Polynomial::variable(ext, tv, order) * mx - Polynomial::constant(ext, 1, order));

  TrackedRun run(polys, order, limits);
  DerivedGenerators out{GeneratorSet(gens.order()), {}};
  Polynomial m = multiplier.with_order(gens.order());
  Polynomial zero(vars, gens.order());
  std::size_t count = 0;
  for (std::size_t e = 0; e < run.basis().size(); ++e) {
    const Polynomial& p = run.basis()[e];
    if (p.uses(tv)) continue;
    std::string id = "sat_" + std::to_string(++count);
    Polynomial q = p.in_table(vars, gens.order());
    out.generators.add(id, q);

    // Substitute t = 1/m and clear denominators with m^d.
    auto cof = run.cofactors(e);
    unsigned d = 0;
    for (std::size_t j = 0; j + 1 < cof.size(); ++j) d = std::max(d, cof[j].degree(tv));
    std::vector<Polynomial> mp{Polynomial::constant(vars, 1, gens.order())};
    for (unsigned k = 1; k <= d; ++k) mp.push_back(mp.back() * m);
    std::vector<Polynomial> coefs;
    for (std::size_t j = 0; j + 1 < cof.size(); ++j) {
      auto cs = coefficients_in(cof[j], tv);
      Polynomial c = zero;
      for (std::size_t k = 0; k < cs.size(); ++k) {
        if (!cs[k].is_zero()) c += cs[k].in_table(vars, gens.order()) * mp[d - k];
      }
      coefs.push_back(std::move(c));
    }
    out.certificates.push_back(build(id, q, gens, coefs, m, d));
  }
  return out;
}

}  // namespace curvelim
