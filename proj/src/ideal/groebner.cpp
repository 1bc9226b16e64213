#include "curvelim/ideal/groebner.hpp"

#include <algorithm>
#include <set>

#include "curvelim/exactpoly/algebra.hpp"
#include "curvelim/exactpoly/compact.hpp"
#include "curvelim/exactpoly/errors.hpp"
#include "engine.hpp"

namespace curvelim {
namespace detail {

namespace {

bool divides(const Exponent* a, const Exponent* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

bool coprime(const Exponent* a, const Exponent* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] && b[i]) return false;
  }
  return true;
}

std::vector<Exponent> lcm(const Exponent* a, const Exponent* b, std::size_t n) {
  std::vector<Exponent> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = std::max(a[i], b[i]);
  return out;
}

std::vector<Exponent> quotient(const Exponent* a, const Exponent* b, std::size_t n) {
  std::vector<Exponent> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<Exponent>(a[i] - b[i]);
  return out;
}

}  // namespace

std::uint64_t support_mask(const Exponent* e, std::size_t n) {
  std::uint64_t m = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (e[i]) m |= std::uint64_t{1} << (i % 64);
  }
  return m;
}

void DivisorSet::push(const Polynomial* p) {
  polys.push_back(p);
  masks.push_back(support_mask(p->leading_exps(), p->nvars()));
}

long DivisorSet::find(const Exponent* e, std::uint64_t mask, std::size_t n) const {
  for (std::size_t i = 0; i < polys.size(); ++i) {
    if ((masks[i] & ~mask) != 0) continue;
    if (divides(polys[i]->leading_exps(), e, n)) return static_cast<long>(i);
  }
  return -1;
}

Reduction reduce(const Polynomial& p, const DivisorSet& divisors, bool track) {
  const std::size_t n = p.nvars();
  const MonomialOrder& order = p.order();
  std::vector<Exponent> we = p.exponent_data();
  std::vector<Scalar> wc = p.coeff_data();
  std::vector<Exponent> re;
  std::vector<Scalar> rc;
  std::vector<std::vector<Exponent>> qe(track ? divisors.polys.size() : 0);
  std::vector<std::vector<Scalar>> qc(qe.size());

  std::vector<Exponent> ne, shift(n), row(n);
  std::vector<Scalar> nc;
  std::size_t pos = 0;
  while (pos < wc.size()) {
    const Exponent* e = we.data() + pos * n;
    long idx = divisors.find(e, support_mask(e, n), n);
    if (idx < 0) {
      re.insert(re.end(), e, e + n);
      rc.push_back(std::move(wc[pos]));
      ++pos;
      continue;
    }
    const Polynomial& g = *divisors.polys[static_cast<std::size_t>(idx)];
    const Exponent* lg = g.leading_exps();
    for (std::size_t v = 0; v < n; ++v) shift[v] = static_cast<Exponent>(e[v] - lg[v]);
    Scalar c = wc[pos] / g.leading_coeff();
    if (track) {
      auto k = static_cast<std::size_t>(idx);
      qe[k].insert(qe[k].end(), shift.begin(), shift.end());
      qc[k].push_back(c);
    }
    // work[pos+1..] - c * x^shift * g[1..]
    ne.clear();
    nc.clear();
    std::size_t a = pos + 1, b = 1;
    const std::size_t an = wc.size(), bn = g.size();
    auto load = [&](std::size_t t) {
      const Exponent* ge = g.exps(t);
      for (std::size_t v = 0; v < n; ++v) row[v] = static_cast<Exponent>(ge[v] + shift[v]);
    };
    if (b < bn) load(b);
    while (a < an || b < bn) {
      int cmp;
      if (a >= an) {
        cmp = -1;
      } else if (b >= bn) {
        cmp = 1;
      } else {
        cmp = order.compare(we.data() + a * n, row.data(), n);
      }
      if (cmp > 0) {
        ne.insert(ne.end(), we.data() + a * n, we.data() + (a + 1) * n);
        nc.push_back(std::move(wc[a]));
        ++a;
      } else if (cmp < 0) {
        ne.insert(ne.end(), row.begin(), row.end());
        nc.push_back(-c * g.coeff(b));
        if (++b < bn) load(b);
      } else {
        Scalar s = wc[a] - c * g.coeff(b);
        if (sgn(s) != 0) {
          ne.insert(ne.end(), row.begin(), row.end());
          nc.push_back(std::move(s));
        }
        ++a;
        if (++b < bn) load(b);
      }
    }
    we.swap(ne);
    wc.swap(nc);
    pos = 0;
  }

  Reduction out;
  out.remainder = Polynomial::adopt(p.vars(), order, std::move(re), std::move(rc));
  if (track) {
    out.quotients.reserve(qe.size());
    for (std::size_t k = 0; k < qe.size(); ++k) {
      out.quotients.push_back(
          Polynomial::adopt(p.vars(), order, std::move(qe[k]), std::move(qc[k])));
    }
  }
  return out;
}

Engine::Engine(std::vector<Polynomial> inputs, const MonomialOrder& order,
               const GroebnerLimits& limits)
    : order_(order), limits_(limits) {
  if (inputs.empty()) throw StructuralError("groebner: empty generator set");
  vars_ = inputs.front().vars();
  n_ = inputs.front().nvars();
  for (auto& p : inputs) {
    p.check_compatible(inputs.front());
    inputs_.push_back(p.with_order(order_));
  }
}

std::size_t Engine::add_node(Node node) {
  node.mask = node.poly.is_zero() ? 0 : support_mask(node.poly.leading_exps(), n_);
  nodes_.push_back(std::move(node));
  return nodes_.size() - 1;
}

void Engine::update(std::size_t h) {
  const Exponent* lh = nodes_[h].poly.leading_exps();
  std::vector<std::size_t> c = live_;
  std::vector<std::vector<Exponent>> lc;
  lc.reserve(c.size());
  for (std::size_t g : c) lc.push_back(lcm(lh, nodes_[g].poly.leading_exps(), n_));

  std::vector<std::size_t> d;  // positions in c
  for (std::size_t k = 0; k < c.size(); ++k) {
    bool keep = coprime(lh, nodes_[c[k]].poly.leading_exps(), n_);
    if (!keep) {
      keep = true;
      for (std::size_t m = k + 1; m < c.size() && keep; ++m) {
        if (divides(lc[m].data(), lc[k].data(), n_)) keep = false;
      }
      for (std::size_t m : d) {
        if (!keep) break;
        if (divides(lc[m].data(), lc[k].data(), n_)) keep = false;
      }
    }
    if (keep) d.push_back(k);
  }

  for (auto it = pairs_.begin(); it != pairs_.end();) {
    const Exponent* l12 = it->lcm.data();
    bool drop = false;
    if (divides(lh, l12, n_)) {
      auto a = lcm(nodes_[it->i].poly.leading_exps(), lh, n_);
      auto b = lcm(nodes_[it->j].poly.leading_exps(), lh, n_);
      drop = a != it->lcm && b != it->lcm;
    }
    it = drop ? pairs_.erase(it) : std::next(it);
  }
  for (std::size_t k : d) {
    if (coprime(lh, nodes_[c[k]].poly.leading_exps(), n_)) continue;
    pairs_.push_back(Pair{c[k], h, lc[k]});
  }

  std::vector<std::size_t> next;
  for (std::size_t g : live_) {
    if (!divides(lh, nodes_[g].poly.leading_exps(), n_)) next.push_back(g);
  }
  next.push_back(h);
  live_.swap(next);
}

Engine::Node Engine::s_polynomial(const Pair& pair) {
  const Polynomial& f = nodes_[pair.i].poly;
  const Polynomial& g = nodes_[pair.j].poly;
  auto mf = quotient(pair.lcm.data(), f.leading_exps(), n_);
  auto mg = quotient(pair.lcm.data(), g.leading_exps(), n_);
  Scalar cf = 1 / Scalar(f.leading_coeff());
  Scalar cg = 1 / Scalar(g.leading_coeff());
  Polynomial s = f.mul_term(mf.data(), cf) - g.mul_term(mg.data(), cg);

  DivisorSet divs;
  for (std::size_t k : live_) divs.push(&nodes_[k].poly);
  Reduction r = reduce(s, divs, true);

  std::map<std::size_t, Polynomial> parts;
  auto acc = [&](std::size_t idx, const Polynomial& q) {
    auto it = parts.find(idx);
    if (it == parts.end()) {
      parts.emplace(idx, q);
    } else {
      it->second += q;
    }
  };
  acc(pair.i, Polynomial::monomial(vars_, mf, cf, order_));
  acc(pair.j, Polynomial::monomial(vars_, mg, -cg, order_));
  for (std::size_t k = 0; k < live_.size(); ++k) {
    if (!r.quotients[k].is_zero()) acc(live_[k], -r.quotients[k]);
  }

  Node node;
  node.poly = std::move(r.remainder);
  node.scale = 1;
  for (auto& [idx, q] : parts) {
    if (!q.is_zero()) node.parts.emplace_back(idx, std::move(q));
  }
  return node;
}

void Engine::run() {
  for (std::size_t j = 0; j < inputs_.size(); ++j) {
    if (inputs_[j].is_zero()) continue;
    ContentSplit cs = gcd_content(inputs_[j]);
    Node leaf;
    leaf.poly = std::move(cs.primitive);
    leaf.input = j;
    leaf.scale = 1 / cs.content;
    std::size_t h = add_node(std::move(leaf));
    if (nodes_[h].poly.is_constant()) {
      live_ = {h};
      pairs_.clear();
      interreduce();
      return;
    }
    update(h);
  }

  auto before = [&](const Pair& a, const Pair& b) {
    int c = order_.compare(a.lcm.data(), b.lcm.data(), n_);
    if (c != 0) return c < 0;
    return std::tie(a.i, a.j) < std::tie(b.i, b.j);
  };
  while (!pairs_.empty()) {
    auto best = std::min_element(pairs_.begin(), pairs_.end(), before);
    Pair pair = std::move(*best);
    pairs_.erase(best);
    if (++pairs_reduced_ > limits_.max_pairs) {
      throw ResourceError(limits_.stage,
                          "S-pair limit " + std::to_string(limits_.max_pairs) + " reached");
    }
    Node node = s_polynomial(pair);
    if (node.poly.is_zero()) continue;
    ContentSplit cs = gcd_content(node.poly);
    node.poly = std::move(cs.primitive);
    node.scale = 1 / cs.content;
    std::size_t h = add_node(std::move(node));
    if (nodes_[h].poly.is_constant()) {
      live_ = {h};
      pairs_.clear();
      break;
    }
    update(h);
    if (live_.size() > limits_.max_basis) {
      throw ResourceError(limits_.stage,
                          "basis size limit " + std::to_string(limits_.max_basis) + " reached");
    }
  }
  interreduce();
}

void Engine::interreduce() {
  std::vector<std::size_t> minimal;
  for (std::size_t a : live_) {
    const Exponent* la = nodes_[a].poly.leading_exps();
    bool keep = true;
    for (std::size_t b : live_) {
      if (a == b) continue;
      const Exponent* lb = nodes_[b].poly.leading_exps();
      if (!divides(lb, la, n_)) continue;
      if (std::equal(la, la + n_, lb) && a < b) continue;
      keep = false;
      break;
    }
    if (keep) minimal.push_back(a);
  }

  basis_.clear();
  for (std::size_t a : minimal) {
    DivisorSet divs;
    std::vector<std::size_t> others;
    for (std::size_t b : minimal) {
      if (b == a) continue;
      divs.push(&nodes_[b].poly);
      others.push_back(b);
    }
    // The leading term is irreducible, so only the tail moves.
    Reduction r = reduce(nodes_[a].poly, divs, true);
    bool changed = false;
    for (const auto& q : r.quotients) changed = changed || !q.is_zero();
    if (!changed) {
      basis_.push_back(a);
      continue;
    }
    Node node;
    node.parts.emplace_back(a, Polynomial::constant(vars_, 1, order_));
    for (std::size_t k = 0; k < others.size(); ++k) {
      if (!r.quotients[k].is_zero()) node.parts.emplace_back(others[k], -r.quotients[k]);
    }
    ContentSplit cs = gcd_content(r.remainder);
    node.poly = std::move(cs.primitive);
    node.scale = 1 / cs.content;
    basis_.push_back(add_node(std::move(node)));
  }
  std::sort(basis_.begin(), basis_.end(), [&](std::size_t a, std::size_t b) {
    return order_.compare(nodes_[a].poly.leading_exps(), nodes_[b].poly.leading_exps(), n_) > 0;
  });
}

const std::vector<Polynomial>& Engine::expand(std::size_t node) {
  auto found = expanded_.find(node);
  if (found != expanded_.end()) return found->second;
  const Node& nd = nodes_[node];
  Polynomial zero(vars_, order_);
  std::vector<Polynomial> out(inputs_.size(), zero);
  if (nd.input) {
    out[*nd.input] = Polynomial::constant(vars_, nd.scale, order_);
  } else {
    for (const auto& [idx, q] : nd.parts) {
      const auto& sub = expand(idx);
      for (std::size_t j = 0; j < out.size(); ++j) {
        if (!sub[j].is_zero()) out[j] += q * sub[j];
      }
    }
    if (nd.scale != 1) {
      for (auto& p : out) p = p.scaled(nd.scale);
    }
  }
  return expanded_.emplace(node, std::move(out)).first->second;
}

}  // namespace detail

namespace {

std::vector<const Polynomial*> pointers(const std::vector<Polynomial>& v) {
  std::vector<const Polynomial*> out;
  for (const auto& p : v) out.push_back(&p);
  return out;
}

}  // namespace

GroebnerBasis groebner(const std::vector<Polynomial>& gens, const MonomialOrder& order,
                       const GroebnerLimits& limits, bool track) {
  if (gens.empty()) throw StructuralError("groebner: empty generator set");
  const VarTablePtr& full = gens.front().vars();
  Compaction cmp = Compaction::of(pointers(gens), full);
  MonomialOrder corder = cmp.compact_order(order);
  std::vector<Polynomial> down;
  for (const auto& g : gens) {
    g.check_compatible(gens.front());
    down.push_back(cmp.down(g, corder));
  }
  detail::Engine engine(std::move(down), corder, limits);
  engine.run();

  GroebnerBasis out;
  out.vars = full;
  out.order = order;
  for (const auto& g : gens) out.inputs.push_back(g.with_order(order));
  for (std::size_t j = 0; j < gens.size(); ++j) out.input_ids.push_back("g" + std::to_string(j + 1));
  out.pairs_reduced = engine.pairs_reduced();
  for (std::size_t node : engine.basis()) {
    out.elements.push_back(cmp.up(engine.element(node), order));
    if (track) {
      std::vector<Polynomial> cof;
      for (const auto& c : engine.expand(node)) cof.push_back(cmp.up(c, order));
      out.provenance.push_back(std::move(cof));
    }
  }
  return out;
}

GroebnerBasis groebner(const GeneratorSet& gens, const MonomialOrder& order,
                       const GroebnerLimits& limits, bool track) {
  GroebnerBasis out = groebner(gens.polys(), order, limits, track);
  out.input_ids = gens.ids();
  return out;
}

NormalForm normal_form(const Polynomial& p, const std::vector<Polynomial>& divisors) {
  NormalForm out;
  if (divisors.empty()) {
    out.remainder = p;
    return out;
  }
  const MonomialOrder& order = divisors.front().order();
  std::vector<const Polynomial*> all = pointers(divisors);
  all.push_back(&p);
  for (const auto* d : all) d->check_compatible(p);
  Compaction cmp = Compaction::of(all, p.vars());
  MonomialOrder corder = cmp.compact_order(order);
  std::vector<Polynomial> down;
  for (const auto& d : divisors) down.push_back(cmp.down(d, corder));
  detail::DivisorSet divs;
  for (const auto& d : down) {
    if (d.is_zero()) throw StructuralError("normal_form: zero divisor");
    divs.push(&d);
  }
  detail::Reduction r = detail::reduce(cmp.down(p, corder), divs, true);
  out.remainder = cmp.up(r.remainder, order);
  for (const auto& q : r.quotients) out.cofactors.push_back(cmp.up(q, order));
  return out;
}

NormalForm normal_form(const Polynomial& p, const GroebnerBasis& basis) {
  if (basis.elements.empty()) {
    return NormalForm{p.with_order(basis.order), {}};
  }
  return normal_form(p, basis.elements);
}

}  // namespace curvelim
