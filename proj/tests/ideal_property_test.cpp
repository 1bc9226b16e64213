#include <gtest/gtest.h>

#include <random>

#include "curvelim/exactpoly/parse.hpp"
#include "curvelim/ideal/membership.hpp"
#include "support/macaulay.hpp"
#include "support/random_poly.hpp"

using namespace curvelim;
using curvelim::testing::random_poly;
using curvelim::testing::RandomPolySpec;

namespace {

Polynomial spoly(const Polynomial& f, const Polynomial& g) {
  const std::size_t n = f.nvars();
  std::vector<Exponent> l(n), a(n), b(n);
  for (std::size_t v = 0; v < n; ++v) {
    l[v] = std::max(f.leading_exps()[v], g.leading_exps()[v]);
    a[v] = static_cast<Exponent>(l[v] - f.leading_exps()[v]);
    b[v] = static_cast<Exponent>(l[v] - g.leading_exps()[v]);
  }
  return f.mul_term(a.data(), 1 / Scalar(f.leading_coeff())) -
         g.mul_term(b.data(), 1 / Scalar(g.leading_coeff()));
}

bool divides(const Exponent* a, const Exponent* b, std::size_t n) {
  for (std::size_t v = 0; v < n; ++v) {
    if (a[v] > b[v]) return false;
  }
  return true;
}

std::vector<Polynomial> random_system(std::mt19937_64& rng, const VarTablePtr& t,
                                      const MonomialOrder& order) {
  std::uniform_int_distribution<int> count(2, 3);
  RandomPolySpec spec{3, 2, 6, false};
  std::vector<Polynomial> out;
  int k = count(rng);
  while (static_cast<int>(out.size()) < k) {
    Polynomial p = random_poly(rng, t, spec);
    if (!p.is_zero()) out.push_back(p.with_order(order));
  }
  return out;
}

}  // namespace

TEST(GroebnerProperty, BasisInvariants) {
  std::mt19937_64 rng(21);
  auto t = VarTable::make({"x", "y", "z"});
  for (const auto& order : {MonomialOrder::grevlex(), MonomialOrder::lex(),
                            MonomialOrder::block({true, false, false})}) {
    for (int i = 0; i < 40; ++i) {
      auto gens = random_system(rng, t, order);
      auto gb = groebner(gens, order, {}, true);
      const auto& el = gb.elements;
      for (std::size_t a = 0; a < el.size(); ++a) {
        EXPECT_GT(sgn(el[a].leading_coeff()), 0);
        for (std::size_t k = 0; k < el[a].size(); ++k) EXPECT_TRUE(is_integer(el[a].coeff(k)));
        for (std::size_t b = 0; b < el.size(); ++b) {
          if (a == b) continue;
          for (std::size_t k = 0; k < el[b].size(); ++k) {
            EXPECT_FALSE(divides(el[a].leading_exps(), el[b].exps(k), 3)) << "not auto-reduced";
          }
          EXPECT_TRUE(normal_form(spoly(el[a], el[b]), gb).remainder.is_zero());
        }
        Polynomial combo(t, order);
        for (std::size_t j = 0; j < gens.size(); ++j) combo += gb.provenance[a][j] * gens[j];
        EXPECT_EQ(combo, el[a]);
      }
      for (const auto& g : gens) EXPECT_TRUE(normal_form(g, gb).remainder.is_zero());
    }
  }
}

TEST(GroebnerProperty, Deterministic) {
  std::mt19937_64 rng(22);
  auto t = VarTable::make({"x", "y", "z", "w"});
  for (int i = 0; i < 30; ++i) {
    auto gens = random_system(rng, t, MonomialOrder::grevlex());
    auto a = groebner(gens, MonomialOrder::grevlex());
    auto b = groebner(gens, MonomialOrder::grevlex());
    std::string sa, sb;
    for (const auto& p : a.elements) sa += to_string(p) + ";";
    for (const auto& p : b.elements) sb += to_string(p) + ";";
    EXPECT_EQ(sa, sb);
  }
}

TEST(GroebnerProperty, NormalFormIdentity) {
  std::mt19937_64 rng(23);
  auto t = VarTable::make({"x", "y", "z"});
  RandomPolySpec spec{6, 4, 9, true};
  for (int i = 0; i < 40; ++i) {
    auto gens = random_system(rng, t, MonomialOrder::grevlex());
    auto gb = groebner(gens, MonomialOrder::grevlex());
    Polynomial p = random_poly(rng, t, spec);
    auto nf = normal_form(p, gb);
    Polynomial sum = nf.remainder;
    for (std::size_t k = 0; k < gb.elements.size(); ++k) sum += nf.cofactors[k] * gb.elements[k];
    EXPECT_EQ(sum, p);
    for (std::size_t k = 0; k < nf.remainder.size(); ++k) {
      for (const auto& e : gb.elements) {
        EXPECT_FALSE(divides(e.leading_exps(), nf.remainder.exps(k), 3));
      }
    }
  }
}

TEST(MembershipProperty, AgreesWithMatrixOracle) {
  auto r = curvelim::testing::membership_oracle_suite(120, 24);
  EXPECT_EQ(r.failures, 0u) << r.first_failure;
  EXPECT_GE(r.cases, 100u);
}

TEST(EliminateProperty, SoundOnPlantedParametrizations) {
  std::mt19937_64 rng(25);
  auto t = VarTable::make({"s", "t", "x", "y", "z"});
  RandomPolySpec spec{3, 2, 5, false};
  for (int i = 0; i < 25; ++i) {
    // x, y, z given as polynomials in s, t.
    auto pt = VarTable::make({"s", "t"});
    std::map<std::size_t, Polynomial> param;
    GeneratorSet gens;
    for (std::size_t v = 2; v < 5; ++v) {
      Polynomial f = random_poly(rng, pt, spec).in_table(t);
      if (i % 2 == 0 && v == 4) f = Polynomial(t);
      param.emplace(v, f);
      gens.add(t->name(v), Polynomial::variable(t, v) - f);
    }
    auto out = eliminate(gens, {"s", "t"});
    for (const auto& rel : out.generators.relations()) {
      EXPECT_FALSE(rel.poly.uses(0) || rel.poly.uses(1));
      EXPECT_TRUE(substitute_all(rel.poly, param).is_zero()) << to_string(rel.poly);
    }
    for (const auto& c : out.certificates) EXPECT_TRUE(c.holds(gens));
  }
}

TEST(SaturateProperty, PlantedFactorsCancel) {
  std::mt19937_64 rng(26);
  auto t = VarTable::make({"x", "y", "z"});
  RandomPolySpec spec{3, 2, 5, false};
  for (int i = 0; i < 25; ++i) {
    Polynomial core = random_poly(rng, t, spec);
    Polynomial m = random_poly(rng, t, spec);
    if (core.is_zero() || m.is_zero() || m.is_constant()) continue;
    GeneratorSet gens;
    gens.add("g", m * m * core);
    auto out = saturate(gens, m);
    for (const auto& c : out.certificates) EXPECT_TRUE(c.holds(gens));
    EXPECT_TRUE(membership(core, out.generators).has_value()) << to_string(core);
  }
}
