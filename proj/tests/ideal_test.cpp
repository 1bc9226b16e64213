#include <gtest/gtest.h>

#include "curvelim/exactpoly/errors.hpp"
#include "curvelim/exactpoly/parse.hpp"
#include "curvelim/ideal/membership.hpp"

using namespace curvelim;

namespace {

Polynomial P(const std::string& s, const VarTablePtr& t,
             const MonomialOrder& o = MonomialOrder::grevlex()) {
  return parse_polynomial(s, t).with_order(o);
}

GeneratorSet set_of(const std::vector<Polynomial>& ps) {
  GeneratorSet g;
  for (std::size_t i = 0; i < ps.size(); ++i) g.add("g" + std::to_string(i + 1), ps[i]);
  return g;
}

bool contains(const GeneratorSet& gens, const Polynomial& p) {
  return membership(p, gens).has_value();
}

}  // namespace

TEST(Groebner, LexLinearChain) {
  auto t = VarTable::make({"y", "x"});
  auto lex = MonomialOrder::lex();
  auto gb = groebner({P("x - 1", t, lex), P("y - x", t, lex)}, lex);
  ASSERT_EQ(gb.elements.size(), 2u);
  EXPECT_EQ(gb.elements[0], P("y - 1", t, lex));
  EXPECT_EQ(gb.elements[1], P("x - 1", t, lex));
}

TEST(Groebner, PrincipalIdealIsPrimitivePart) {
  auto t = VarTable::make({"x", "y"});
  auto gb = groebner({P("-6*x^2 + 4*y/3", t)}, MonomialOrder::grevlex());
  ASSERT_EQ(gb.elements.size(), 1u);
  EXPECT_EQ(gb.elements[0], P("9*x^2 - 2*y", t));
}

TEST(Groebner, UnitIdeal) {
  auto t = VarTable::make({"x"});
  auto gb = groebner({P("x", t), P("x + 1", t)}, MonomialOrder::grevlex(), {}, true);
  EXPECT_TRUE(gb.is_unit());
  EXPECT_EQ(gb.elements[0], P("1", t));
  Polynomial combo = gb.provenance[0][0] * gb.inputs[0] + gb.provenance[0][1] * gb.inputs[1];
  EXPECT_EQ(combo, gb.elements[0]);
}

TEST(Groebner, ResourceCeilingNamesStage) {
  auto t = VarTable::make({"x", "y", "z"});
  GroebnerLimits lim;
  lim.max_pairs = 1;
  lim.stage = "lemma32";
  std::vector<Polynomial> g{P("x^2*y - z", t), P("x*y^2 - x", t), P("z^2 - y*x", t)};
  try {
    groebner(g, MonomialOrder::grevlex(), lim);
    FAIL() << "expected ResourceError";
  } catch (const ResourceError& e) {
    EXPECT_EQ(e.stage(), "lemma32");
  }
}

TEST(Groebner, EmptyInputRejected) {
  EXPECT_THROW(groebner(std::vector<Polynomial>{}, MonomialOrder::grevlex()), StructuralError);
}

TEST(NormalForm, GeneratorReducesToZero) {
  auto t = VarTable::make({"x", "y"});
  Polynomial g = P("x^2 - y", t);
  auto gb = groebner({g, P("x*y - 1", t)}, MonomialOrder::grevlex());
  EXPECT_TRUE(normal_form(g, gb).remainder.is_zero());
}

TEST(NormalForm, DivisionByLinear) {
  auto t = VarTable::make({"x"});
  auto nf = normal_form(P("x^2", t), std::vector<Polynomial>{P("x - 1", t)});
  EXPECT_EQ(nf.remainder, P("1", t));
  ASSERT_EQ(nf.cofactors.size(), 1u);
  EXPECT_EQ(nf.cofactors[0], P("x + 1", t));
}

TEST(NormalForm, NoLeadingTermDivision) {
  auto t = VarTable::make({"x", "y"});
  auto nf = normal_form(P("y", t), std::vector<Polynomial>{P("x", t)});
  EXPECT_EQ(nf.remainder, P("y", t));
  for (const auto& c : nf.cofactors) EXPECT_TRUE(c.is_zero());
}

TEST(Membership, ZeroIsAlwaysMember) {
  auto t = VarTable::make({"x", "y"});
  auto cert = membership(Polynomial(t), set_of({P("x^2 + y", t)}));
  ASSERT_TRUE(cert);
  EXPECT_TRUE(cert->terms.empty());
  EXPECT_EQ(cert->power, 0u);
}

TEST(Membership, DistinctVariablesNotMember) {
  auto t = VarTable::make({"x", "y"});
  EXPECT_FALSE(membership(P("x", t), set_of({P("y", t)})));
}

TEST(Membership, CertificateIdentityHolds) {
  auto t = VarTable::make({"x", "y", "z"});
  auto gens = set_of({P("x*y - z", t), P("y^2 - x", t), P("z - x + 1", t)});
  Polynomial target = P("(x*y - z)*(x + 3*z) + (y^2 - x)*y^3 - 7*(z - x + 1)", t);
  auto cert = membership(target, gens, {}, {}, "tgt");
  ASSERT_TRUE(cert);
  EXPECT_TRUE(cert->holds(gens));
  EXPECT_EQ(cert->target_id, "tgt");
  EXPECT_EQ(cert->digest().size(), 64u);
}

TEST(Membership, PresolveOffGivesSameAnswer) {
  auto t = VarTable::make({"a", "b", "c"});
  auto gens = set_of({P("a - b^2", t), P("b*c - 1", t)});
  Polynomial target = P("a*c^2 - 1", t);
  MembershipOptions opt;
  opt.presolve = false;
  auto off = membership(target, gens, {}, opt);
  auto on = membership(target, gens);
  ASSERT_TRUE(off && on);
  EXPECT_TRUE(off->holds(gens));
  EXPECT_TRUE(on->holds(gens));
}

TEST(Membership, SaturationPowerIsMinimal) {
  auto t = VarTable::make({"x", "y"});
  auto gens = set_of({P("x^2*y", t)});
  std::vector<SaturationRecord> sat{{P("x", t), "x nonzero"}};
  auto cert = membership(P("y", t), gens, sat);
  ASSERT_TRUE(cert);
  EXPECT_EQ(cert->power, 2u);
  EXPECT_TRUE(cert->holds(gens));
  MembershipOptions opt;
  opt.max_power = 1;
  EXPECT_FALSE(membership(P("y", t), gens, sat, opt));
}

TEST(Membership, MultiplierVanishingOnLinearHypothesesIsDomainError) {
  auto t = VarTable::make({"x", "y"});
  auto gens = set_of({P("x - y", t)});
  std::vector<SaturationRecord> sat{{P("x - y", t), "distinct"}};
  EXPECT_THROW(membership(P("x", t), gens, sat), DomainError);
}

TEST(Membership, DistinctCurvatureCancellation) {
  auto t = VarTable::make({"lam2", "lam3", "lam4", "u3", "u4"});
  auto gens = set_of({P("3*(lam2 - lam3)*(lam2 - lam4)*(u3 - u4)", t)});
  std::vector<SaturationRecord> sat{{P("lam2 - lam3", t), "distinct"},
                                    {P("lam2 - lam4", t), "distinct"}};
  auto cert = membership(P("u3 - u4", t), gens, sat);
  ASSERT_TRUE(cert);
  EXPECT_EQ(cert->power, 1u);
  EXPECT_TRUE(cert->holds(gens));
}

TEST(Eliminate, ParametrizedParabola) {
  auto t = VarTable::make({"t", "x", "y"});
  auto gens = set_of({P("x - t", t), P("y - t^2", t)});
  auto out = eliminate(gens, {"t"});
  EXPECT_TRUE(contains(out.generators, P("y - x^2", t)));
  for (const auto& r : out.generators.relations()) EXPECT_FALSE(r.poly.uses(0));
  ASSERT_EQ(out.certificates.size(), out.generators.size());
  for (const auto& c : out.certificates) EXPECT_TRUE(c.holds(gens));
}

TEST(Eliminate, AbsentVariable) {
  auto t = VarTable::make({"x", "y"});
  auto out = eliminate(set_of({P("x", t)}), {"y"});
  ASSERT_EQ(out.generators.size(), 1u);
  EXPECT_EQ(out.generators.relations()[0].poly, P("x", t));
}

TEST(Eliminate, UnknownVariableRejected) {
  auto t = VarTable::make({"x"});
  EXPECT_THROW(eliminate(set_of({P("x", t)}), {"q"}), StructuralError);
}

TEST(Saturate, CancelsPlantedFactor) {
  auto t = VarTable::make({"x", "y"});
  auto gens = set_of({P("x*y", t)});
  auto out = saturate(gens, P("x", t));
  EXPECT_TRUE(contains(out.generators, P("y", t)));
  for (const auto& c : out.certificates) {
    EXPECT_TRUE(c.holds(gens));
    ASSERT_TRUE(c.multiplier);
  }
}

TEST(Saturate, CoprimeMultiplier) {
  auto t = VarTable::make({"x", "y"});
  auto out = saturate(set_of({P("x", t)}), P("y", t));
  ASSERT_EQ(out.generators.size(), 1u);
  EXPECT_EQ(out.generators.relations()[0].poly, P("x", t));
}

TEST(Saturate, DistinctCurvatures) {
  auto t = VarTable::make({"lam2", "lam3", "lam4", "u3", "u4"});
  auto gens = set_of({P("3*(lam2 - lam3)*(lam2 - lam4)*(u3 - u4)", t)});
  auto out = saturate(gens, P("(lam2 - lam3)*(lam2 - lam4)", t));
  EXPECT_TRUE(contains(out.generators, P("u3 - u4", t)));
  for (const auto& c : out.certificates) EXPECT_TRUE(c.holds(gens));
}

TEST(Saturate, ZeroMultiplierRejected) {
  auto t = VarTable::make({"x"});
  EXPECT_THROW(saturate(set_of({P("x", t)}), Polynomial(t)), StructuralError);
}
