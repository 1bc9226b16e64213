#include <gtest/gtest.h>

#include "curvelim/exactpoly/algebra.hpp"
#include "curvelim/exactpoly/errors.hpp"
#include "curvelim/exactpoly/parse.hpp"
#include "curvelim/exactpoly/polynomial.hpp"
#include "curvelim/exactpoly/resultant.hpp"

using namespace curvelim;

namespace {

VarTablePtr xyz() { return VarTable::make({"x", "y", "z"}); }

Polynomial P(const std::string& s, const VarTablePtr& t) { return parse_polynomial(s, t); }

}  // namespace

TEST(Scalar, CanonicalForm) {
  Scalar q(6, -4);
  q.canonicalize();
  EXPECT_EQ(q.get_num(), -3);
  EXPECT_EQ(q.get_den(), 2);
  Scalar z(0, 7);
  z.canonicalize();
  EXPECT_EQ(z.get_den(), 1);
}

TEST(VarTable, RejectsDuplicatesAndBadNames) {
  EXPECT_THROW(VarTable({"x", "x"}), StructuralError);
  EXPECT_THROW(VarTable({"1x"}), StructuralError);
  auto t = xyz();
  EXPECT_EQ(t->require("y"), 1u);
  EXPECT_THROW(t->require("w"), StructuralError);
}

TEST(Arith, WorkedExamples) {
  auto t = xyz();
  EXPECT_TRUE((P("x", t) + P("-x", t)).is_zero());
  EXPECT_EQ(P("x+1", t) * P("x-1", t), P("x^2-1", t));
  auto h = VarTable::make({"H"});
  Polynomial p = pow(Polynomial::variable(h, "H"), 10);
  ASSERT_EQ(p.size(), 1u);
  EXPECT_EQ(p.coeff(0), 1);
  EXPECT_EQ(p.exps(0)[0], 10);
}

TEST(Arith, VarTableMismatchIsStructural) {
  auto a = VarTable::make({"x"});
  auto b = VarTable::make({"y"});
  EXPECT_THROW(Polynomial::variable(a, "x") + Polynomial::variable(b, "y"), StructuralError);
  // Tables with identical name lists are interchangeable.
  auto a2 = VarTable::make({"x"});
  EXPECT_NO_THROW(Polynomial::variable(a, "x") + Polynomial::variable(a2, "x"));
}

TEST(Substitute, WorkedExamples) {
  auto t = VarTable::make({"H", "c", "lam1", "lam2"});
  EXPECT_EQ(substitute(P("lam1*lam2 + c", t), "lam1", P("-2*H", t)), P("-2*H*lam2 + c", t));
  auto u = xyz();
  EXPECT_EQ(substitute(P("x^2", u), "x", P("x", u)), P("x^2", u));
  EXPECT_EQ(substitute(P("x+y", u), "x", Polynomial(u)), P("y", u));
  EXPECT_THROW(substitute(P("x", u), "w", P("y", u)), StructuralError);
}

TEST(Substitute, SimultaneousIsNotSequential) {
  auto t = xyz();
  std::map<std::size_t, Polynomial> swap;
  swap.emplace(0, P("y", t));
  swap.emplace(1, P("x", t));
  EXPECT_EQ(substitute_all(P("x^2*y + 3*x", t), swap), P("y^2*x + 3*y", t));
}

TEST(Evaluate, WorkedExamples) {
  auto t = xyz();
  EXPECT_EQ(evaluate(P("x^2+y", t), {{"x", 2}, {"y", 3}}), 7);
  EXPECT_EQ(evaluate_mod(P("x+1", t), {{"x", 6}}, Integer(7)), 0);
  EXPECT_THROW(evaluate(P("x+y", t), {{"x", 1}}), StructuralError);
}

TEST(Evaluate, RationalPoint) {
  auto t = xyz();
  Scalar half(1, 2);
  EXPECT_EQ(evaluate(P("4*x^3 - x", t), {{"x", half}}), 0);
  EXPECT_EQ(evaluate_mod(P("2*x - 1", t), {{"x", half}}, Integer(1000003)), 0);
}

TEST(Partial, WorkedExamples) {
  auto t = VarTable::make({"H", "K", "c"});
  EXPECT_EQ(partial(P("8640*H*K^3", t), "K"), P("25920*H*K^2", t));
  EXPECT_TRUE(partial(P("c", t), "H").is_zero());
  EXPECT_EQ(partial(P("H^2", t), "H"), P("2*H", t));
}

TEST(Content, WorkedExamples) {
  auto t = xyz();
  ContentSplit s = gcd_content(P("6*x+9", t));
  EXPECT_EQ(s.content, 3);
  EXPECT_EQ(s.primitive, P("2*x+3", t));
  ContentSplit r = gcd_content(P("1/2*x - 3/4", t));
  EXPECT_EQ(r.content, Scalar(1, 4));
  EXPECT_EQ(r.primitive, P("2*x - 3", t));
  EXPECT_EQ(gcd_content(P("-4*x", t)).primitive, P("x", t));
}

TEST(Gcd, WorkedExamples) {
  auto t = xyz();
  EXPECT_EQ(gcd(P("x^2-1", t), P("x-1", t)), P("x-1", t));
  EXPECT_EQ(gcd(P("6*x^2+6*x", t), Polynomial(t)), P("x^2+x", t));
  EXPECT_EQ(gcd(P("(x+y)*(x-z)^2", t), P("(x-z)*(y+2)", t)), P("x-z", t));
  EXPECT_TRUE(gcd(P("x+y", t), P("x-y", t)).is_one());
}

TEST(PseudoDivision, Identity) {
  auto t = xyz();
  Polynomial a = P("y*x^3 + x + z", t);
  Polynomial b = P("(y+1)*x - 2", t);
  PseudoDivision d = pseudo_divide(a, b, 0);
  EXPECT_EQ(d.power, 3u);
  EXPECT_EQ(pow(P("y+1", t), d.power) * a, d.quotient * b + d.remainder);
  EXPECT_EQ(d.remainder.degree(0), 0u);
}

TEST(DivideExact, Basic) {
  auto t = xyz();
  auto q = divide_exact(P("x^2*y - y^3", t), P("x - y", t));
  ASSERT_TRUE(q.has_value());
  EXPECT_EQ(*q, P("x*y + y^2", t));
  EXPECT_FALSE(divide_exact(P("x^2 + 1", t), P("x - 1", t)).has_value());
  auto [rest, k] = divide_out(P("x^3*(y+1)", t), P("x", t));
  EXPECT_EQ(k, 3u);
  EXPECT_EQ(rest, P("y+1", t));
}

TEST(Resultant, WorkedExamples) {
  auto t = VarTable::make({"x", "H", "K"});
  EXPECT_TRUE(resultant(P("x^2-1", t), P("x-1", t), "x").is_zero());
  EXPECT_EQ(resultant(P("K-H", t), P("K+H", t), "K"), P("2*H", t));
  EXPECT_EQ(resultant(P("x^2+1", t), P("x+1", t), "x"), P("2", t));
  EXPECT_THROW(resultant(P("H", t), P("K", t), "K"), DomainError);
}

TEST(Resultant, SylvesterRowConvention) {
  auto t = VarTable::make({"x", "a", "b"});
  PolyMatrix s = sylvester_matrix(P("x^2 + a", t), P("x + b", t), 0);
  ASSERT_EQ(s.size(), 3u);
  // One row of p (degree 2) above two rows of q (degree 1).
  EXPECT_EQ(s[0][0], P("1", t));
  EXPECT_EQ(s[0][2], P("a", t));
  EXPECT_EQ(s[1][0], P("1", t));
  EXPECT_EQ(s[1][1], P("b", t));
  EXPECT_EQ(s[2][2], P("b", t));
}

TEST(Resultant, CofactorsReproduceResultant) {
  auto t = VarTable::make({"x", "a", "b"});
  Polynomial p = P("x^3 + a*x - b", t);
  Polynomial q = P("b*x^2 - x + a", t);
  ResultantCertificate c = resultant_with_cofactors(p, q, 0);
  EXPECT_EQ(c.resultant, resultant(p, q, 0));
  EXPECT_EQ(c.a * p + c.b * q, c.resultant);
  EXPECT_LT(c.a.degree(0), q.degree(0));
  EXPECT_LT(c.b.degree(0), p.degree(0));
}

TEST(Resultant, SubresultantChainAgrees) {
  auto t = VarTable::make({"K", "H", "c"});
  Polynomial p = P("K^3 + H*K^2 - c*K + H^3", t);
  Polynomial q = P("H*K^4 - 2*K^2 + c*H*K - 1", t);
  SubresultantChain chain = subresultant_chain(p, q, 0);
  EXPECT_EQ(chain.last, resultant(p, q, 0));
  EXPECT_EQ(chain.trace.back().degree, 0u);
}

TEST(Parse, SyntaxAndErrors) {
  auto t = xyz();
  EXPECT_EQ(P("-(x+1)^2 + 2*x", t), P("-x^2 - 1", t));
  EXPECT_EQ(P("x/2 + y/4*2", t), P("1/2*x + 1/2*y", t));
  EXPECT_THROW(P("2x", t), ParseError);
  EXPECT_THROW(P("x y", t), ParseError);
  EXPECT_THROW(P("x/y", t), ParseError);
  EXPECT_THROW(P("x^", t), ParseError);
  EXPECT_THROW(P("w + 1", t), ParseError);
  EXPECT_THROW(P("(x", t), ParseError);
  EXPECT_THROW(P("", t), ParseError);
}

TEST(Print, CanonicalGrevlex) {
  auto t = VarTable::make({"H", "K"});
  EXPECT_EQ(to_string(P("8640*H*K^3 - 3 + H^10 - K", t)), "H^10 + 8640*H*K^3 - K - 3");
  EXPECT_EQ(to_string(P("-1/2*H", t)), "-1/2*H");
  EXPECT_EQ(to_string(Polynomial(t)), "0");
}

TEST(Order, LexAndBlock) {
  auto t = VarTable::make({"y", "x", "t"});
  Polynomial p = parse_polynomial("x^3 + y + t^2*x", t, MonomialOrder::lex());
  EXPECT_EQ(to_string(p), "y + x^3 + x*t^2");
  Polynomial q = parse_polynomial("x^3 + y + t", t, MonomialOrder::block({false, false, true}));
  EXPECT_EQ(to_string(q), "t + x^3 + y");
}
