#include <gtest/gtest.h>

#include <random>

#include "curvelim/exactpoly/algebra.hpp"
#include "curvelim/exactpoly/kernels.hpp"
#include "curvelim/exactpoly/parse.hpp"
#include "curvelim/exactpoly/resultant.hpp"
#include "support/property_suites.hpp"
#include "support/random_poly.hpp"

using namespace curvelim;
using curvelim::testing::random_poly;
using curvelim::testing::RandomPolySpec;

TEST(Property, RingAxioms) {
  auto r = curvelim::testing::ring_axiom_suite(1000, 1);
  EXPECT_EQ(r.failures, 0u) << r.first_failure;
  EXPECT_GE(r.cases, 1000u);
}

TEST(Property, ResultantCommonFactor) {
  auto r = curvelim::testing::resultant_common_factor_suite(200, 2);
  EXPECT_EQ(r.failures, 0u) << r.first_failure;
  EXPECT_GE(r.cases, 200u);
}

TEST(Property, EvaluateIsHomomorphism) {
  std::mt19937_64 rng(3);
  auto t = VarTable::make({"a", "b", "c"});
  RandomPolySpec spec{6, 4, 20, true};
  std::uniform_int_distribution<long> v(-50, 50);
  const Integer prime("18446744073709551557");
  for (int i = 0; i < 200; ++i) {
    Polynomial p = random_poly(rng, t, spec);
    Polynomial q = random_poly(rng, t, spec);
    std::map<std::string, Scalar> pt{{"a", v(rng)}, {"b", Scalar(v(rng), 7)}, {"c", v(rng)}};
    EXPECT_EQ(evaluate(p * q, pt), evaluate(p, pt) * evaluate(q, pt));
    EXPECT_EQ(evaluate(p + q, pt), evaluate(p, pt) + evaluate(q, pt));
    Integer lhs = evaluate_mod(p * q, pt, prime);
    Integer rhs = (evaluate_mod(p, pt, prime) * evaluate_mod(q, pt, prime)) % prime;
    EXPECT_EQ(lhs, rhs);
  }
}

TEST(Property, PartialLeibniz) {
  std::mt19937_64 rng(4);
  auto t = VarTable::make({"a", "b", "c"});
  RandomPolySpec spec{6, 4, 20, true};
  for (int i = 0; i < 200; ++i) {
    Polynomial p = random_poly(rng, t, spec);
    Polynomial q = random_poly(rng, t, spec);
    for (std::size_t v = 0; v < 3; ++v) {
      EXPECT_EQ(partial(p * q, v), partial(p, v) * q + p * partial(q, v));
      EXPECT_EQ(partial(p + q, v), partial(p, v) + partial(q, v));
    }
  }
}

TEST(Property, ResultantSwapSign) {
  std::mt19937_64 rng(5);
  auto t = VarTable::make({"x", "a", "b"});
  RandomPolySpec coeffs{3, 2, 9, false};
  std::uniform_int_distribution<unsigned> deg(1, 4);
  for (int i = 0; i < 100; ++i) {
    unsigned m = deg(rng), n = deg(rng);
    Polynomial p = curvelim::testing::random_univariate_dense(rng, t, 0, m, coeffs);
    Polynomial q = curvelim::testing::random_univariate_dense(rng, t, 0, n, coeffs);
    Polynomial rpq = resultant(p, q, 0);
    Polynomial rqp = resultant(q, p, 0);
    EXPECT_EQ(rpq, ((m * n) % 2 == 0) ? rqp : -rqp);
  }
}

TEST(Property, ResultantAgainstLinearRootFormula) {
  // Res(p, x - r) = (-1)^deg(p) * p(r): independent of the Sylvester code.
  std::mt19937_64 rng(6);
  auto t = VarTable::make({"x", "a"});
  RandomPolySpec coeffs{3, 2, 9, false};
  std::uniform_int_distribution<unsigned> deg(1, 5);
  std::uniform_int_distribution<long> root(-9, 9);
  for (int i = 0; i < 100; ++i) {
    unsigned m = deg(rng);
    Polynomial p = curvelim::testing::random_univariate_dense(rng, t, 0, m, coeffs);
    long r = root(rng);
    Polynomial q = parse_polynomial("x - (" + std::to_string(r) + ")", t);
    Polynomial expected = substitute(p, 0, Polynomial::constant(t, Scalar(r)));
    if (m % 2 == 1) expected = -expected;
    EXPECT_EQ(resultant(p, q, 0), expected);
  }
}

TEST(Property, BareissMatchesLaplace) {
  std::mt19937_64 rng(7);
  auto t = VarTable::make({"a", "b"});
  RandomPolySpec spec{3, 2, 5, true};
  std::uniform_int_distribution<std::size_t> dim(1, 5);
  for (int i = 0; i < 60; ++i) {
    std::size_t n = dim(rng);
    PolyMatrix m(n, std::vector<Polynomial>(n, Polynomial(t)));
    for (auto& row : m) {
      for (auto& e : row) e = random_poly(rng, t, spec);
    }
    Polynomial ref = determinant_laplace(m);
    EXPECT_EQ(determinant_bareiss(m), ref);
    EXPECT_EQ(determinant_bareiss_parallel(m), ref);
  }
}

TEST(Property, SubresultantMatchesSylvester) {
  std::mt19937_64 rng(8);
  auto t = VarTable::make({"K", "H", "c"});
  RandomPolySpec coeffs{3, 2, 9, false};
  std::uniform_int_distribution<unsigned> deg(1, 4);
  for (int i = 0; i < 80; ++i) {
    Polynomial p = curvelim::testing::random_univariate_dense(rng, t, 0, deg(rng), coeffs);
    Polynomial q = curvelim::testing::random_univariate_dense(rng, t, 0, deg(rng), coeffs);
    EXPECT_EQ(subresultant_chain(p, q, 0).last, resultant(p, q, 0));
  }
}

TEST(Property, ParallelMulMatchesSerial) {
  std::mt19937_64 rng(9);
  auto t = VarTable::make({"a", "b", "c", "d"});
  RandomPolySpec spec{60, 6, 1000, true};
  for (int i = 0; i < 20; ++i) {
    Polynomial p = random_poly(rng, t, spec);
    Polynomial q = random_poly(rng, t, spec);
    EXPECT_EQ(kernels::mul_parallel(p, q), kernels::mul_serial(p, q));
  }
}

TEST(Property, ParsePrintRoundTrip) {
  std::mt19937_64 rng(10);
  auto t = VarTable::make({"H", "K", "c", "R"});
  RandomPolySpec spec{8, 6, 100000, true};
  for (int i = 0; i < 300; ++i) {
    Polynomial p = random_poly(rng, t, spec);
    std::string once = to_string(p);
    Polynomial back = parse_polynomial(once, t);
    EXPECT_EQ(back, p) << once;
    EXPECT_EQ(to_string(back), once);
  }
}

TEST(Property, GcdDividesBoth) {
  std::mt19937_64 rng(11);
  auto t = VarTable::make({"x", "y", "z"});
  RandomPolySpec spec{3, 2, 5, false};
  for (int i = 0; i < 60; ++i) {
    Polynomial f = random_poly(rng, t, spec);
    Polynomial a = random_poly(rng, t, spec) * f;
    Polynomial b = random_poly(rng, t, spec) * f;
    if (a.is_zero() || b.is_zero()) continue;
    Polynomial g = gcd(a, b);
    EXPECT_TRUE(divide_exact(a, g).has_value());
    EXPECT_TRUE(divide_exact(b, g).has_value());
    if (!f.is_zero()) {
      EXPECT_TRUE(divide_exact(g, primitive_part(f)).has_value());
    }
  }
}
