#include <gtest/gtest.h>

#include <random>

#include "../support.hpp"
#include "mtower/algebra/linear.hpp"
#include "mtower/algebra/polynomial.hpp"
#include "mtower/algebra/rational_function.hpp"
#include "mtower/errors.hpp"

using namespace mtower;
using namespace mtower::algebra;

namespace {

RingPtr plain_ring() { return RingBuilder().coordinate("x").coordinate("y").coordinate("z").parameter("b").build(); }

Polynomial random_poly(const RingPtr& ring, std::mt19937& rng, unsigned terms = 4, unsigned max_exp = 2) {
  std::uniform_int_distribution<int> coef(-5, 5), ex(0, static_cast<int>(max_exp));
  Polynomial p(ring);
  for (unsigned i = 0; i < terms; ++i) {
    Polynomial t(ring, Scalar(coef(rng), 1 + (i % 3)));
    for (std::size_t v = 0; v < ring->size(); ++v) t *= Polynomial::variable(ring, v, ex(rng));
    p += t;
  }
  return p;
}

}  // namespace

TEST(Scalar, ParsesFractionsAndRejectsZeroDenominator) {
  EXPECT_EQ(parse_scalar("-3/6"), Scalar(-1, 2));
  EXPECT_EQ(to_string(Scalar(7, 3)), "7/3");
  EXPECT_THROW(parse_scalar("1/0"), DomainError);
  EXPECT_THROW(parse_scalar("abc"), DomainError);
}

TEST(Polynomial, CanonicalPrinting) {
  auto r = plain_ring();
  EXPECT_EQ(parse_polynomial(r, "y*x + x*y - 2*x^2").to_string(), "-2*x^2 + 2*x*y");
  EXPECT_EQ(parse_polynomial(r, "(x+1)^2 - x^2").to_string(), "2*x + 1");
  EXPECT_EQ(parse_polynomial(r, "x/2 - 1/3").to_string(), "1/2*x - 1/3");
  EXPECT_EQ(parse_polynomial(r, "0").to_string(), "0");
}

TEST(Polynomial, ParseErrors) {
  auto r = plain_ring();
  EXPECT_THROW(parse_polynomial(r, "x + w"), DomainError);
  EXPECT_THROW(parse_polynomial(r, "x/y"), DomainError);
  EXPECT_THROW(parse_polynomial(r, "(x + 1"), DomainError);
  EXPECT_THROW(parse_polynomial(r, "x^"), DomainError);
}

TEST(Polynomial, RoundTripThroughText) {
  auto r = plain_ring();
  std::mt19937 rng(7);
  for (int i = 0; i < 50; ++i) {
    auto p = random_poly(r, rng);
    EXPECT_EQ(parse_polynomial(r, p.to_string()), p);
  }
}

TEST(Polynomial, RingAxiomsOnRandomInputs) {
  auto r = plain_ring();
  std::mt19937 rng(11);
  for (int i = 0; i < 30; ++i) {
    auto p = random_poly(r, rng), q = random_poly(r, rng), s = random_poly(r, rng);
    EXPECT_EQ(p * (q + s), p * q + p * s);
    EXPECT_EQ(p * q, q * p);
    EXPECT_EQ((p * q) * s, p * (q * s));
    EXPECT_TRUE((p - p).is_zero());
  }
}

TEST(Polynomial, LeibnizRule) {
  auto r = plain_ring();
  std::mt19937 rng(3);
  for (int i = 0; i < 30; ++i) {
    auto p = random_poly(r, rng), q = random_poly(r, rng);
    for (std::size_t v = 0; v < r->size(); ++v) {
      EXPECT_EQ((p * q).diff(v), p.diff(v) * q + p * q.diff(v));
    }
  }
}

TEST(Polynomial, EvaluateIsARingMorphism) {
  auto r = plain_ring();
  std::mt19937 rng(5);
  Assignment pt{{"x", Scalar(2, 3)}, {"y", Scalar(-1)}, {"z", Scalar(5)}, {"b", Scalar(1, 7)}};
  for (int i = 0; i < 20; ++i) {
    auto p = random_poly(r, rng), q = random_poly(r, rng);
    EXPECT_EQ((p * q).evaluate(pt), p.evaluate(pt) * q.evaluate(pt));
    EXPECT_EQ((p + q).evaluate(pt), p.evaluate(pt) + q.evaluate(pt));
  }
}

TEST(Polynomial, Gcd) {
  auto r = plain_ring();
  auto P = [&](const char* s) { return parse_polynomial(r, s); };
  EXPECT_EQ(gcd(P("(x+y)^3*(x-2*y+b)"), P("(x+y)^2*(x*y+1)*(x-2*y+b)")), P("(x+y)^2*(x-2*y+b)"));
  EXPECT_EQ(gcd(P("x^2-1"), P("x^2+2*x+1")), P("x+1"));
  EXPECT_EQ(gcd(P("2*x*y^2"), P("4*x^2*y")), P("x*y"));
  EXPECT_EQ(gcd(P("x+1"), P("y+1")), P("1"));
}

TEST(Polynomial, GcdDividesBothOperands) {
  auto r = plain_ring();
  std::mt19937 rng(17);
  for (int i = 0; i < 20; ++i) {
    auto common = random_poly(r, rng, 2, 1);
    auto p = random_poly(r, rng, 3, 1) * common, q = random_poly(r, rng, 3, 1) * common;
    if (p.is_zero() || q.is_zero()) continue;
    auto g = gcd(p, q);
    EXPECT_TRUE(divide_exact(p, g).has_value());
    EXPECT_TRUE(divide_exact(q, g).has_value());
    if (!common.is_constant()) EXPECT_TRUE(divide_exact(g, common.primitive_part()).has_value());
  }
}

TEST(Polynomial, JetTotalDerivative) {
  auto r = RingBuilder().coordinate("x").coordinate("y").jets({"A"}, {"x", "y"}, 2).build();
  auto p = parse_polynomial(r, "A*A_x - 1/2*x^2");
  EXPECT_EQ(p.total_diff(r->index("x")).to_string(), "A*A_xx + A_x^2 - x");
  EXPECT_THROW(parse_polynomial(r, "A_xy").total_diff(r->index("x")), TruncationError);
}

TEST(RationalFunction, ReducesAndCancels) {
  auto r = plain_ring();
  auto P = [&](const char* s) { return parse_polynomial(r, s); };
  RationalFunction f(P("x^2-y^2"), P("2*x+2*y"));
  EXPECT_TRUE(f.is_polynomial());
  EXPECT_EQ(f.num(), P("1/2*x - 1/2*y"));
  RationalFunction g(P("1"), P("x"));
  EXPECT_EQ(g + g, RationalFunction(P("2"), P("x")));
  EXPECT_TRUE((g * RationalFunction(P("x"))).is_constant());
  EXPECT_THROW(RationalFunction(P("1"), P("0")), DomainError);
}

TEST(RationalFunction, QuotientRule) {
  auto r = plain_ring();
  auto P = [&](const char* s) { return parse_polynomial(r, s); };
  RationalFunction f(P("x*y+1"), P("x-b"));
  auto x = r->index("x");
  RationalFunction expected(P("y*(x-b) - (x*y+1)"), P("(x-b)^2"));
  EXPECT_EQ(f.diff(x), expected);
}

TEST(Linear, KernelIdentity) {
  auto r = plain_ring();
  auto P = [&](const char* s) { return RationalFunction(parse_polynomial(r, s)); };
  RFMatrix m{{P("x"), P("y"), P("b")}, {P("y"), P("x"), P("1")}};
  auto ker = rf_kernel(m, 3, r);
  ASSERT_EQ(ker.size(), 1u);
  for (const auto& row : m) {
    Polynomial s(r);
    for (std::size_t j = 0; j < 3; ++j) s += row[j].num() * ker[0][j];
    EXPECT_TRUE(s.is_zero());
  }
}

TEST(Linear, KernelOfRandomMatrices) {
  auto r = plain_ring();
  std::mt19937 rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    RFMatrix m(2, RFVector(4, RationalFunction(Polynomial(r))));
    for (auto& row : m)
      for (auto& e : row) e = RationalFunction(random_poly(r, rng, 2, 1));
    auto ker = rf_kernel(m, 4, r);
    EXPECT_EQ(ker.size() + rf_rank(m, 4, r), 4u);
    for (const auto& k : ker)
      for (const auto& row : m) {
        Polynomial s(r);
        for (std::size_t j = 0; j < 4; ++j) s += row[j].num() * k[j];
        EXPECT_TRUE(s.is_zero());
      }
  }
}

TEST(Linear, RankInvariantUnderRowOperations) {
  auto r = plain_ring();
  std::mt19937 rng(29);
  for (int trial = 0; trial < 10; ++trial) {
    RFMatrix m(3, RFVector(3, RationalFunction(Polynomial(r))));
    for (auto& row : m)
      for (auto& e : row) e = RationalFunction(random_poly(r, rng, 2, 1));
    auto before = rf_rank(m, 3, r);
    RationalFunction f(random_poly(r, rng, 2, 1));
    for (std::size_t j = 0; j < 3; ++j) m[2][j] = m[2][j] + f * m[0][j];
    EXPECT_EQ(rf_rank(m, 3, r), before);
  }
}

TEST(Linear, FractionFreeMembership) {
  auto r = plain_ring();
  auto P = [&](const char* s) { return parse_polynomial(r, s); };
  FractionFreeBasis basis(3, r);
  EXPECT_TRUE(basis.insert(PolyVector{P("x"), P("y"), P("0")}));
  EXPECT_TRUE(basis.insert(PolyVector{P("0"), P("1"), P("b")}));
  EXPECT_FALSE(basis.insert(PolyVector{P("x"), P("y+1"), P("b")}));
  EXPECT_TRUE(basis.contains(PolyVector{P("x^2"), P("x*y + z"), P("z*b")}));
  EXPECT_FALSE(basis.contains(PolyVector{P("0"), P("0"), P("1")}));
  EXPECT_EQ(basis.rank(), 2u);
}

TEST(Linear, RationalRank) {
  EXPECT_EQ(rational_rank({{1, 2, 3}, {2, 4, 6}, {0, 1, 1}}), 2u);
  EXPECT_EQ(rational_rank({{0, 0}, {0, 0}}), 0u);
}
