#include <gtest/gtest.h>

#include "crpencil/parse.hpp"
#include "test_support.hpp"

namespace crpencil {
namespace {

using testing::random_homogeneous;
using testing::random_point;
using testing::random_poly;

MultiPoly P(const std::string& s, int nvars = 4, int order = 1) { return parse_poly(s, nvars, order); }

TEST(ParsePoly, FermatCubic) {
  MultiPoly f = parse_poly("x0^3 + x1^3 + x2^3", 3, 1);
  EXPECT_EQ(f.size(), 3u);
  EXPECT_TRUE(f.is_homogeneous());
  EXPECT_EQ(f.degree(), 3);
  EXPECT_EQ(f.coeff(Monomial(3, {0, 3, 0})), embed(1, 1));
}

TEST(ParsePoly, Expansion) { EXPECT_EQ(P("(x0 - x1)*(x0 + x1)", 2), P("x0^2 - x1^2", 2)); }

TEST(ParsePoly, RootOfUnity) {
  MultiPoly h = parse_poly("x0 - z*x1", 2, 3);
  EXPECT_EQ(h.coeff(Monomial(2, {1, 0})), embed(1, 3));
  EXPECT_EQ(h.coeff(Monomial(2, {0, 1})), -CycloElem::zeta(3));
  // z collapses to -1 in Q(zeta_2)
  EXPECT_EQ(parse_poly("x0 - z*x1", 2, 2), parse_poly("x0 + x1", 2, 2));
}

TEST(ParsePoly, CustomVariableNames) {
  MultiPoly p = parse_poly("x*y - 2*w", {"x", "y", "w"}, 1);
  EXPECT_EQ(p, parse_poly("x0*x1 - 2*x2", 3, 1));
}

TEST(ParsePoly, Errors) {
  try {
    P("x0 + * x1");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 5u);
  }
  try {
    P("x0 + y7");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 5u);
    EXPECT_NE(std::string(e.what()).find("unknown variable"), std::string::npos);
  }
  EXPECT_THROW(P("x0^99999999999"), ParseError);
  EXPECT_THROW(P("(x0 + x1"), ParseError);
  EXPECT_THROW(P("x0 / x1"), ParseError);
  EXPECT_THROW(P("x0 / 0"), ParseError);
  EXPECT_THROW(P("x0^"), ParseError);
  EXPECT_THROW(P(""), ParseError);
}

TEST(ParsePoly, RationalDivision) { EXPECT_EQ(P("x0/2 + 3*x1/4", 2), embed(Rational(1, 4), 1) * P("2*x0 + 3*x1", 2)); }

TEST(ParsePoly, PrintParseRoundTrip) {
  std::mt19937_64 rng(3);
  for (int order : {1, 3, 5}) {
    for (int trial = 0; trial < 30; ++trial) {
      MultiPoly p = random_poly(rng, 3, order, 4, 6);
      p = embed(Rational(1, 3), order) * p;
      const std::string text = to_string(p);
      const MultiPoly q = parse_poly(text, 3, order);
      EXPECT_EQ(p, q) << text;
      EXPECT_EQ(to_string(q), text);
    }
  }
}

TEST(PolyArith, BraidIdentity) {
  MultiPoly s = P("x0 - x1") * P("x2 - x3") + P("x0 - x2") * P("x3 - x1") + P("x0 - x3") * P("x1 - x2");
  EXPECT_TRUE(s.is_zero());
}

TEST(PolyArith, AddZero) {
  MultiPoly p = P("x0^2 - 3*x1*x3");
  EXPECT_EQ(p + MultiPoly(4, 1), p);
}

TEST(PolyArith, DihedralPencilDifference) {
  MultiPoly f = P("(x0^2 - x1^2)*(x2^2 - x3^2)");
  MultiPoly g = P("(x0^2 - x2^2)*(x1^2 - x3^2)");
  EXPECT_EQ(f - g, P("(x0^2 - x3^2)*(x2^2 - x1^2)"));
}

TEST(PolyArith, MismatchErrors) {
  EXPECT_THROW(P("x0", 2) + P("x0", 3), PolyError);
  EXPECT_THROW(parse_poly("x0", 2, 3) * parse_poly("x0", 2, 5), FieldError);
}

TEST(PolyArith, HomogeneousProductDegree) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    MultiPoly a = random_homogeneous(rng, 4, 3, 3, 5), b = random_homogeneous(rng, 4, 3, 2, 4);
    MultiPoly c = a * b;
    if (a.is_zero() || b.is_zero()) continue;
    EXPECT_TRUE(c.is_homogeneous());
    EXPECT_EQ(c.degree(), 5);
  }
}

TEST(PolyProperties, RingAxioms) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 25; ++trial) {
    const int order = trial % 2 ? 3 : 1;
    MultiPoly a = random_poly(rng, 3, order, 3, 4), b = random_poly(rng, 3, order, 3, 4),
              c = random_poly(rng, 3, order, 3, 4);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * b, b * a);
    EXPECT_TRUE((a - a).is_zero());
  }
}

TEST(ExactDivide, SpecExamples) {
  auto q = exact_divide(P("x0^2 - x1^2", 2), P("x0 - x1", 2));
  ASSERT_TRUE(q);
  EXPECT_EQ(*q, P("x0 + x1", 2));
  EXPECT_FALSE(exact_divide(P("x0^2 + x1^2", 2), P("x0 - x1", 2)));
  EXPECT_THROW(exact_divide(P("x0", 2), MultiPoly(2, 1)), PolyError);
}

// omega_0 for F = x0^2 (x1^2 - x2^2), G = x1^2 (x2^2 - x0^2): every coefficient is
// divisible by x0 x1 x2. Oracle for a monomial divisor: each term must carry every variable.
TEST(ExactDivide, FermatOmega0ByCoordinateProduct) {
  const MultiPoly F = parse_poly("x0^2*(x1^2 - x2^2)", 3, 1);
  const MultiPoly G = parse_poly("x1^2*(x2^2 - x0^2)", 3, 1);
  const MultiPoly xyz = parse_poly("x0*x1*x2", 3, 1);
  for (int i = 0; i < 3; ++i) {
    const MultiPoly a = F * G.derivative(i) - G * F.derivative(i);
    ASSERT_FALSE(a.is_zero());
    for (const auto& [m, c] : a.terms()) {
      EXPECT_GE(m[0], 1);
      EXPECT_GE(m[1], 1);
      EXPECT_GE(m[2], 1);
    }
    auto q = exact_divide(a, xyz);
    ASSERT_TRUE(q);
    EXPECT_TRUE(q->is_homogeneous());
    EXPECT_EQ(q->degree(), 4);
    EXPECT_EQ(*q * xyz, a);
  }
}

TEST(ExactDivide, RoundTripOnRandomProducts) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const int order = trial % 3 == 0 ? 5 : 1;
    MultiPoly p = random_homogeneous(rng, 4, order, 3, 5);
    MultiPoly q = random_homogeneous(rng, 4, order, 2, 3);
    if (q.is_zero()) continue;
    auto r = exact_divide(p * q, q);
    ASSERT_TRUE(r);
    EXPECT_EQ(*r, p);
  }
}

TEST(DividesPower, SpecExamples) {
  EXPECT_TRUE(divides_power(P("x0", 2), 2, P("x0^3*x1", 2)));
  EXPECT_FALSE(divides_power(P("x0 - x1", 3), 2, P("(x0 - x1)*x2", 3)));
  EXPECT_FALSE(divides_power(P("x0", 2), 4, P("x0^3*x1", 2)));
}

TEST(Evaluate, SpecExamples) {
  EXPECT_EQ(P("x0^2 - x1^2", 2).evaluate({embed(2, 1), embed(1, 1)}), embed(3, 1));
  const MultiPoly h = parse_poly("x0 - z*x1", 2, 3);
  EXPECT_TRUE(h.evaluate({CycloElem::zeta(3), embed(1, 3)}).is_zero());
  EXPECT_THROW(h.evaluate({embed(1, 3)}), PolyError);
}

TEST(Evaluate, HomogeneityScaling) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 20; ++trial) {
    MultiPoly p = random_homogeneous(rng, 4, 3, 5, 6);
    auto v = random_point(rng, 4, 3);
    auto lv = v;
    for (auto& x : lv) x = embed(3, 3) * x;
    EXPECT_EQ(p.evaluate(lv), embed(243, 3) * p.evaluate(v));
  }
}

TEST(Evaluate, RingHomomorphism) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    MultiPoly a = random_poly(rng, 3, 4, 3, 5), b = random_poly(rng, 3, 4, 3, 5);
    auto v = random_point(rng, 3, 4);
    EXPECT_EQ((a * b).evaluate(v), a.evaluate(v) * b.evaluate(v));
    EXPECT_EQ((a + b).evaluate(v), a.evaluate(v) + b.evaluate(v));
  }
}

TEST(DegreeCap, PowRefusesPastCap) {
  EXPECT_THROW(P("x0 + x1", 2).pow(65), DegreeCapExceeded);
  EXPECT_NO_THROW(P("x0 + x1", 2).pow(8, 64));
  EXPECT_THROW(P("x0^9", 2).pow(8, 64), DegreeCapExceeded);
}

}  // namespace
}  // namespace crpencil
