#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <random>

#include "quadinv/error.hpp"
#include "quadinv/numeric.hpp"
#include "quadinv/poly.hpp"
#include "quadinv/quadform.hpp"

namespace quadinv {
namespace {

Poly P(const std::string& s, int n) { return parse_poly(s, n); }

Rational rand_rat(Rng& rng, int range = 5, int den = 4) {
  long num = static_cast<long>(rng() % (2 * range + 1)) - range;
  long d = 1 + static_cast<long>(rng() % den);
  return make_rational(num, d);
}

RatMatrix rand_matrix(Rng& rng, int r, int c) {
  RatMatrix m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = rand_rat(rng);
  return m;
}

RatMatrix rand_symmetric(Rng& rng, int d) {
  RatMatrix m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) m(i, j) = m(j, i) = rand_rat(rng);
  return m;
}

TEST(Rational, ParseAndReduce) {
  EXPECT_EQ(parse_rational("6/8"), Rational(3, 4));
  EXPECT_EQ(to_string(parse_rational("-10/4")), "-5/2");
  EXPECT_THROW(parse_rational("1/0"), Error);
  EXPECT_THROW(parse_rational("abc"), Error);
}

TEST(Rational, Convergents) {
  auto c = convergents(0.5000000003, 1000000);
  ASSERT_FALSE(c.empty());
  EXPECT_EQ(c.back(), Rational(1, 2));
  EXPECT_EQ(approximate(-1.0 / 3.0, 1000000), Rational(-1, 3));
  EXPECT_EQ(approximate(3.0, 10), Rational(3));
}

TEST(Poly, ParseGrammar) {
  Poly p = P("x1^2 + 2*x1*x2 - 1/4", 2);
  EXPECT_EQ(p.coeff({2, 0}), Rational(1));
  EXPECT_EQ(p.coeff({1, 1}), Rational(2));
  EXPECT_EQ(p.coeff({0, 0}), Rational(-1, 4));
  EXPECT_EQ(P("(x1 + x2)^2", 2), P("x1^2 + 2*x1*x2 + x2^2", 2));
  EXPECT_EQ(P("-(x1 - 3/2)", 1), P("3/2 - x1", 1));
}

TEST(Poly, ParseErrors) {
  EXPECT_THROW(P("2x1", 2), ParseError);
  EXPECT_THROW(P("x1 x2", 2), ParseError);
  EXPECT_THROW(P("x3", 2), ParseError);
  EXPECT_THROW(P("x1 +", 2), ParseError);
  try {
    parse_poly("x1 +\n  x9", 2);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
    EXPECT_EQ(e.column(), 3);
  }
}

TEST(Poly, CanonicalRoundTrip) {
  Poly p = P("3*x2^2 - x1*x2 + x1^3 + 7 - 1/2*x1", 2);
  EXPECT_EQ(p.to_string(), "x1^3 - x1*x2 + 3*x2^2 - 1/2*x1 + 7");
  EXPECT_EQ(P(p.to_string(), 2), p);
  EXPECT_EQ(Poly(3).to_string(), "0");
}

TEST(Poly, DegreeConventions) {
  EXPECT_EQ(Poly(2).degree(), -1);
  EXPECT_EQ(P("x1^2*x2 + x2", 2).degree(), 3);
  EXPECT_EQ(P("x1^2*x2 + x2", 2).degree_in(0), 2);
}

TEST(Poly, DerivativeAndEval) {
  Poly p = P("x1^3*x2 - 2*x2^2", 2);
  EXPECT_EQ(p.derivative(0), P("3*x1^2*x2", 2));
  EXPECT_EQ(p.derivative(1), P("x1^3 - 4*x2", 2));
  EXPECT_EQ(p.eval(std::vector<Rational>{Rational(2), Rational(1, 2)}), Rational(7, 2));
  EXPECT_DOUBLE_EQ(p.eval(std::vector<double>{2.0, 0.5}), 3.5);
}

TEST(Poly, SubstituteAndFix) {
  Poly p = P("x1*x2 + x3", 3);
  Poly q = p.fix_leading({Rational(2)});
  EXPECT_EQ(q, P("2*x1 + x2", 2));
  Poly r = p.substitute({P("x1 + x2", 2), P("x1", 2), P("1", 2)});
  EXPECT_EQ(r, P("x1^2 + x1*x2 + 1", 2));
}

TEST(IsIdenticallyZero, Examples) {
  Poly a = P("(x1+x2)^2 - x1^2 - 2*x1*x2 - x2^2", 2);
  EXPECT_TRUE(is_identically_zero(a));
  EXPECT_TRUE(vanishes_on_grid(a));
  Poly b = P("x1^2 - x1", 1);
  EXPECT_FALSE(is_identically_zero(b));
  EXPECT_FALSE(vanishes_on_grid(b));
  EXPECT_TRUE(is_identically_zero(Poly(3)));
  EXPECT_TRUE(vanishes_on_grid(Poly(3)));
}

// Grid identity test agrees with coefficient inspection, including telescoping identities.
TEST(IsIdenticallyZero, GridAgreesWithCoefficients) {
  Rng rng = make_rng(11);
  int zeros = 0;
  for (int it = 0; it < 1000; ++it) {
    int n = 1 + static_cast<int>(rng() % 4);
    auto rand_poly = [&](int maxdeg, int terms) {
      Poly p(n);
      for (int t = 0; t < terms; ++t) {
        Exponents e(n, 0);
        int budget = static_cast<int>(rng() % (maxdeg + 1));
        for (int k = 0; k < budget; ++k) e[rng() % n] += 1;
        p.add_term(e, rand_rat(rng));
      }
      return p;
    };
    Poly p;
    // unexpanded evaluation of the same expression, so zero cases still reach the grid
    std::function<Rational(const std::vector<Rational>&)> f;
    int bound = 0;
    switch (it % 3) {
      case 0:
        p = rand_poly(6, 1 + static_cast<int>(rng() % 8));
        f = [p](const std::vector<Rational>& x) { return p.eval(x); };
        bound = std::max(p.degree(), 0);
        break;
      case 1: {
        // A*B - B*A style telescoping with a perturbation half the time
        Poly a = rand_poly(3, 3), b = rand_poly(3, 3);
        Poly r = (rng() % 2) ? rand_poly(6, 1) : Poly(n);
        p = a * b - b * a + (a + b) * (a - b) - a * a + b * b + r;
        f = [a, b, r](const std::vector<Rational>& x) {
          Rational av = a.eval(x), bv = b.eval(x);
          return Rational(av * bv - bv * av + (av + bv) * (av - bv) - av * av + bv * bv + r.eval(x));
        };
        bound = std::max({2 * a.degree(), 2 * b.degree(), r.degree(), 0});
        break;
      }
      default: {
        Poly a = rand_poly(2, 3);
        Rational c = (rng() % 2) ? Rational(static_cast<long>(rng() % 3)) : Rational(0);
        p = a.pow(3) - a * a * a;
        p.add_term(Exponents(n, 0), c);
        f = [a, c](const std::vector<Rational>& x) {
          Rational v = a.eval(x);
          return Rational(v * v * v - v * v * v + c);
        };
        bound = std::max(3 * a.degree(), 0);
        break;
      }
    }
    if (p.degree() > 6 || bound > 6) continue;
    bool coeff = is_identically_zero(p);
    zeros += coeff;
    ASSERT_EQ(coeff, vanishes_on_grid(p)) << p.to_string();
    ASSERT_EQ(coeff, vanishes_on_grid(n, bound, f)) << p.to_string();
  }
  EXPECT_GT(zeros, 100);
}

TEST(Normalize, Examples) {
  EXPECT_EQ(normalize(P("2*x1", 1)), P("x1", 1));
  Poly c = P("x1^2 + x2^2 - 1/4", 2);
  EXPECT_EQ(normalize(c), c * Rational(4, 9));
  EXPECT_EQ(normalize(c).l1_norm(), Rational(1));
  EXPECT_EQ(normalize(normalize(c)), normalize(c));
  EXPECT_THROW(normalize(Poly(2)), Error);
}

TEST(Normalize, NormIsExactlyOne) {
  Rng rng = make_rng(12);
  for (int it = 0; it < 200; ++it) {
    Poly p(3);
    for (int t = 0; t < 5; ++t) p.add_term({unsigned(rng() % 3), unsigned(rng() % 3), unsigned(rng() % 3)}, rand_rat(rng));
    if (p.is_zero()) continue;
    EXPECT_EQ(normalize(p).l1_norm(), Rational(1));
  }
}

TEST(HessianHalf, Examples) {
  EXPECT_EQ(hessian_half(QuadForm::from_poly(P("x1^2", 2))), (RatMatrix{{1, 0}, {0, 0}}));
  EXPECT_EQ(hessian_half(QuadForm::from_poly(P("x1*x2", 2))),
            (RatMatrix{{0, Rational(1, 2)}, {Rational(1, 2), 0}}));
  EXPECT_EQ(hessian_half(QuadForm::from_poly(P("x1^2 + 2*x2*x3", 3))),
            (RatMatrix{{1, 0, 0}, {0, 0, 1}, {0, 1, 0}}));
  EXPECT_THROW(QuadForm::from_poly(P("x1^2 + x2", 2)), Error);
}

TEST(HessianHalf, RoundTrip) {
  Rng rng = make_rng(13);
  for (int it = 0; it < 1000; ++it) {
    int d = 1 + static_cast<int>(rng() % 6);
    QuadForm q(rand_symmetric(rng, d));
    EXPECT_EQ(quad_of_matrix(hessian_half(q)), q);
    EXPECT_EQ(QuadForm::from_poly(q.to_poly()), q);
  }
}

TEST(SubstituteLinear, Examples) {
  QuadTuple t = parse_tuple("d=2; x1^2");
  EXPECT_EQ(substitute_linear(t, RatMatrix::identity(2)), t);
  EXPECT_EQ(substitute_linear(t, RatMatrix{{0, 1}, {1, 0}}), parse_tuple("d=2; x2^2"));
  QuadTuple u = parse_tuple("d=2; x1^2 + x2^2");
  EXPECT_EQ(substitute_linear(u, RatMatrix{{1, 1}, {0, 1}}).forms[0].matrix(), (RatMatrix{{1, 1}, {1, 2}}));
  EXPECT_THROW(substitute_linear(u, RatMatrix::identity(3)), DimensionError);
}

TEST(SubstituteLinear, Composition) {
  Rng rng = make_rng(14);
  for (int it = 0; it < 200; ++it) {
    int d = 1 + static_cast<int>(rng() % 4);
    QuadTuple t = make_tuple({rand_symmetric(rng, d), rand_symmetric(rng, d)});
    RatMatrix m1 = rand_matrix(rng, d, d), m2 = rand_matrix(rng, d, d);
    EXPECT_EQ(substitute_linear(t, m1 * m2), substitute_linear(substitute_linear(t, m1), m2));
  }
}

TEST(CombineForms, Examples) {
  QuadTuple t = parse_tuple("d=2; x1^2; x2^2");
  EXPECT_EQ(combine_forms(t, RatMatrix::identity(2)), t);
  EXPECT_EQ(combine_forms(t, RatMatrix{{1, 1}, {0, 1}}), parse_tuple("d=2; x1^2 + x2^2; x2^2"));
  QuadTuple z = combine_forms(t, RatMatrix(2, 2));
  EXPECT_TRUE(z.forms[0].is_zero());
  EXPECT_TRUE(z.forms[1].is_zero());
}

TEST(Nv, Examples) {
  EXPECT_EQ(nv(parse_tuple("d=3; x1^2")), 1);
  EXPECT_EQ(nv(parse_tuple("d=3; x1*x2; x3^2")), 3);
  EXPECT_EQ(nv(parse_tuple("d=5; x1^2+x2^2+x3^2+x4^2+x5^2")), 5);
}

TEST(Nv, CombineNeverIncreases) {
  Rng rng = make_rng(15);
  for (int it = 0; it < 300; ++it) {
    int d = 2 + static_cast<int>(rng() % 4);
    RatMatrix a(d, d), b(d, d);
    // sparse supports so that nv varies
    for (int k = 0; k < 3; ++k) {
      int i = rng() % d, j = rng() % d;
      a(i, j) = a(j, i) = rand_rat(rng);
      i = rng() % d, j = rng() % d;
      b(i, j) = b(j, i) = rand_rat(rng);
    }
    QuadTuple t = make_tuple({a, b});
    EXPECT_LE(nv(combine_forms(t, rand_matrix(rng, 2, 2))), nv(t));
  }
}

TEST(ParseTuple, Examples) {
  QuadTuple p = parse_tuple("d=2; x1^2 + x2^2");
  EXPECT_EQ(p.d, 2);
  EXPECT_EQ(p.n(), 1);
  QuadTuple m = parse_tuple("d=2; x1^2; x1*x2; x2^2");
  EXPECT_EQ(m.n(), 3);
  EXPECT_THROW(parse_tuple("d=2; x1^3"), ParseError);
  EXPECT_THROW(parse_tuple("d=2; x1^2 + x1"), ParseError);
  EXPECT_THROW(parse_tuple("d=2; x3^2"), ParseError);
  EXPECT_THROW(parse_tuple("x1^2"), ParseError);
  QuadTuple c = parse_tuple("# comment\nd=2;\n x1^2; # first\n x2^2;\n");
  EXPECT_EQ(c.n(), 2);
  EXPECT_EQ(parse_tuple("d=2; 0; x1^2").forms[0].is_zero(), true);
}

TEST(ParseTuple, SerializeRoundTrip) {
  Rng rng = make_rng(16);
  for (int it = 0; it < 200; ++it) {
    int d = 1 + static_cast<int>(rng() % 5);
    QuadTuple t = make_tuple({rand_symmetric(rng, d), rand_symmetric(rng, d), rand_symmetric(rng, d)});
    std::string s = serialize_tuple(t);
    EXPECT_EQ(parse_tuple(s), t);
    EXPECT_EQ(serialize_tuple(parse_tuple(s)), s);
  }
}

}  // namespace
}  // namespace quadinv
