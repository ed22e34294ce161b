#include <gtest/gtest.h>

#include "quadinv/classify.hpp"
#include "quadinv/fixtures.hpp"
#include "quadinv/numeric.hpp"

using namespace quadinv;

namespace {

UPoly up(std::initializer_list<long> c) {
  std::vector<Rational> v;
  for (long x : c) v.emplace_back(x);
  return UPoly(v);
}

QuadForm form(const std::string& text, int d) { return QuadForm::from_poly(parse_poly(text, d)); }

}  // namespace

TEST(Univariate, DivmodAndGcd) {
  UPoly a = up({-1, 0, 1});  // t^2 - 1
  UPoly b = up({1, 1});      // t + 1
  auto [q, r] = divmod(a, b);
  EXPECT_EQ(q, up({-1, 1}));
  EXPECT_TRUE(r.is_zero());
  EXPECT_EQ(gcd(a, up({-1, 1}) * up({2, 1})), up({-1, 1}));
}

TEST(Univariate, SquarefreeDecomposition) {
  // (t-1)^3 (t+2)^2 t
  UPoly f = up({-1, 1}) * up({-1, 1}) * up({-1, 1}) * up({2, 1}) * up({2, 1}) * up({0, 1});
  auto sf = squarefree_decomposition(f);
  ASSERT_EQ(sf.size(), 3u);
  EXPECT_EQ(sf[0].first, up({0, 1}));
  EXPECT_EQ(sf[0].second, 1);
  EXPECT_EQ(sf[1].first, up({2, 1}));
  EXPECT_EQ(sf[1].second, 2);
  EXPECT_EQ(sf[2].first, up({-1, 1}));
  EXPECT_EQ(sf[2].second, 3);
}

TEST(Univariate, SquarefreeRecomposes) {
  Rng rng = make_rng(4);
  for (int it = 0; it < 100; ++it) {
    UPoly f = up({static_cast<long>(rng() % 5) + 1});
    int factors = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < factors; ++i) {
      UPoly lin = up({static_cast<long>(rng() % 7) - 3, 1});
      int e = 1 + static_cast<int>(rng() % 3);
      for (int j = 0; j < e; ++j) f = f * lin;
    }
    UPoly prod = up({1});
    for (const auto& [s, i] : squarefree_decomposition(f))
      for (int j = 0; j < i; ++j) prod = prod * s;
    EXPECT_EQ(prod, f.monic());
  }
}

TEST(Univariate, Interpolate) {
  UPoly f = up({3, -2, 0, 5});
  std::vector<Rational> xs, ys;
  for (int i = 0; i < 4; ++i) {
    xs.emplace_back(i * 2 - 1);
    ys.push_back(f.eval(xs.back()));
  }
  EXPECT_EQ(interpolate(xs, ys), f);
}

TEST(Good, Examples) {
  EXPECT_TRUE(is_good(fixtures::good_d4()));
  EXPECT_FALSE(is_good(GoodManifoldSpec{{1, 1}, {2, 2}}));
  EXPECT_FALSE(is_good(GoodManifoldSpec{{1, -1}, {0, 1}}));
  EXPECT_FALSE(is_good(fixtures::hyperbolic_tensor()));
}

TEST(Good, WeakConditionWitness) {
  GoodManifoldSpec h = fixtures::hyperbolic_tensor();
  WeakConditionResult r = good_weak_condition(h);
  EXPECT_FALSE(r.holds);
  ASSERT_TRUE(r.witness.has_value());
  std::vector<Rational> expect(8, Rational(0));
  expect[0] = make_rational(1, 2);
  expect[2] = make_rational(1, 2);
  EXPECT_EQ(*r.witness, expect);
  EXPECT_TRUE(good_weak_condition(fixtures::good_d4()).holds);
}

TEST(Good, WeakConditionAgreesWithDenseSearch) {
  Rng rng = make_rng(8);
  for (int it = 0; it < 200; ++it) {
    int d = 2 + static_cast<int>(rng() % 3);
    GoodManifoldSpec s;
    for (int i = 0; i < d; ++i) {
      s.a.emplace_back(static_cast<long>(rng() % 5) - 2);
      s.b.emplace_back(static_cast<long>(rng() % 5) - 2);
    }
    WeakConditionResult r = good_weak_condition(s);
    if (!r.holds) {
      Rational sa = 0, sb = 0, sw = 0;
      for (int i = 0; i < d; ++i) {
        EXPECT_GE((*r.witness)[i], 0);
        sa += s.a[i] * (*r.witness)[i];
        sb += s.b[i] * (*r.witness)[i];
        sw += (*r.witness)[i];
      }
      EXPECT_EQ(sa, 0);
      EXPECT_EQ(sb, 0);
      EXPECT_EQ(sw, 1);
    } else {
      // no simplex point on a grid of step 1/12 solves both equations
      std::vector<int> w(d, 0);
      std::function<void(int, int)> rec = [&](int i, int left) {
        if (i == d - 1) {
          w[i] = left;
          Rational sa = 0, sb = 0;
          for (int j = 0; j < d; ++j) {
            sa += s.a[j] * w[j];
            sb += s.b[j] * w[j];
          }
          EXPECT_FALSE(sa == 0 && sb == 0);
          return;
        }
        for (int v = 0; v <= left; ++v) {
          w[i] = v;
          rec(i + 1, left - v);
        }
      };
      rec(0, 12);
    }
  }
}

TEST(WellCurved, Examples) {
  EXPECT_FALSE(is_well_curved(form("x1^2", 2), form("x1^2", 2)));
  WellCurvedResult r = well_curved_analysis(form("x1*x2", 2), form("x1^2", 2));
  EXPECT_FALSE(r.value);
  EXPECT_EQ(r.max_multiplicity, 2);
  // F = -x^2
  EXPECT_EQ(r.binary_form, (std::vector<Rational>{-1, 0, 0}));
  QuadTuple h = fixtures::hyperbolic_tensor().tuple();
  EXPECT_TRUE(is_well_curved(h.forms[0], h.forms[1]));
}

TEST(WellCurved, GoodFixtureIsWellCurved) {
  QuadTuple g = fixtures::good_d4().tuple();
  WellCurvedResult r = well_curved_analysis(g.forms[0], g.forms[1]);
  EXPECT_TRUE(r.value);
  EXPECT_EQ(r.max_multiplicity, 1);
}

TEST(WellCurved, DiagonalMultiplicities) {
  // P = sum a_i xi_i^2, Q = sum b_i xi_i^2 gives F = prod 2(a_i x + b_i y)
  QuadTuple t = GoodManifoldSpec{{1, 1, 1, 0}, {0, 0, 0, 1}}.tuple();
  WellCurvedResult r = well_curved_analysis(t.forms[0], t.forms[1]);
  EXPECT_EQ(r.max_multiplicity, 3);
  EXPECT_FALSE(r.value);
  QuadTuple u = GoodManifoldSpec{{1, 1, 0, 0}, {0, 0, 1, 1}}.tuple();
  EXPECT_TRUE(is_well_curved(u.forms[0], u.forms[1]));
}
