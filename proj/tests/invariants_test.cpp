#include <gtest/gtest.h>

#include "quadinv/error.hpp"
#include "quadinv/fixtures.hpp"
#include "quadinv/invariants.hpp"
#include "quadinv/numeric.hpp"

using namespace quadinv;

namespace {

std::vector<Rational> rv(std::initializer_list<long> v) {
  std::vector<Rational> out;
  for (long x : v) out.emplace_back(x);
  return out;
}

RatMatrix random_matrix(Rng& rng, int r, int c, int lo, int hi) {
  RatMatrix m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = lo + static_cast<long>(rng() % (hi - lo + 1));
  return m;
}

RatMatrix random_full_rank(Rng& rng, int r, int c) {
  while (true) {
    RatMatrix m = random_matrix(rng, r, c, -3, 3);
    if (rank(m) == r) return m;
  }
}

// P M^T with P congruence-diagonalizing a: returns M with M^T A M diagonal.
RatMatrix diagonalizing_congruence(RatMatrix a) {
  int d = a.rows();
  RatMatrix m = RatMatrix::identity(d);
  for (int k = 0; k < d; ++k) {
    if (a(k, k) == 0) {
      int j = -1;
      for (int l = k + 1; l < d && j < 0; ++l)
        if (a(l, l) != 0) j = l;
      if (j >= 0) {
        RatMatrix s = RatMatrix::identity(d);
        s(k, k) = 0;
        s(j, j) = 0;
        s(k, j) = 1;
        s(j, k) = 1;
        a = s.transpose() * a * s;
        m = m * s;
      } else {
        for (int l = k + 1; l < d && j < 0; ++l)
          if (a(k, l) != 0) j = l;
        if (j < 0) continue;
        RatMatrix s = RatMatrix::identity(d);
        s(j, k) = 1;  // e_k + e_j has value 2 a(k,j) != 0
        a = s.transpose() * a * s;
        m = m * s;
      }
    }
    for (int l = k + 1; l < d; ++l) {
      if (a(k, l) == 0) continue;
      RatMatrix s = RatMatrix::identity(d);
      s(k, l) = -a(k, l) / a(k, k);
      a = s.transpose() * a * s;
      m = m * s;
    }
  }
  return m;
}

SliceOptions fast_slice() { return SliceOptions{}; }

}  // namespace

TEST(TangentFrame, ParaboloidAtOrigin) {
  TangentFrame f = tangent_frame(fixtures::paraboloid(2), rv({0, 0}));
  RatMatrix expect{{1, 0}, {0, 1}, {0, 0}};
  EXPECT_EQ(f.frame, expect);
}

TEST(TangentFrame, ParaboloidOffOrigin) {
  TangentFrame f = tangent_frame(fixtures::paraboloid(2), rv({1, 0}));
  RatMatrix expect{{1, 0}, {0, 1}, {2, 0}};
  EXPECT_EQ(f.frame, expect);
}

TEST(TangentFrame, MixedForm) {
  TangentFrame f = tangent_frame(parse_tuple("d=2; x1*x2"), rv({1, 1}));
  EXPECT_EQ(f.frame(2, 0), 1);
  EXPECT_EQ(f.frame(2, 1), 1);
}

TEST(TangentFrame, AlwaysFullColumnRank) {
  Rng rng = make_rng(5);
  QuadTuple t = fixtures::good_d4().tuple();
  for (int i = 0; i < 100; ++i) {
    std::vector<Rational> xi;
    for (int j = 0; j < 4; ++j) xi.emplace_back(static_cast<long>(rng() % 21) - 10);
    EXPECT_EQ(rank(tangent_frame(t, xi).frame), 4);
  }
}

TEST(ProjDim, Examples) {
  QuadTuple p = fixtures::paraboloid(2);
  RatMatrix e3{{0, 0, 1}};
  EXPECT_EQ(proj_dim(e3, tangent_frame(p, rv({0, 0}))), 0);
  EXPECT_EQ(proj_dim(e3, tangent_frame(p, rv({1, 0}))), 1);
  EXPECT_EQ(proj_dim(RatMatrix::identity(3), tangent_frame(p, rv({3, -2}))), 2);
  RatMatrix deficient{{1, 0, 0}, {2, 0, 0}};
  EXPECT_THROW(proj_dim(deficient, tangent_frame(p, rv({0, 0}))), DimensionError);
}

// dim proj_T V = dim V - dim T^perp + dim proj_{T^perp} V^perp, all ranks exact.
TEST(ProjDim, ComplementIdentity) {
  std::vector<QuadTuple> tuples{fixtures::paraboloid(3), fixtures::good_d4().tuple()};
  for (std::size_t ti = 0; ti < tuples.size(); ++ti) {
    const QuadTuple& t = tuples[ti];
    int big = t.d + t.n();
    Rng rng = make_rng(77, ti);
    for (int it = 0; it < 1000; ++it) {
      int m = 1 + static_cast<int>(rng() % big);
      RatMatrix v = random_full_rank(rng, m, big);
      std::vector<Rational> xi;
      for (int j = 0; j < t.d; ++j) xi.push_back(make_rational(static_cast<long>(rng() % 41) - 20, 1 + rng() % 4));
      TangentFrame f = tangent_frame(t, xi);
      RatMatrix vperp = nullspace(v);                       // big x (big - m)
      RatMatrix tperp = nullspace(f.frame.transpose());     // big x n
      int rhs_proj = (vperp.cols() == 0) ? 0 : rank(vperp.transpose() * tperp);
      ASSERT_EQ(proj_dim(v, f), m - t.n() + rhs_proj) << "instance " << it;
    }
  }
}

TEST(XClosedForm, Examples) {
  EXPECT_EQ(x_paraboloid_closed(5, 4, 3), 3);
  EXPECT_EQ(x_paraboloid_closed(5, 4, 5), 4);
  EXPECT_EQ(x_paraboloid_closed(5, 4, 6), 5);
  EXPECT_THROW(x_paraboloid_closed(5, 7, 3), RangeError);
}

TEST(XInvariant, Examples) {
  EXPECT_EQ(x_invariant(fixtures::paraboloid(2), 2, 0, fast_slice(), 1).value, 0);
  EXPECT_EQ(x_invariant(fixtures::paraboloid(2), 2, 2, fast_slice(), 1).value, 1);
  XEntry e = x_invariant(fixtures::paraboloid(3), 3, 4, fast_slice(), 1);
  EXPECT_EQ(e.value, 3);
  EXPECT_GE(e.confidence, Confidence::HighConfidence);
  EXPECT_THROW(x_invariant(fixtures::paraboloid(2), 4, 1, fast_slice(), 1), RangeError);
  EXPECT_THROW(x_invariant(fixtures::paraboloid(2), 2, 4, fast_slice(), 1), RangeError);
}

TEST(XTable, ParaboloidD3K3) {
  XTable tab = x_table(fixtures::paraboloid(3), 3, fast_slice(), 11);
  std::vector<int> got;
  for (const auto& [m, e] : tab.entries) got.push_back(e.value);
  EXPECT_EQ(got, (std::vector<int>{0, 1, 2, 2, 3}));
}

TEST(XTable, SharedCacheAgreesWithSingleRuns) {
  QuadTuple t = fixtures::paraboloid(3);
  auto tabs = x_tables(t, {2, 3, 4}, fast_slice(), 11);
  for (const auto& tab : tabs)
    for (const auto& [m, e] : tab.entries) EXPECT_EQ(e.value, x_invariant(t, tab.k, m, fast_slice(), 11).value);
}

TEST(XTable, TrivialBoundsAndMonotoneInK) {
  for (const QuadTuple& t : {fixtures::paraboloid(2), fixtures::paraboloid(3), fixtures::mockenhaupt()}) {
    std::vector<int> ks;
    for (int k = 2; k <= t.d + 1; ++k) ks.push_back(k);
    auto tabs = x_tables(t, ks, fast_slice(), 3);
    for (std::size_t i = 0; i < tabs.size(); ++i) {
      for (const auto& [m, e] : tabs[i].entries) {
        EXPECT_GE(e.value, 0);
        EXPECT_LE(e.value, std::min(m, t.d + 1));
        if (i > 0) EXPECT_LE(tabs[i - 1].entries.at(m).value, e.value);
      }
    }
  }
}

TEST(XTable, GoodFixtureLowerBound) {
  XTable tab = x_table(fixtures::good_d4().tuple(), 4, fast_slice(), 5);
  for (const auto& [m, e] : tab.entries) {
    EXPECT_GE(e.value * 5, 3 * m) << "m = " << m;
    EXPECT_GE(e.confidence, Confidence::HighConfidence);
  }
}

TEST(DInvariant, ZeroRanks) {
  QuadTuple t = fixtures::good_d4().tuple();
  for (int dp = 0; dp <= 4; ++dp) {
    DEntry e = d_invariant(t, dp, 0, RankSearchOptions{}, 1);
    EXPECT_EQ(e.decision.value, 0);
    EXPECT_EQ(e.decision.status, RankStatus::Exact);
  }
  EXPECT_THROW(d_invariant(t, 5, 1, RankSearchOptions{}, 1), RangeError);
  EXPECT_THROW(d_invariant(t, 1, 3, RankSearchOptions{}, 1), RangeError);
}

TEST(DInvariant, DefiniteForm) {
  QuadTuple t = fixtures::paraboloid(2);
  // a definite form restricted to any subspace keeps all its variables
  EXPECT_EQ(d_invariant(t, 2, 1, RankSearchOptions{}, 1).decision.value, 2);
  EXPECT_EQ(d_invariant(t, 1, 1, RankSearchOptions{}, 1).decision.value, 1);
}

TEST(DInvariant, IndefiniteFormHasIsotropicLine) {
  QuadTuple t = parse_tuple("d=2; x1^2 - x2^2");
  DEntry e = d_invariant(t, 1, 1, RankSearchOptions{}, 1);
  EXPECT_EQ(e.decision.value, 0);
  ASSERT_TRUE(e.witness.has_value());
  QuadTuple restricted = combine_forms(substitute_linear(t, e.witness->m.transpose()), e.witness->n);
  EXPECT_EQ(nv(restricted), 0);
}

// A single form can be brought to rank(A) variables and no fewer.
TEST(DInvariant, SingleFormEqualsMatrixRank) {
  Rng rng = make_rng(21);
  for (int it = 0; it < 12; ++it) {
    int d = 2 + static_cast<int>(rng() % 2);
    RatMatrix a(d, d);
    int r = 1 + static_cast<int>(rng() % d);
    RatMatrix b = random_matrix(rng, r, d, -2, 2);
    for (int i = 0; i < r; ++i) {
      Rational s = (rng() % 2) ? 1 : -1;
      for (int j = 0; j < d; ++j)
        for (int l = 0; l < d; ++l) a(j, l) += s * b(i, j) * b(i, l);
    }
    QuadTuple t = quadinv::make_tuple({a});
    DEntry e = d_invariant(t, d, 1, RankSearchOptions{}, it);
    EXPECT_EQ(e.decision.value, rank(a)) << a.to_string();
    EXPECT_EQ(e.decision.status, RankStatus::Exact);
  }
}

TEST(DInvariant, WitnessAchievesValue) {
  QuadTuple t = fixtures::good_d4().tuple();
  for (auto [dp, np] : {std::pair{2, 1}, std::pair{3, 1}, std::pair{4, 1}, std::pair{3, 2}}) {
    DEntry e = d_invariant(t, dp, np, RankSearchOptions{}, 9);
    ASSERT_TRUE(e.witness.has_value());
    EXPECT_EQ(rank(e.witness->m), dp);
    EXPECT_EQ(rank(e.witness->n), np);
    QuadTuple restricted = combine_forms(substitute_linear(t, e.witness->m.transpose()), e.witness->n);
    EXPECT_EQ(nv(restricted), e.decision.value);
  }
}

TEST(DTable, GoodFixtureBounds) {
  DTable tab = d_table(fixtures::good_d4().tuple(), RankSearchOptions{}, 2);
  for (int m = 0; m <= 2; ++m) {
    const DEntry& e = tab.at(4 - m, 2);
    EXPECT_EQ(e.decision.value, 4 - m);
    EXPECT_EQ(e.decision.status, RankStatus::Exact);
  }
  for (int m = 0; m <= 1; ++m) EXPECT_GE(tab.at(4 - m, 1).decision.value, std::max(0, 3 - 2 * m));
  for (int dp = 0; dp <= 4; ++dp) {
    EXPECT_EQ(tab.at(dp, 0).decision.value, 0);
    for (int np = 0; np <= 2; ++np) EXPECT_LE(tab.at(dp, np).decision.value, dp);
  }
}

TEST(NvInvariance, CongruenceNeverBeatsRank) {
  Rng rng = make_rng(31);
  for (int it = 0; it < 200; ++it) {
    int d = 2 + static_cast<int>(rng() % 3);
    RatMatrix b = random_matrix(rng, d, d, -2, 2);
    RatMatrix a = b.transpose() * RatMatrix::diagonal(std::vector<Rational>(d, Rational(1))) * b;
    if (rng() % 2) a(0, 0) -= 3;
    QuadTuple t = quadinv::make_tuple({a});
    int fr = family_rank({a});
    RatMatrix m = random_full_rank(rng, d, d);
    EXPECT_GE(nv(substitute_linear(t, m)), fr);
    RatMatrix diag = diagonalizing_congruence(a);
    ASSERT_EQ(rank(diag), d);
    EXPECT_EQ(nv(substitute_linear(t, diag)), fr);
  }
}
