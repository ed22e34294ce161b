#include <gtest/gtest.h>

#include "quadinv/error.hpp"
#include "quadinv/numeric.hpp"
#include "quadinv/semialg.hpp"

namespace quadinv {
namespace {

SemiAlgebraicSet S(const std::string& s, int dim) { return SemiAlgebraicSet::parse(s, dim); }
Poly P(const std::string& s, int n) { return parse_poly(s, n); }

TEST(SemiAlgebraicSet, ParseAndSerialize) {
  auto z = S("x1^2 + x2^2 - 1 = 0 && x1 > 0 || x2 = 0", 2);
  ASSERT_EQ(z.cells().size(), 2u);
  EXPECT_EQ(z.cells()[0].equalities.size(), 1u);
  EXPECT_EQ(z.cells()[0].positivities.size(), 1u);
  EXPECT_EQ(z.complexity(), 2 + 1 + 1);
  EXPECT_EQ(S(z.to_string(), 2).to_string(), z.to_string());
  EXPECT_TRUE(z.contains({Rational(1), Rational(0)}));
  EXPECT_TRUE(z.contains({Rational(-7), Rational(0)}));
  EXPECT_FALSE(z.contains({Rational(-1), Rational(1)}));
  EXPECT_THROW(S("x1 < 0", 1), Error);
  EXPECT_THROW(S("x1 = 1", 1), Error);
}

TEST(Emptiness, SumOfSquaresPlusOne) {
  OracleStatus st = emptiness(S("x1^2 + x2^2 + 1 = 0", 2), {}, 1);
  EXPECT_EQ(st.kind, OracleKind::EmptyHeuristic);
  EXPECT_TRUE(st.certified_in_box);
}

TEST(Emptiness, UnitCircle) {
  OracleStatus st = emptiness(S("x1^2 + x2^2 - 1 = 0", 2), {}, 1);
  ASSERT_EQ(st.kind, OracleKind::NonEmpty);
  EXPECT_TRUE(st.exact_witness);
  EXPECT_EQ(P("x1^2 + x2^2 - 1", 2).eval(st.witness), 0);
}

TEST(Emptiness, StrictnessContradiction) {
  OracleStatus st = emptiness(S("x1^2 = 0 && x1 > 0", 1), {}, 1);
  EXPECT_EQ(st.kind, OracleKind::EmptyHeuristic);
}

TEST(Emptiness, OffGridSolutionIsRounded) {
  OracleStatus st = emptiness(S("7*x1 - 5 = 0 && 11*x2 + 3 = 0", 2), {}, 1);
  ASSERT_EQ(st.kind, OracleKind::NonEmpty);
  EXPECT_EQ(st.witness[0], Rational(5, 7));
  EXPECT_EQ(st.witness[1], Rational(-3, 11));
}

TEST(Emptiness, IrrationalSingleEquationBySignChange) {
  OracleStatus st = emptiness(S("x1^2 - 2 = 0", 1), {}, 1);
  EXPECT_EQ(st.kind, OracleKind::NonEmpty);
}

TEST(Emptiness, UnionMonotone) {
  auto a = S("x1^2 + 1 = 0", 1);
  auto b = S("x1 - 3 = 0", 1);
  EXPECT_EQ(emptiness(a, {}, 2).kind, OracleKind::EmptyHeuristic);
  EXPECT_EQ(emptiness(b, {}, 2).kind, OracleKind::NonEmpty);
  EXPECT_EQ(emptiness(a.unite(b), {}, 2).kind, OracleKind::NonEmpty);
  EXPECT_EQ(emptiness(b.unite(a), {}, 2).kind, OracleKind::NonEmpty);
}

TEST(Emptiness, WitnessesVerifyExactly) {
  Rng rng = make_rng(5);
  for (int it = 0; it < 40; ++it) {
    long a = static_cast<long>(rng() % 7) - 3, b = 1 + static_cast<long>(rng() % 5);
    Poly p = P("x1*x2", 2) - Poly::constant(2, make_rational(a, b));
    SemiAlgebraicSet z(2);
    z.add_cell(Cell{{p}, {}});
    OracleStatus st = emptiness(z, {}, it);
    ASSERT_EQ(st.kind, OracleKind::NonEmpty);
    if (st.exact_witness) EXPECT_TRUE(z.contains(st.witness));
  }
}

TEST(VarietyDim, Examples) {
  EXPECT_EQ(variety_dim_estimate(S("x1^2 + x2^2 - 1 = 0", 2), {}, 1).value, 1);
  EXPECT_EQ(variety_dim_estimate(S("x1 = 0 && x2 = 0", 2), {}, 1).value, 0);
  DimOptions box1;
  box1.box = 1;
  auto cone = variety_dim_estimate(S("x1^2 + x2^2 - x3^2 = 0", 3), box1, 1);
  EXPECT_EQ(cone.value, 2);
  EXPECT_EQ(cone.confidence, Confidence::HighConfidence);
  EXPECT_EQ(variety_dim_estimate(S("x1^2 + x2^2 + 1 = 0", 2), {}, 1).value, -1);
  auto whole = variety_dim_estimate(S("0 = 0", 3), {}, 1);
  EXPECT_EQ(whole.value, 3);
  EXPECT_EQ(whole.confidence, Confidence::ClosedFormOracle);
}

TEST(VarietyDim, FlatEquationsDoNotFakeDimension) {
  EXPECT_EQ(variety_dim_estimate(S("x1^4 = 0 && x2^4 = 0", 2), {}, 3).value, 0);
  EXPECT_EQ(variety_dim_estimate(S("x1^4 + x2^4 = 0", 3), {}, 3).value, 1);
  EXPECT_EQ(variety_dim_estimate(S("x1^2*x2^2 = 0 && x1^3 = 0", 3), {}, 3).value, 2);
}

// Unions never lower the estimate; crossing with an interval adds one.
TEST(VarietyDim, UnionAndProduct) {
  std::vector<std::string> pieces = {"x1 - 1/2 = 0", "x1^2 + x2^2 - 1 = 0", "x1 = 0 && x2 = 0 && x3 = 0",
                                     "x1 - x2 = 0 && x3 = 0", "x1*x2 - 1 = 0 && x3 - 1 = 0", "x3^2 + 1 = 0",
                                     "x1^2 + x2^2 + x3^2 - 4 = 0"};
  Rng rng = make_rng(9);
  std::vector<int> dims;
  for (const auto& s : pieces) dims.push_back(variety_dim_estimate(S(s, 3), {}, 1).value);
  EXPECT_EQ(dims, (std::vector<int>{2, 2, 0, 1, 1, -1, 2}));
  for (int it = 0; it < 100; ++it) {
    int i = rng() % pieces.size(), j = rng() % pieces.size();
    auto u = S(pieces[i], 3).unite(S(pieces[j], 3));
    int du = variety_dim_estimate(u, {}, it).value;
    EXPECT_GE(du, dims[i]);
    EXPECT_GE(du, dims[j]);
  }
  // Z x [-1, 1] in one more variable
  for (const auto& [base, extra] : std::vector<std::pair<std::string, std::string>>{
           {"x1^2 + x2^2 - 1 = 0", "x1^2 + x2^2 - 1 = 0 && 1 - x3^2 > 0"},
           {"x1 = 0 && x2 = 0", "x1 = 0 && x2 = 0 && 1 - x3^2 > 0"},
           {"x1 - x2^2 = 0", "x1 - x2^2 = 0 && 1 - x3^2 > 0"}}) {
    EXPECT_EQ(variety_dim_estimate(S(extra, 3), {}, 4).value, variety_dim_estimate(S(base, 2), {}, 4).value + 1);
  }
}

TEST(SliceSupDim, Examples) {
  SliceOptions opt;
  auto a = slice_sup_dim(P("x1*x2", 3), 1, 2, opt, 1);
  EXPECT_EQ(a.value, 2);
  ASSERT_TRUE(a.witness_eta.has_value());
  EXPECT_EQ((*a.witness_eta)[0], Rational(0));
  EXPECT_EQ(slice_sup_dim(P("x2^2 + x3^2", 3), 1, 2, opt, 1).value, 0);
  EXPECT_EQ(slice_sup_dim(P("x2^2 + x3^2 - x1", 3), 1, 2, opt, 1).value, 1);
}

TEST(SliceSupDim, DominatesSampledFibres) {
  Poly p = P("x1*x3 - x2*x4 + x1^2", 4);
  SliceOptions opt;
  auto sup = slice_sup_dim(p, 2, 2, opt, 3);
  for (auto eta : std::vector<std::vector<Rational>>{{0, 0}, {1, 0}, {1, 2}, {-1, 1}}) {
    SemiAlgebraicSet z(2);
    z.add_cell(Cell{{p.fix_leading(eta)}, {}});
    EXPECT_GE(sup.value, variety_dim_estimate(z, opt.dim, 1).value);
  }
}

TEST(SliceSupDim, MonotoneInBudget) {
  Poly p = P("x1*x3 + x2*x3^2 - x2*x4", 4);
  int prev = -1;
  for (int budget : {0, 8, 16, 32}) {
    SliceOptions opt;
    opt.budget = budget;
    int v = slice_sup_dim(p, 2, 2, opt, 7).value;
    EXPECT_GE(v, prev);
    prev = v;
  }
}

}  // namespace
}  // namespace quadinv
