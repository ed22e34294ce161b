#include <gtest/gtest.h>

#include <cmath>

#include "quadinv/error.hpp"
#include "quadinv/exponents.hpp"
#include "quadinv/fixtures.hpp"

using namespace quadinv;

namespace {

Rational q(long a, long b = 1) { return make_rational(a, b); }

// Closed-form X values for the paraboloid.
std::map<int, int> paraboloid_x(int d, int k) {
  std::map<int, int> x;
  for (int m = 0; m <= d + 1; ++m) x[m] = x_paraboloid_closed(d, k, m);
  return x;
}

double dec_codim2_double(int k, int d, double p) {
  double s = 0.5 - 1 / p;
  double a = (k - 2) * s;
  double b = std::min(2 * (k - 2) * s - 2 / p, (d + 1) * s - 2 / p);
  double c = (k - 2) - (2.0 * (k - 2) + 4) / p;
  return std::max({0.0, a, b, c});
}

double dec_paraboloid_double(int k, double p) {
  return std::max({0.0, (k - 2) * (0.5 - 1 / p), (k - 2) - 2.0 * (k - 1) / p});
}

}  // namespace

TEST(DecExponent, ParaboloidExamples) {
  for (long p : {2, 3, 7, 100}) EXPECT_EQ(dec_exp_paraboloid_slice(2, 3, q(p)), 0);
  EXPECT_EQ(dec_exp_paraboloid_slice(4, 3, q(4)), q(1, 2));
  // large p: the first term approaches (k - 2)/2, the maximum approaches k - 2
  Rational p = q(1000000);
  EXPECT_LT(abs(2 * (q(1, 2) - 1 / p) - 1), q(1, 1000));
  EXPECT_LT(abs(dec_exp_paraboloid_slice(4, 3, p) - 2), q(1, 1000));
  EXPECT_THROW(dec_exp_paraboloid_slice(1, 3, q(3)), RangeError);
  EXPECT_THROW(dec_exp_paraboloid_slice(3, 3, q(1)), RangeError);
}

TEST(DecExponent, Codim2Examples) {
  for (int k = 3; k <= 5; ++k) EXPECT_EQ(dec_exp_codim2_slice(k, 4, q(2)), 0);
  EXPECT_EQ(dec_exp_codim2_slice(3, 4, q(10, 3)), q(1, 5));
  EXPECT_THROW(dec_exp_codim2_slice(2, 4, q(3)), RangeError);
  EXPECT_THROW(dec_exp_codim2_slice(6, 4, q(3)), RangeError);
}

TEST(DecExponent, AgreesWithFloatingEvaluation) {
  for (int d = 2; d <= 12; ++d)
    for (int k = 3; k <= d + 1; ++k)
      for (long num = 200; num <= 2000; num += 37) {
        Rational p = q(num, 100);
        EXPECT_NEAR(dec_exp_codim2_slice(k, d, p).get_d(), dec_codim2_double(k, d, p.get_d()), 1e-12);
        EXPECT_NEAR(dec_exp_paraboloid_slice(k, d, p).get_d(), dec_paraboloid_double(k, p.get_d()), 1e-12);
      }
}

TEST(DecExponent, Codim2BoundaryAtGoodCriticalExponent) {
  // with k = d + 1 the slice exponent meets d - (2d+4)/p exactly at the good critical p
  for (int d : {2, 3}) {
    Rational p = critical_p_good(d).value;
    EXPECT_EQ(dec_exp_codim2_slice(d + 1, d, p), d - (2 * d + 4) / p) << "d = " << d;
  }
}

TEST(CriticalP, Paraboloid) {
  CriticalP c = critical_p_paraboloid(2);
  EXPECT_EQ(c.value, q(10, 3));
  EXPECT_EQ(c.argmin_k, 3);
  EXPECT_EQ(critical_p_paraboloid(1).value, 4);
  EXPECT_EQ(critical_p_paraboloid(1).argmin_k, 2);
}

TEST(CriticalP, ParaboloidAsymptotics) {
  for (int d = 10; d <= 200; ++d) {
    int k = 2 * (d + 2) / 3;
    Rational a = make_rational(2 * k, k - 1);
    Rational b = make_rational(2 * (2 * d - k + 4), 2 * d - k + 2);
    Rational pk = std::max(a, b);
    EXPECT_EQ(critical_p_paraboloid(d).per_k.at(k), pk);
    EXPECT_LE(abs(d * (pk - 2) - 3), make_rational(10, d)) << "d = " << d;
    EXPECT_LE(abs(a - b), make_rational(50, static_cast<long>(d) * d)) << "d = " << d;
  }
}

TEST(CriticalP, Good) {
  CriticalP c = critical_p_good(4);
  EXPECT_EQ(c.value, q(10, 3));
  EXPECT_EQ(c.argmin_k, 4);
  for (int d = 10; d <= 200; ++d)
    EXPECT_LE(abs(d * (critical_p_good(d).value - 2) - 6), make_rational(20, d)) << "d = " << d;
  for (int d = 9; d <= 200; ++d) EXPECT_LT(critical_p_good(d).value, tomas_stein_wellcurved(d));
  for (int d = 2; d <= 200; ++d) EXPECT_GE(critical_p_good(d).value, critical_p_paraboloid(d).value);
}

TEST(CriticalP, TiesGoToSmallerK) {
  for (int d = 1; d <= 60; ++d) {
    CriticalP c = critical_p_paraboloid(d);
    for (const auto& [k, v] : c.per_k) {
      EXPECT_GE(v, c.value);
      if (v == c.value) {
        EXPECT_EQ(k, c.argmin_k);
        break;
      }
    }
  }
}

TEST(CriticalP, ReferenceLines) {
  for (int d = 2; d <= 6; ++d) EXPECT_EQ(critical_p_maxcodim(d), 2 * d + 2);
  EXPECT_EQ(tomas_stein_wellcurved(8), 3);
  EXPECT_EQ(conjectured_wellcurved(4), 3);
}

// The critical exponent is the least p for which the verification conditions
// pass for some k with the closed-form paraboloid X values.
TEST(Verify, ParaboloidCriticalExponentIsSharp) {
  Rational eps = q(1, 1000000);
  for (int d = 1; d <= 50; ++d) {
    CriticalP c = critical_p_paraboloid(d);
    bool some = false;
    for (int k = 2; k <= d + 1; ++k) {
      VerifyReport at = verify_exponent_conditions(dec_exp_paraboloid_slice, paraboloid_x(d, k), d, 1, k, c.value);
      some = some || at.ok;
      EXPECT_EQ(at.ok, c.per_k.at(k) == c.value) << "d = " << d << " k = " << k;
      VerifyReport below =
          verify_exponent_conditions(dec_exp_paraboloid_slice, paraboloid_x(d, k), d, 1, k, c.value - eps);
      EXPECT_FALSE(below.ok) << "d = " << d << " k = " << k;
      // each k passes exactly from its own threshold on
      EXPECT_TRUE(
          verify_exponent_conditions(dec_exp_paraboloid_slice, paraboloid_x(d, k), d, 1, k, c.per_k.at(k)).ok);
    }
    EXPECT_TRUE(some);
  }
}

TEST(Verify, ParaboloidBelowCriticalFailsForEveryK) {
  Rational p = q(10, 3) - q(1, 100);
  for (int k = 2; k <= 3; ++k)
    EXPECT_FALSE(verify_exponent_conditions(dec_exp_paraboloid_slice, paraboloid_x(2, k), 2, 1, k, p).ok);
}

TEST(Verify, ZeroRowNeverViolates) {
  std::map<int, int> x{{0, 0}, {1, 0}, {2, 0}, {3, 0}};
  VerifyReport r = verify_exponent_conditions(dec_exp_paraboloid_slice, x, 2, 1, 2, q(1000));
  EXPECT_EQ(r.violating_m, (std::vector<int>{1, 2, 3}));
  EXPECT_FALSE(r.ok);
}

TEST(Verify, IncompleteTableRejected) {
  std::map<int, int> x{{0, 0}, {1, 1}};
  EXPECT_THROW(verify_exponent_conditions(dec_exp_paraboloid_slice, x, 2, 1, 2, q(4)), Error);
}

TEST(Verify, GoodFixtureAboveCritical) {
  XTable tab = x_table(fixtures::good_d4().tuple(), 4, SliceOptions{}, 5);
  VerifyReport r = verify_exponent_conditions(dec_exp_codim2_slice, tab, 4, 2, 4, q(10, 3) + q(1, 100));
  EXPECT_TRUE(r.ok) << r.to_string();
}

TEST(Output, TablesAreStable) {
  std::string a = critical_table_json("paraboloid", 1, 6);
  EXPECT_EQ(a, critical_table_json("paraboloid", 1, 6));
  EXPECT_NE(a.find("\"p_c\": \"10/3\""), std::string::npos);
  std::string csv = critical_table_csv("good", 4, 4);
  EXPECT_NE(csv.find("good,4,10/3,4,4,10/3"), std::string::npos);
  std::string plot = plot_data_csv(2, 10);
  EXPECT_EQ(std::count(plot.begin(), plot.end(), '\n'), 10);
  EXPECT_THROW(critical_table_csv("sphere", 2, 3), Error);
}
