#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "quadinv/invariants.hpp"
#include "quadinv/rational.hpp"

namespace quadinv {

struct ExponentQuery {
  int d = 0;
  int n = 0;
  int k = 0;
  Rational p;
};

struct CriticalP {
  Rational value;
  int argmin_k = 0;
  std::map<int, Rational> per_k;
};

// Growth exponents of the decoupling constant on slices, clamped below at 0.
Rational dec_exp_paraboloid_slice(int k, int d, const Rational& p);
Rational dec_exp_codim2_slice(int k, int d, const Rational& p);

CriticalP critical_p_paraboloid(int d);
CriticalP critical_p_good(int d);
Rational critical_p_maxcodim(int d);
Rational tomas_stein_wellcurved(int d);
Rational conjectured_wellcurved(int d);

using DecSliceFn = std::function<Rational(int k, int d, const Rational& p)>;

struct VerifyReport {
  bool ok = false;
  bool dec_ok = false;
  Rational dec;
  Rational dec_bound;
  std::vector<int> violating_m;
  std::string to_string() const;
};

// (i) dec(k, d, p) <= d - (2d + 2n)/p and (ii) 2m/p <= X(m) for every m = 0..d+n.
VerifyReport verify_exponent_conditions(const DecSliceFn& dec, const std::map<int, int>& x, int d, int n, int k,
                                        const Rational& p);
VerifyReport verify_exponent_conditions(const DecSliceFn& dec, const XTable& x, int d, int n, int k,
                                        const Rational& p);

// Rows d, p_c, argmin k, then the value for each k.
std::string critical_table_csv(const std::string& family, int d_min, int d_max);
std::string critical_table_json(const std::string& family, int d_min, int d_max);
// Columns d, paraboloid, good, 2+4/d, 2+6/d, 2+8/d as decimals.
std::string plot_data_csv(int d_min, int d_max);

}  // namespace quadinv
