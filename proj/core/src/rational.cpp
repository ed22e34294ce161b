#include "quadinv/rational.hpp"

#include <cmath>

#include "quadinv/error.hpp"

namespace quadinv {

Rational parse_rational(const std::string& text) {
  Rational q;
  if (text.empty() || q.set_str(text, 10) != 0) {
    throw Error("invalid rational literal '" + text + "'");
  }
  if (q.get_den() == 0) throw Error("zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

double to_double(const Rational& q) { return q.get_d(); }

Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

Rational make_rational(long num, long den) {
  if (den == 0) throw Error("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::vector<Rational> convergents(double x, std::int64_t max_den) {
  std::vector<Rational> out;
  if (!std::isfinite(x)) return out;
  // p_{-1}/q_{-1} = 1/0, p_{-2}/q_{-2} = 0/1
  Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double r = x;
  for (int it = 0; it < 64; ++it) {
    double a = std::floor(r);
    if (std::fabs(a) > 1e15) break;
    Integer ai(a);
    Integer p2 = ai * p1 + p0;
    Integer q2 = ai * q1 + q0;
    if (q2 > max_den) break;
    out.emplace_back(p2, q2);
    out.back().canonicalize();
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    double frac = r - a;
    if (frac < 1e-15) break;
    r = 1.0 / frac;
  }
  return out;
}

Rational approximate(double x, std::int64_t max_den) {
  auto cs = convergents(x, max_den);
  if (cs.empty()) return Rational(0);
  return cs.back();
}

}  // namespace quadinv
