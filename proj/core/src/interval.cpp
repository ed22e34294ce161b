#include "quadinv/interval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace quadinv {

namespace {

double down(double v) { return std::nextafter(v, -std::numeric_limits<double>::infinity()); }
double up(double v) { return std::nextafter(v, std::numeric_limits<double>::infinity()); }

}  // namespace

Interval operator+(const Interval& a, const Interval& b) { return {down(a.lo + b.lo), up(a.hi + b.hi)}; }

Interval operator-(const Interval& a, const Interval& b) { return {down(a.lo - b.hi), up(a.hi - b.lo)}; }

Interval operator*(const Interval& a, const Interval& b) {
  double p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {down(*std::min_element(p, p + 4)), up(*std::max_element(p, p + 4))};
}

Interval pow(const Interval& a, unsigned k) {
  if (k == 0) return Interval(1.0);
  Interval r = a;
  for (unsigned i = 1; i < k; ++i) r = r * a;
  if (k % 2 == 0) {
    // even powers are nonnegative and monotone in |x|
    double l = std::fabs(a.lo), h = std::fabs(a.hi);
    double mn = a.contains(0) ? 0.0 : std::min(l, h);
    double mx = std::max(l, h);
    Interval e(1.0), f(1.0);
    for (unsigned i = 0; i < k; ++i) {
      e = e * Interval(mn);
      f = f * Interval(mx);
    }
    r = Interval(a.contains(0) ? 0.0 : e.lo, f.hi);
  }
  return r;
}

Interval eval(const Poly& p, const std::vector<Interval>& box) {
  Interval s(0.0);
  for (const auto& [e, c] : p.terms()) {
    // coefficient enclosure: the double nearest c widened by one ulp
    double cd = c.get_d();
    Interval t(down(cd), up(cd));
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i]) t = t * pow(box[i], e[i]);
    }
    s = s + t;
  }
  return s;
}

}  // namespace quadinv
