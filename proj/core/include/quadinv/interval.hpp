#pragma once

#include <vector>

#include "quadinv/poly.hpp"

namespace quadinv {

// Closed interval with outward rounding after every operation.
struct Interval {
  double lo = 0;
  double hi = 0;

  Interval() = default;
  Interval(double v) : lo(v), hi(v) {}
  Interval(double l, double h) : lo(l), hi(h) {}

  bool contains(double v) const { return lo <= v && v <= hi; }
  double width() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }
};

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator*(const Interval& a, const Interval& b);
Interval pow(const Interval& a, unsigned k);

// Natural interval extension of p over a box.
Interval eval(const Poly& p, const std::vector<Interval>& box);

}  // namespace quadinv
