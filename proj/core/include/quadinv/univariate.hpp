#pragma once

#include <string>
#include <utility>
#include <vector>

#include "quadinv/rational.hpp"

namespace quadinv {

// Dense univariate polynomial, coefficients from the constant term up.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Rational> c);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational lead() const { return c_.empty() ? Rational(0) : c_.back(); }
  Rational eval(const Rational& x) const;

  UPoly derivative() const;
  UPoly monic() const;
  friend UPoly operator-(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  bool operator==(const UPoly& o) const { return c_ == o.c_; }

  std::string to_string() const;

 private:
  void trim();
  std::vector<Rational> c_;
};

// Quotient and remainder.
std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
UPoly gcd(UPoly a, UPoly b);

// Yun's algorithm: f = lc * prod s_i^i with s_i squarefree and pairwise coprime.
// Returns (s_i, i) for every nonconstant s_i.
std::vector<std::pair<UPoly, int>> squarefree_decomposition(const UPoly& f);

// Unique polynomial of degree < n through the n points (x_k, y_k).
UPoly interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys);

}  // namespace quadinv
