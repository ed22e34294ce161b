#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "quadinv/rational.hpp"

namespace quadinv {

using Exponents = std::vector<unsigned>;

unsigned total_degree(const Exponents& e);

// Graded lexicographic: lower total degree first, ties broken so that a
// larger power of an earlier variable sorts later.
struct GrlexLess {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

class Poly {
 public:
  using Terms = std::map<Exponents, Rational, GrlexLess>;

  Poly() = default;
  explicit Poly(int nvars) : nvars_(nvars) {}

  static Poly constant(int nvars, const Rational& c);
  static Poly variable(int nvars, int index);
  static Poly monomial(int nvars, const Exponents& e, const Rational& c);

  int nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;

  // -1 for the zero polynomial.
  int degree() const;
  int degree_in(int var) const;
  bool is_homogeneous(int deg) const;

  Rational coeff(const Exponents& e) const;
  void add_term(const Exponents& e, const Rational& c);

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Rational& c);
  Poly operator-() const;
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
  bool operator==(const Poly& o) const {
    return nvars_ == o.nvars_ && terms_ == o.terms_;
  }

  Poly pow(unsigned k) const;
  Poly derivative(int var) const;

  Rational eval(const std::vector<Rational>& x) const;
  double eval(const std::vector<double>& x) const;

  // Replaces variable i by images[i]; all images share a variable count,
  // which becomes the variable count of the result.
  Poly substitute(const std::vector<Poly>& images) const;

  // Fixes variables [0, values.size()) and renumbers the rest from 0.
  Poly fix_leading(const std::vector<Rational>& values) const;

  // Same polynomial viewed in a larger variable space starting at offset.
  Poly embed(int nvars, int offset) const;

  Rational l1_norm() const;

  // Canonical text, highest grlex term first; names are x1..xn unless given.
  std::string to_string() const;
  std::string to_string(const std::vector<std::string>& names) const;

 private:
  int nvars_ = 0;
  Terms terms_;
};

// Exact coefficient test.
bool is_identically_zero(const Poly& p);

// Evaluates on {1, ..., D+1}^n with D the total degree.
bool vanishes_on_grid(const Poly& p);

// Black-box variant: f is evaluated on {1, ..., D+1}^n where D bounds the total
// degree of the polynomial f computes. Sound for any upper bound D >= 0.
bool vanishes_on_grid(int nvars, int degree_bound,
                      const std::function<Rational(const std::vector<Rational>&)>& f);

// p divided by the l1 norm of its coefficients.
Poly normalize(const Poly& p);

// Grammar: variables x1..x<nvars>, operators + - * ^, integer and p/q
// literals, parentheses. No implicit multiplication.
Poly parse_poly(const std::string& text, int nvars);

}  // namespace quadinv

namespace quadinv {

// Parses text[begin, end); error positions refer to the whole text.
Poly parse_poly_range(const std::string& text, std::size_t begin, std::size_t end, int nvars);

}  // namespace quadinv
