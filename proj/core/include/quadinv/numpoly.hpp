#pragma once

#include <vector>

#include "quadinv/poly.hpp"

namespace quadinv {

// Double-precision copy of a Poly for fast evaluation and gradients.
class NumPoly {
 public:
  NumPoly() = default;
  explicit NumPoly(const Poly& p);

  int nvars() const { return nvars_; }
  bool empty() const { return coef_.empty(); }
  double eval(const double* x) const;
  // Returns the value and writes the gradient into grad.
  double eval_grad(const double* x, double* grad) const;

 private:
  void powers(const double* x) const;

  int nvars_ = 0;
  std::vector<double> coef_;
  std::vector<unsigned> exps_;  // row-major, nvars_ per term
  std::vector<unsigned> maxdeg_;
  std::size_t stride_ = 0;
};

// A list of polynomials evaluated together.
class NumSystem {
 public:
  NumSystem() = default;
  NumSystem(const std::vector<Poly>& ps, int nvars);

  int nvars() const { return nvars_; }
  int size() const { return static_cast<int>(polys_.size()); }
  const NumPoly& operator[](int i) const { return polys_[i]; }

  void eval(const double* x, double* out) const;
  // jac is row-major size() x nvars().
  void eval_jac(const double* x, double* out, double* jac) const;

 private:
  int nvars_ = 0;
  std::vector<NumPoly> polys_;
};

}  // namespace quadinv
