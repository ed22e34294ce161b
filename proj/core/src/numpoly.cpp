#include "quadinv/numpoly.hpp"

#include <algorithm>

#include "quadinv/error.hpp"

namespace quadinv {

NumPoly::NumPoly(const Poly& p) : nvars_(p.nvars()), maxdeg_(p.nvars(), 0) {
  for (const auto& [e, c] : p.terms()) {
    coef_.push_back(c.get_d());
    for (int i = 0; i < nvars_; ++i) {
      exps_.push_back(e[i]);
      maxdeg_[i] = std::max(maxdeg_[i], e[i]);
    }
  }
  unsigned m = 0;
  for (unsigned v : maxdeg_) m = std::max(m, v);
  stride_ = m + 1;
}

namespace {
thread_local std::vector<double> pw_;
}

void NumPoly::powers(const double* x) const {
  if (pw_.size() < stride_ * nvars_) pw_.resize(stride_ * nvars_);
  for (int i = 0; i < nvars_; ++i) {
    double* row = &pw_[i * stride_];
    row[0] = 1.0;
    for (unsigned k = 1; k <= maxdeg_[i]; ++k) row[k] = row[k - 1] * x[i];
  }
}

double NumPoly::eval(const double* x) const {
  if (coef_.empty()) return 0.0;
  powers(x);
  double s = 0;
  const unsigned* e = exps_.data();
  for (std::size_t t = 0; t < coef_.size(); ++t, e += nvars_) {
    double v = coef_[t];
    for (int i = 0; i < nvars_; ++i) {
      if (e[i]) v *= pw_[i * stride_ + e[i]];
    }
    s += v;
  }
  return s;
}

double NumPoly::eval_grad(const double* x, double* grad) const {
  for (int i = 0; i < nvars_; ++i) grad[i] = 0;
  if (coef_.empty()) return 0.0;
  powers(x);
  double s = 0;
  const unsigned* e = exps_.data();
  for (std::size_t t = 0; t < coef_.size(); ++t, e += nvars_) {
    double v = coef_[t];
    for (int i = 0; i < nvars_; ++i) {
      if (e[i]) v *= pw_[i * stride_ + e[i]];
    }
    s += v;
    for (int i = 0; i < nvars_; ++i) {
      if (!e[i]) continue;
      double g = coef_[t] * e[i] * pw_[i * stride_ + e[i] - 1];
      for (int j = 0; j < nvars_; ++j) {
        if (j != i && e[j]) g *= pw_[j * stride_ + e[j]];
      }
      grad[i] += g;
    }
  }
  return s;
}

NumSystem::NumSystem(const std::vector<Poly>& ps, int nvars) : nvars_(nvars) {
  for (const auto& p : ps) {
    if (p.nvars() != nvars) throw DimensionError("system variable count mismatch");
    polys_.emplace_back(p);
  }
}

void NumSystem::eval(const double* x, double* out) const {
  for (std::size_t i = 0; i < polys_.size(); ++i) out[i] = polys_[i].eval(x);
}

void NumSystem::eval_jac(const double* x, double* out, double* jac) const {
  for (std::size_t i = 0; i < polys_.size(); ++i) out[i] = polys_[i].eval_grad(x, jac + i * nvars_);
}

}  // namespace quadinv
