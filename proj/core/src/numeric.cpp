#include "quadinv/numeric.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

namespace quadinv {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 over the pair
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double uniform(Rng& rng, double lo, double hi) {
  // avoids std::uniform_real_distribution, whose output is not portable
  double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

double max_abs_residual(const NumSystem& f, const std::vector<double>& x) {
  std::vector<double> r(f.size());
  f.eval(x.data(), r.data());
  double m = 0;
  for (double v : r) m = std::max(m, std::fabs(v));
  return m;
}

double levenberg_marquardt(const NumSystem& f, std::vector<double>& x, const std::vector<int>& free_in,
                           const LmOptions& opt) {
  const int n = f.nvars();
  const int m = f.size();
  std::vector<int> free = free_in;
  if (free.empty()) {
    free.resize(n);
    std::iota(free.begin(), free.end(), 0);
  }
  const int nf = static_cast<int>(free.size());
  std::vector<double> r(m), jac(static_cast<std::size_t>(m) * n), rn(m);
  f.eval_jac(x.data(), r.data(), jac.data());
  auto sq = [](const std::vector<double>& v) {
    double s = 0;
    for (double a : v) s += a * a;
    return s;
  };
  auto mx = [](const std::vector<double>& v) {
    double s = 0;
    for (double a : v) s = std::max(s, std::fabs(a));
    return s;
  };
  if (m == 0) return 0.0;
  double cost = sq(r);
  double lambda = 1e-3;
  Eigen::MatrixXd J(m, nf);
  std::vector<double> xn(n);
  for (int it = 0; it < opt.max_iter; ++it) {
    if (mx(r) < opt.target) break;
    for (int i = 0; i < m; ++i)
      for (int k = 0; k < nf; ++k) J(i, k) = jac[static_cast<std::size_t>(i) * n + free[k]];
    Eigen::VectorXd rv = Eigen::Map<Eigen::VectorXd>(r.data(), m);
    Eigen::MatrixXd A = J.transpose() * J;
    Eigen::VectorXd g = J.transpose() * rv;
    double scale = std::max(A.diagonal().maxCoeff(), 1e-12);
    bool improved = false;
    while (lambda < 1e14) {
      Eigen::MatrixXd B = A;
      for (int k = 0; k < nf; ++k) B(k, k) += lambda * std::max(A(k, k), 1e-9 * scale);
      Eigen::VectorXd delta = B.ldlt().solve(-g);
      if (!delta.allFinite()) {
        lambda *= 10;
        continue;
      }
      xn = x;
      for (int k = 0; k < nf; ++k) {
        double v = x[free[k]] + delta(k);
        if (opt.box > 0) v = std::clamp(v, -opt.box, opt.box);
        xn[free[k]] = v;
      }
      f.eval(xn.data(), rn.data());
      double cn = sq(rn);
      if (std::isfinite(cn) && cn < cost) {
        double step = 0;
        for (int k = 0; k < nf; ++k) step = std::max(step, std::fabs(xn[free[k]] - x[free[k]]));
        x = xn;
        cost = cn;
        lambda = std::max(lambda / 3, 1e-12);
        improved = true;
        f.eval_jac(x.data(), r.data(), jac.data());
        if (step < 1e-16) it = opt.max_iter;
        break;
      }
      lambda *= 4;
    }
    if (!improved) break;
  }
  return mx(r);
}

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             std::vector<double> x0, double step, int max_evals, double ftol) {
  const int n = static_cast<int>(x0.size());
  if (n == 0) return {x0, f(x0)};
  std::vector<std::vector<double>> s(n + 1, x0);
  std::vector<double> fv(n + 1);
  for (int i = 0; i < n; ++i) s[i + 1][i] += step;
  int evals = 0;
  for (int i = 0; i <= n; ++i) {
    fv[i] = f(s[i]);
    ++evals;
  }
  std::vector<int> order(n + 1);
  std::vector<double> c(n), xr(n), xe(n), xc(n);
  while (evals < max_evals) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return fv[a] < fv[b]; });
    int best = order[0], worst = order[n], second = order[n - 1];
    if (fv[worst] - fv[best] <= ftol * (std::fabs(fv[best]) + 1e-300) || fv[best] <= 0) break;
    std::fill(c.begin(), c.end(), 0.0);
    for (int i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (int k = 0; k < n; ++k) c[k] += s[i][k] / n;
    }
    for (int k = 0; k < n; ++k) xr[k] = c[k] + (c[k] - s[worst][k]);
    double fr = f(xr);
    ++evals;
    if (fr < fv[best]) {
      for (int k = 0; k < n; ++k) xe[k] = c[k] + 2 * (c[k] - s[worst][k]);
      double fe = f(xe);
      ++evals;
      if (fe < fr) {
        s[worst] = xe;
        fv[worst] = fe;
      } else {
        s[worst] = xr;
        fv[worst] = fr;
      }
    } else if (fr < fv[second]) {
      s[worst] = xr;
      fv[worst] = fr;
    } else {
      bool outside = fr < fv[worst];
      for (int k = 0; k < n; ++k)
        xc[k] = outside ? c[k] + 0.5 * (xr[k] - c[k]) : c[k] + 0.5 * (s[worst][k] - c[k]);
      double fc = f(xc);
      ++evals;
      if (fc < std::min(fr, fv[worst])) {
        s[worst] = xc;
        fv[worst] = fc;
      } else {
        for (int i = 0; i <= n; ++i) {
          if (i == best) continue;
          for (int k = 0; k < n; ++k) s[i][k] = s[best][k] + 0.5 * (s[i][k] - s[best][k]);
          fv[i] = f(s[i]);
          ++evals;
        }
      }
    }
  }
  int best = static_cast<int>(std::min_element(fv.begin(), fv.end()) - fv.begin());
  return {s[best], fv[best]};
}

std::vector<double> real_roots(const std::vector<double>& c) {
  std::vector<double> a = c;
  while (!a.empty() && std::fabs(a.back()) < 1e-300) a.pop_back();
  std::vector<double> out;
  int n = static_cast<int>(a.size()) - 1;
  if (n < 1) return out;
  if (n == 1) return {-a[0] / a[1]};
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1;
  for (int i = 0; i < n; ++i) comp(i, n - 1) = -a[i] / a[n];
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
  for (int i = 0; i < n; ++i) {
    auto ev = es.eigenvalues()(i);
    if (std::fabs(ev.imag()) >= 1e-7 * (1 + std::fabs(ev.real()))) continue;
    double t = ev.real();
    for (int it = 0; it < 3; ++it) {
      double f = 0, df = 0;
      for (int k = n; k >= 0; --k) {
        df = df * t + f;
        f = f * t + a[k];
      }
      if (df == 0) break;
      double step = f / df;
      if (!std::isfinite(step) || std::fabs(step) > 1e-6 * (1 + std::fabs(t))) break;
      t -= step;
    }
    out.push_back(t);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace quadinv
