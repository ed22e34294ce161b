#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "quadinv/numpoly.hpp"

namespace quadinv {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

using Rng = std::mt19937_64;
inline Rng make_rng(std::uint64_t seed, std::uint64_t index = 0) { return Rng(mix_seed(seed, index)); }
double uniform(Rng& rng, double lo, double hi);

struct LmOptions {
  int max_iter = 100;
  double target = 1e-14;  // stop once max |F| drops below this
  double box = 0;         // clamp |x_i| <= box when positive
};

// Damped Gauss-Newton on F(x) = 0 over the variables listed in free
// (all variables when free is empty). Returns max |F| at the final x.
double levenberg_marquardt(const NumSystem& f, std::vector<double>& x, const std::vector<int>& free,
                           const LmOptions& opt);

double max_abs_residual(const NumSystem& f, const std::vector<double>& x);

// Real roots of sum c_i t^i from the companion matrix, polished by Newton steps.
std::vector<double> real_roots(const std::vector<double>& c);

struct NelderMeadResult {
  std::vector<double> x;
  double value;
};

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             std::vector<double> x0, double step, int max_evals, double ftol);

}  // namespace quadinv
