#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "quadinv/numpoly.hpp"
#include "quadinv/poly.hpp"

namespace quadinv {

struct CoveringConfig {
  double c_dd = 0;        // C_{d,D}; 0 selects 64 d D^2
  double c_lambda = 64;   // C_{d,D,Lambda}
  int lambda = 2;
  int max_halvings = 6;
  int audit_random = 4;   // audit base points per graph besides the center and the corners
  long full_net_limit = 2000000;  // grid lines per level and pivot for a full net
  int chain_samples = 2000;
  long long max_draws = 400000000;
  std::size_t report_boxes = 5000;
  std::size_t audit_csv_graphs = 2000;
  std::size_t svg_points = 3000;
  std::size_t svg_boxes = 3000;

  double c_dd_for(int d, int deg) const { return c_dd > 0 ? c_dd : 64.0 * d * deg * deg; }
};

struct ScaleLadder {
  double K = 0;
  int Ap = 0;
  int D = 0;
  std::vector<double> levels;  // K_1 .. K_{D+1}, with K_{D+1} = K

  double at(int j) const { return levels.at(j - 1); }
};

// K_j = 2^round(log2 K * (Ap+1)^(j-D-1)) for j <= D and K_{D+1} = K.
ScaleLadder scale_ladder(double K, int D, int Ap);

// A polynomial with its derivatives and, for each coordinate, its coefficients
// as a polynomial in that coordinate.
struct PolyData {
  Poly q;
  int d = 0;
  NumPoly value;
  std::vector<NumPoly> grad;
  std::vector<std::vector<NumPoly>> hess;
  std::vector<std::vector<NumPoly>> pivot_coeffs;  // [pivot][power]

  explicit PolyData(const Poly& p);
  double eval(const std::vector<double>& x) const { return value.eval(x.data()); }
  std::vector<double> gradient(const std::vector<double>& x) const;
  // Real roots of s -> Q(x with x_pivot = s) inside [lo, hi].
  std::vector<double> pivot_roots(const std::vector<double>& x, int pivot, double lo, double hi) const;
};

struct AuditRow {
  std::string bound;
  std::vector<double> point;
  double limit = 0;
  double measured = 0;
  bool lower = false;  // measured must be >= limit
  bool pass = true;
  double margin() const { return lower ? measured - limit : limit - measured; }
};

// Graph of psi over a base cube, psi solving Q(y, psi(y)) = 0 in the pivot coordinate.
struct RegularGraph {
  int k = 0;
  int level = 0;
  int pivot = 0;
  double K_j = 0;
  double rho = 0;           // base cube side
  double height = 0;        // pivot interval length
  int lambda = 2;
  double C = 0;             // regularity constant
  double c_effective = 0;   // C_{d,D} after halvings
  std::vector<double> center;
  double pivot_lo = 0;
  double pivot_hi = 0;
  std::shared_ptr<const PolyData> q;
  std::vector<AuditRow> audit;
  bool audit_pass = true;

  bool base_contains(const std::vector<double>& x) const;
  bool box_contains(const std::vector<double>& x) const;
  // Roots over the base point of x inside the pivot interval.
  std::vector<double> roots(const std::vector<double>& x) const;
  // The graph value over the base point of x, if it lies over the base cube.
  std::optional<double> psi(const std::vector<double>& x) const;
};

// Throws Error when the pivot precondition fails or the root over some audit
// point stays non-unique after all halvings.
RegularGraph extract_graph(const std::shared_ptr<const PolyData>& q, const std::vector<double>& x, double K_j,
                           int pivot, int degree, const CoveringConfig& cfg, int level = 0);
RegularGraph extract_graph(const Poly& q, const std::vector<double>& x, double K_j, int pivot,
                           const CoveringConfig& cfg = {});

struct ChainResult {
  std::vector<Exponents> alphas;  // alphas[j-1] = alpha_j, |alpha_j| = D - j
  double miss_rate = 1;
  bool verified = false;
  int chains_tried = 0;
};

// Searches increasing multi-index chains; the first one whose derivative zero
// sets cover every sample (within K_j^-Ap) wins, else the best one.
ChainResult derivative_pivot_search(const Poly& p, const ScaleLadder& ladder,
                                    const std::vector<std::vector<double>>& samples);

struct LevelReport {
  int j = 0;
  double K_j = 0;
  Exponents alpha;
  std::string q;
  double width = 0;   // K_j^-Ap
  double side = 0;    // nominal (C_{d,D} K_j)^-1
  double height = 0;  // d C_{d,D,Lambda} side
  std::string net_mode;
  long candidates = 0;
  long extraction_failures = 0;
  std::vector<RegularGraph> graphs;
  int max_overlap = 0;
  long audit_failures = 0;
  double c_effective_max = 0;
};

struct CoveringReport {
  std::string poly;  // normalized
  int d = 0;
  int degree = 0;
  double K = 0;
  int Ap = 0;
  std::uint64_t seed = 0;
  long samples_requested = 0;
  long long draws = 0;
  bool empty = false;
  double c_dd = 0;
  double c_lambda = 0;
  ScaleLadder ladder;
  ChainResult chain;
  std::vector<LevelReport> levels;
  std::vector<std::vector<double>> samples;
  std::vector<double> ratio;     // per sample: min vertical distance to a graph over it, over the width
  std::vector<int> cover_level;  // per sample: level attaining the minimum, 0 if none
  long covered = 0;
  double covered_fraction = 0;
  int max_overlap = 0;
  bool overlap_ok = true;
  bool audits_pass = true;
  long uniqueness_violations = 0;

  // Fraction of samples covered when every neighborhood width is multiplied by scale.
  double covered_fraction_at(double scale) const;
  bool grad_and_pivot_audits_pass() const;
};

// Rejection samples of {|P| < 1/K} in the unit cube.
std::vector<std::vector<double>> sample_sublevel(const Poly& p, double K, long n, std::uint64_t seed,
                                                 long long max_draws, long long* draws = nullptr);

CoveringReport cover_sublevel(const Poly& p, double K, int Ap, long samples, std::uint64_t seed,
                              const CoveringConfig& cfg = {});
// net_seeds: extra points whose neighborhoods a local net must reach.
CoveringReport cover_sublevel(const Poly& p, double K, int Ap, long samples, std::uint64_t seed,
                              const CoveringConfig& cfg, const std::vector<std::vector<double>>& net_seeds);

std::string to_json(const CoveringReport& r, const CoveringConfig& cfg = {});
std::string audit_csv(const CoveringReport& r, const CoveringConfig& cfg = {});
// d = 2 only.
std::string to_svg(const CoveringReport& r, const CoveringConfig& cfg = {});

// Resultant of a and b with respect to variable var, as a polynomial in the
// remaining variables (renumbered in order).
Poly resultant(const Poly& a, const Poly& b, int var);

// Uniform samples of {|P_i| < 1/K for all i} in the unit cube (polynomials
// normalized), drawn by rejection inside the leaves of an interval
// subdivision down to cubes of side 2^-depth.
std::vector<std::vector<double>> sample_joint_sublevel(const std::vector<Poly>& ps, double K, long n,
                                                       std::uint64_t seed, int depth, long long max_draws,
                                                       long long* draws = nullptr, long* leaves = nullptr);

// One recursion step for Z = {P1 = 0, P2 = 0}. P1 is covered by graphs psi_B;
// for each pivot p the projection of Z is covered inside {Res_p(P1, P2) = 0}
// in one dimension less; the inner graph points y lift to (y, psi_B(y)).
struct LiftedPiece {
  int pivot = 0;
  int outer_level = 0;
  int outer_graph = 0;
  int inner_level = 0;
  int inner_graph = 0;
  std::vector<double> point;  // first certified lifted point
};

struct RecursionReport {
  CoveringReport outer;
  std::vector<std::string> resultants;               // per pivot
  std::vector<std::optional<CoveringReport>> inner;  // per pivot, empty when the resultant is constant
  int depth = 0;
  long leaves = 0;
  long long draws = 0;
  bool empty = false;
  std::vector<std::vector<double>> samples;
  std::vector<double> ratio;  // per sample: distance to a lifted point over the outer width
  std::vector<LiftedPiece> pieces;
  long covered = 0;
  double covered_fraction = 0;
};

RecursionReport cover_intersection(const Poly& p1, const Poly& p2, double K, int Ap, long samples,
                                   std::uint64_t seed, const CoveringConfig& cfg = {});
std::string to_json(const RecursionReport& r, const CoveringConfig& cfg = {});

}  // namespace quadinv
