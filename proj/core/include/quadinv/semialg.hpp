#pragma once

#include <climits>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "quadinv/poly.hpp"

namespace quadinv {

struct Cell {
  std::vector<Poly> equalities;    // P = 0
  std::vector<Poly> positivities;  // P > 0
};

// Finite union of cells over a common ambient dimension.
class SemiAlgebraicSet {
 public:
  explicit SemiAlgebraicSet(int dim = 0) : dim_(dim) {}

  int dim() const { return dim_; }
  const std::vector<Cell>& cells() const { return cells_; }
  void add_cell(Cell c);

  // Sum of degrees of the stored polynomials.
  int complexity() const;
  bool contains(const std::vector<Rational>& x) const;
  SemiAlgebraicSet unite(const SemiAlgebraicSet& o) const;

  // Cells joined by "||", conjuncts by "&&", relations "= 0" and "> 0".
  std::string to_string() const;
  static SemiAlgebraicSet parse(const std::string& text, int dim);

 private:
  int dim_;
  std::vector<Cell> cells_;
};

enum class OracleKind { NonEmpty, EmptyHeuristic, Inconclusive };

struct OracleStatus {
  OracleKind kind = OracleKind::Inconclusive;
  // Exact rational witness when kind is NonEmpty and exact_witness is set.
  std::vector<Rational> witness;
  bool exact_witness = false;
  int cell = -1;
  bool certified_in_box = false;
  double best_residual = 0;
  std::string note;
};

struct EmptinessBudget {
  double box = 4;
  int grid_points = 729;
  int starts = 32;
  int lm_iter = 100;
  double margin = 1e-4;
  int interval_boxes = 4096;
};

OracleStatus emptiness(const SemiAlgebraicSet& z, const EmptinessBudget& budget, std::uint64_t seed);

// Ordered from weakest to strongest.
enum class Confidence { Inconclusive = 0, HighConfidence = 1, ClosedFormOracle = 2 };
Confidence weakest(Confidence a, Confidence b);
const char* to_string(Confidence c);

struct SliceDimResult {
  int value = -1;
  Confidence confidence = Confidence::HighConfidence;
  std::optional<std::vector<Rational>> witness_eta;
};

struct DimOptions {
  double box = 4;
  int samples = 24;
  double tol = 1e-8;
  double miss_tol = 1e-5;
  int max_points = 4;
  std::vector<double> spacings{0.1, 0.03};
};

// Largest m such that some coordinate m-plane projection of the set
// contains a full 3^m grid patch of hit points; -1 when nothing is found.
SliceDimResult variety_dim_estimate(const SemiAlgebraicSet& z, const DimOptions& opt, std::uint64_t seed);

struct SliceOptions {
  DimOptions dim;
  int budget = 16;  // random eta samples
  double eta_box = 2;
  int hint_candidates = 8;
  bool pair_candidates = true;
};

using FiberFn = std::function<std::vector<Poly>(const std::vector<Rational>& eta)>;

// sup over eta of the dimension of {xi : all fiber(eta) = 0}. Stops early
// once a fibre of dimension > stop_above is found.
SliceDimResult slice_sup_dim(const FiberFn& fiber, int a, int b, const std::vector<Poly>& hints,
                             const SliceOptions& opt, std::uint64_t seed, int stop_above = INT_MAX);

// Equalities in (eta, xi) with eta first.
SliceDimResult slice_sup_dim(const std::vector<Poly>& eqs, int a, int b, const std::vector<Poly>& hints,
                             const SliceOptions& opt, std::uint64_t seed, int stop_above = INT_MAX);
SliceDimResult slice_sup_dim(const Poly& p, int a, int b, const SliceOptions& opt, std::uint64_t seed);

}  // namespace quadinv
