#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "quadinv/matrix.hpp"
#include "quadinv/poly.hpp"
#include "quadinv/semialg.hpp"

namespace quadinv {

class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(int rows, int cols, int nvars);
  static PolyMatrix constant(const RatMatrix& m, int nvars);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int nvars() const { return nvars_; }
  Poly& at(int i, int j) { return e_[static_cast<std::size_t>(i) * cols_ + j]; }
  const Poly& at(int i, int j) const { return e_[static_cast<std::size_t>(i) * cols_ + j]; }

  PolyMatrix transpose() const;
  PolyMatrix submatrix(const std::vector<int>& rows, const std::vector<int>& cols) const;
  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
  friend PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b);

  PolyMatrix fix_leading(const std::vector<Rational>& values) const;
  RatMatrix evaluate(const std::vector<Rational>& x) const;
  std::string to_string() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  int nvars_ = 0;
  std::vector<Poly> e_;
};

// Each row flattened into its coefficient vector over all monomials of each column.
RatMatrix coefficient_stack(const PolyMatrix& b);

// Dimension of the real span of the rows.
int row_rank(const PolyMatrix& b);

// Row-rank of sum_i x_i B_i in fresh indeterminates.
int family_rank(const std::vector<RatMatrix>& mats);

Poly det(const PolyMatrix& square);
std::vector<Poly> minors(const PolyMatrix& b, int x);
// Sum of squares of all x-by-x minors.
Poly minor_sum_poly(const PolyMatrix& b, int x);

struct EchelonFamily {
  int rows = 0;
  int cols = 0;
  int rank = 0;
  std::vector<int> pivots;  // 0-based, strictly increasing

  int free_params() const { return rank * (cols - rank); }
  // Parameter order: row-major over the non-pivot columns of the first rank rows.
  RatMatrix instantiate(const std::vector<Rational>& params) const;
  // Entries are polynomials in nvars variables; parameters start at offset.
  PolyMatrix symbolic(int nvars, int offset) const;
};

// One family per choice of pivot columns, C(cols, rank) in total; cols defaults to rows.
std::vector<EchelonFamily> echelon_types(int rows, int rank, int cols = -1);

enum class RankStatus { Exact, UpperBoundWitness, HeuristicLowerBound, Inconclusive };
const char* to_string(RankStatus s);

struct RankDecision {
  int value = 0;
  RankStatus status = RankStatus::Inconclusive;
  std::optional<std::vector<Rational>> witness;
  // Every level below this was refuted by the emptiness oracle.
  int certified_lower = 0;
};

// A polynomial matrix in (params, x); params come first.
struct ParamPencil {
  int nparams = 0;
  PolyMatrix r;

  int nx() const { return r.nvars() - nparams; }
  PolyMatrix at(const std::vector<Rational>& params) const { return r.fix_leading(params); }
};

struct RankSearchOptions {
  int multistarts = 64;
  int grid_points = 2401;
  int nm_evals = 3000;
  bool lower_bound = true;
  EmptinessBudget emptiness;
};

// Infimum over params of row_rank(R(params, x)). With cap >= 0 only levels
// below cap are examined; if none is reached the result is value = cap.
RankDecision min_family_rank(const ParamPencil& pencil, const RankSearchOptions& opt, std::uint64_t seed,
                             int cap = -1);

}  // namespace quadinv
