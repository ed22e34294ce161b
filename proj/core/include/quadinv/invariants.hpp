#pragma once

#include <climits>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "quadinv/pencil_rank.hpp"
#include "quadinv/quadform.hpp"
#include "quadinv/semialg.hpp"

namespace quadinv {

// Witness data for one d-invariant entry: pivot choices and parameters of M and N.
struct DWitness {
  std::vector<int> m_pivots;
  std::vector<int> n_pivots;
  RatMatrix m;
  RatMatrix n;
};

struct DEntry {
  RankDecision decision;
  std::optional<DWitness> witness;
};

struct DTable {
  QuadTuple tuple;
  std::map<std::pair<int, int>, DEntry> entries;  // (d', n')

  const DEntry& at(int dp, int np) const { return entries.at({dp, np}); }
};

// Minimum over rank-dp M and rank-np N of NV(N (Q o M)).
DEntry d_invariant(const QuadTuple& t, int dp, int np, const RankSearchOptions& opt, std::uint64_t seed);
DTable d_table(const QuadTuple& t, const RankSearchOptions& opt, std::uint64_t seed);

struct TangentFrame {
  std::vector<Rational> xi;
  RatMatrix frame;  // (d+n) x d
};

TangentFrame tangent_frame(const QuadTuple& t, const std::vector<Rational>& xi);
// Rank of V * frame; V must have full row rank.
int proj_dim(const RatMatrix& v, const TangentFrame& frame);

struct XEntry {
  int value = 0;
  Confidence confidence = Confidence::HighConfidence;
  // Sup of the bad-set dimension at value + 1, when that threshold was examined.
  std::optional<int> bad_dim_above;
  std::optional<std::vector<Rational>> witness_eta;
  int witness_family = -1;
};

struct XTable {
  QuadTuple tuple;
  int k = 0;
  std::map<int, XEntry> entries;  // m = 0 .. d+n
};

XEntry x_invariant(const QuadTuple& t, int k, int m, const SliceOptions& opt, std::uint64_t seed);
// Full table over m = 0 .. d+n.
XTable x_table(const QuadTuple& t, int k, const SliceOptions& opt, std::uint64_t seed);
// Tables for several k sharing slice computations; values agree with separate x_table calls.
std::vector<XTable> x_tables(const QuadTuple& t, const std::vector<int>& ks, const SliceOptions& opt,
                             std::uint64_t seed);

int x_paraboloid_closed(int d, int k, int m);

}  // namespace quadinv
