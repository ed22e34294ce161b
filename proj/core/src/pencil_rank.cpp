#include "quadinv/pencil_rank.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "quadinv/error.hpp"
#include "quadinv/numeric.hpp"
#include "quadinv/numpoly.hpp"

namespace quadinv {

PolyMatrix::PolyMatrix(int rows, int cols, int nvars)
    : rows_(rows), cols_(cols), nvars_(nvars), e_(static_cast<std::size_t>(rows) * cols, Poly(nvars)) {}

PolyMatrix PolyMatrix::constant(const RatMatrix& m, int nvars) {
  PolyMatrix p(m.rows(), m.cols(), nvars);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) p.at(i, j) = Poly::constant(nvars, m(i, j));
  return p;
}

PolyMatrix PolyMatrix::transpose() const {
  PolyMatrix t(cols_, rows_, nvars_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

PolyMatrix PolyMatrix::submatrix(const std::vector<int>& rows, const std::vector<int>& cols) const {
  PolyMatrix s(static_cast<int>(rows.size()), static_cast<int>(cols.size()), nvars_);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) s.at(static_cast<int>(i), static_cast<int>(j)) = at(rows[i], cols[j]);
  return s;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.cols_ != b.rows_ || a.nvars_ != b.nvars_) throw DimensionError("polynomial matrix product mismatch");
  PolyMatrix c(a.rows_, b.cols_, a.nvars_);
  for (int i = 0; i < a.rows_; ++i)
    for (int k = 0; k < a.cols_; ++k) {
      const Poly& aik = a.at(i, k);
      if (aik.is_zero()) continue;
      for (int j = 0; j < b.cols_; ++j) {
        if (!b.at(k, j).is_zero()) c.at(i, j) += aik * b.at(k, j);
      }
    }
  return c;
}

PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_ || a.nvars_ != b.nvars_)
    throw DimensionError("polynomial matrix sum mismatch");
  PolyMatrix c = a;
  for (std::size_t i = 0; i < c.e_.size(); ++i) c.e_[i] += b.e_[i];
  return c;
}

PolyMatrix PolyMatrix::fix_leading(const std::vector<Rational>& values) const {
  PolyMatrix r(rows_, cols_, nvars_ - static_cast<int>(values.size()));
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i].fix_leading(values);
  return r;
}

RatMatrix PolyMatrix::evaluate(const std::vector<Rational>& x) const {
  RatMatrix m(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m(i, j) = at(i, j).eval(x);
  return m;
}

std::string PolyMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < rows_; ++i) {
    os << (i ? ", [" : "[");
    for (int j = 0; j < cols_; ++j) os << (j ? ", " : "") << at(i, j).to_string();
    os << "]";
  }
  os << "]";
  return os.str();
}

RatMatrix coefficient_stack(const PolyMatrix& b) {
  std::vector<std::map<Exponents, int, GrlexLess>> keys(b.cols());
  int total = 0;
  for (int j = 0; j < b.cols(); ++j) {
    for (int i = 0; i < b.rows(); ++i)
      for (const auto& [e, c] : b.at(i, j).terms()) keys[j].try_emplace(e, 0);
    for (auto& [e, idx] : keys[j]) idx = total++;
  }
  RatMatrix s(b.rows(), total);
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j)
      for (const auto& [e, c] : b.at(i, j).terms()) s(i, keys[j].at(e)) = c;
  return s;
}

int row_rank(const PolyMatrix& b) { return rank(coefficient_stack(b)); }

int family_rank(const std::vector<RatMatrix>& mats) {
  if (mats.empty()) return 0;
  int d = mats[0].rows();
  int l = static_cast<int>(mats.size());
  PolyMatrix pencil(d, mats[0].cols(), l);
  for (int k = 0; k < l; ++k) {
    if (mats[k].rows() != d || mats[k].cols() != mats[0].cols()) throw DimensionError("family shape mismatch");
    Poly xk = Poly::variable(l, k);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < mats[k].cols(); ++j)
        if (mats[k](i, j) != 0) pencil.at(i, j) += xk * mats[k](i, j);
  }
  return row_rank(pencil);
}

Poly det(const PolyMatrix& a) {
  int n = a.rows();
  if (n != a.cols()) throw DimensionError("determinant of a non-square matrix");
  if (n == 0) return Poly::constant(a.nvars(), 1);
  if (n > 20) throw RangeError("determinant too large");
  // dp[mask] = det of the first popcount(mask) rows restricted to columns in mask
  std::vector<Poly> dp(std::size_t(1) << n, Poly(a.nvars()));
  dp[0] = Poly::constant(a.nvars(), 1);
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    int k = __builtin_popcount(mask);
    int row = k - 1;
    int pos = 0;
    for (int j = 0; j < n; ++j) {
      if (!(mask & (1u << j))) continue;
      const Poly& e = a.at(row, j);
      unsigned rest = mask & ~(1u << j);
      if (!e.is_zero() && !dp[rest].is_zero()) {
        Poly t = e * dp[rest];
        if ((row + pos) % 2) {
          dp[mask] -= t;
        } else {
          dp[mask] += t;
        }
      }
      ++pos;
    }
  }
  return dp[(1u << n) - 1];
}

namespace {

void subsets(int n, int k, std::vector<std::vector<int>>& out) {
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int i = start; i < n; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
}

}  // namespace

std::vector<Poly> minors(const PolyMatrix& b, int x) {
  if (x < 1 || x > std::min(b.rows(), b.cols())) throw RangeError("minor size out of range");
  std::vector<std::vector<int>> rs, cs;
  subsets(b.rows(), x, rs);
  subsets(b.cols(), x, cs);
  std::vector<Poly> out;
  for (const auto& r : rs)
    for (const auto& c : cs) out.push_back(det(b.submatrix(r, c)));
  return out;
}

Poly minor_sum_poly(const PolyMatrix& b, int x) {
  Poly s(b.nvars());
  for (const auto& m : minors(b, x)) s += m * m;
  return s;
}

RatMatrix EchelonFamily::instantiate(const std::vector<Rational>& params) const {
  if (static_cast<int>(params.size()) != free_params()) throw DimensionError("echelon parameter count mismatch");
  RatMatrix m(rows, cols);
  std::vector<bool> is_piv(cols, false);
  for (int p : pivots) is_piv[p] = true;
  int k = 0;
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < cols; ++j) {
      if (is_piv[j]) {
        m(i, j) = (pivots[i] == j) ? 1 : 0;
      } else {
        m(i, j) = params[k++];
      }
    }
  return m;
}

PolyMatrix EchelonFamily::symbolic(int nvars, int offset) const {
  PolyMatrix m(rows, cols, nvars);
  std::vector<bool> is_piv(cols, false);
  for (int p : pivots) is_piv[p] = true;
  int k = 0;
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < cols; ++j) {
      if (is_piv[j]) {
        if (pivots[i] == j) m.at(i, j) = Poly::constant(nvars, 1);
      } else {
        m.at(i, j) = Poly::variable(nvars, offset + k++);
      }
    }
  return m;
}

std::vector<EchelonFamily> echelon_types(int rows, int rank, int cols) {
  if (cols < 0) cols = rows;
  if (rank < 0 || rank > rows || rows > cols) throw RangeError("invalid echelon shape");
  std::vector<std::vector<int>> piv;
  subsets(cols, rank, piv);
  std::vector<EchelonFamily> out;
  for (auto& p : piv) out.push_back(EchelonFamily{rows, cols, rank, p});
  return out;
}

const char* to_string(RankStatus s) {
  switch (s) {
    case RankStatus::Exact: return "Exact";
    case RankStatus::UpperBoundWitness: return "UpperBoundWitness";
    case RankStatus::HeuristicLowerBound: return "HeuristicLowerBound";
    case RankStatus::Inconclusive: return "Inconclusive";
  }
  return "?";
}

namespace {

constexpr double kRankDropTrigger = 1e-9;

// Coefficient-stacked matrix whose entries are polynomials in the parameters.
struct Stacked {
  int nparams = 0;
  int rows = 0;
  int cols = 0;
  std::vector<int> row_index;  // original pencil rows kept
  std::vector<Poly> exact;     // rows x cols
  std::vector<NumPoly> num;

  int exact_rank(const std::vector<Rational>& theta) const {
    RatMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m(i, j) = exact[static_cast<std::size_t>(i) * cols + j].eval(theta);
    return rank(m);
  }

  Eigen::VectorXd singular_values(const std::vector<double>& theta) const {
    Eigen::MatrixXd m(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m(i, j) = num[static_cast<std::size_t>(i) * cols + j].eval(theta.data());
    return Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues();
  }
};

Stacked build_stack(const ParamPencil& pp) {
  const PolyMatrix& r = pp.r;
  int P = pp.nparams;
  int nx = pp.nx();
  std::vector<std::vector<std::map<Exponents, Poly, GrlexLess>>> split(
      r.rows(), std::vector<std::map<Exponents, Poly, GrlexLess>>(r.cols()));
  std::vector<std::map<Exponents, int, GrlexLess>> keys(r.cols());
  for (int i = 0; i < r.rows(); ++i)
    for (int j = 0; j < r.cols(); ++j)
      for (const auto& [e, c] : r.at(i, j).terms()) {
        Exponents ex(e.begin() + P, e.end());
        Exponents et(e.begin(), e.begin() + P);
        auto it = split[i][j].try_emplace(ex, Poly(P)).first;
        it->second.add_term(et, c);
        keys[j].try_emplace(ex, 0);
      }
  (void)nx;
  Stacked s;
  s.nparams = P;
  int total = 0;
  for (auto& k : keys)
    for (auto& [e, idx] : k) idx = total++;
  std::vector<std::vector<Poly>> full(r.rows(), std::vector<Poly>(total, Poly(P)));
  for (int i = 0; i < r.rows(); ++i)
    for (int j = 0; j < r.cols(); ++j)
      for (auto& [ex, poly] : split[i][j]) full[i][keys[j].at(ex)] = poly;
  std::vector<int> keep_cols;
  for (int c = 0; c < total; ++c) {
    for (int i = 0; i < r.rows(); ++i)
      if (!full[i][c].is_zero()) {
        keep_cols.push_back(c);
        break;
      }
  }
  for (int i = 0; i < r.rows(); ++i) {
    for (int c : keep_cols)
      if (!full[i][c].is_zero()) {
        s.row_index.push_back(i);
        break;
      }
  }
  s.rows = static_cast<int>(s.row_index.size());
  s.cols = static_cast<int>(keep_cols.size());
  for (int i : s.row_index)
    for (int c : keep_cols) {
      s.exact.push_back(full[i][c]);
      s.num.emplace_back(full[i][c]);
    }
  return s;
}

double tail_ratio(const Eigen::VectorXd& sv, int m) {
  if (sv.size() == 0 || sv(0) <= 0) return 0;
  double t = 0;
  for (int j = m; j < sv.size(); ++j) t += sv(j);
  return t / sv(0);
}

std::vector<Rational> grid_values() {
  return {Rational(0), Rational(1), Rational(-1), Rational(2), Rational(-2), Rational(1, 2), Rational(-1, 2)};
}

struct Witness {
  int rank;
  std::vector<Rational> theta;
};

// Smallest exact rank over a layered rational grid.
std::optional<Witness> grid_search(const Stacked& s, int budget) {
  auto vals = grid_values();
  int P = s.nparams;
  std::optional<Witness> best;
  int evaluated = 0;
  std::vector<int> idx(P);
  for (int L = 0; L < static_cast<int>(vals.size()); ++L) {
    std::fill(idx.begin(), idx.end(), 0);
    while (true) {
      bool has_l = L == 0;
      for (int v : idx)
        if (v == L) has_l = true;
      if (has_l) {
        std::vector<Rational> theta(P);
        for (int i = 0; i < P; ++i) theta[i] = vals[idx[i]];
        int r = s.exact_rank(theta);
        if (!best || r < best->rank) best = Witness{r, theta};
        if (best->rank == 0 || ++evaluated >= budget) return best;
      }
      if (P == 0) return best;
      int i = 0;
      while (i < P && idx[i] == L) idx[i++] = 0;
      if (i == P) break;
      ++idx[i];
    }
  }
  return best;
}

std::optional<std::vector<Rational>> round_point(const Stacked& s, const std::vector<double>& theta, int m) {
  for (std::int64_t cap : {std::int64_t(1000000), std::int64_t(1000000000)}) {
    std::vector<std::vector<Rational>> conv;
    std::size_t longest = 0;
    for (double t : theta) {
      conv.push_back(convergents(t, cap));
      if (conv.back().empty()) conv.back().push_back(Rational(0));
      longest = std::max(longest, conv.back().size());
    }
    for (std::size_t lvl = 0; lvl < longest; ++lvl) {
      std::vector<Rational> q;
      for (auto& c : conv) q.push_back(c[std::min(lvl, c.size() - 1)]);
      if (s.exact_rank(q) <= m) return q;
    }
  }
  return std::nullopt;
}

std::optional<std::vector<Rational>> numeric_witness(const Stacked& s, int m, const RankSearchOptions& opt,
                                                     std::uint64_t seed) {
  int P = s.nparams;
  auto objective = [&](const std::vector<double>& th) { return tail_ratio(s.singular_values(th), m); };
  for (int start = 0; start < opt.multistarts; ++start) {
    Rng rng = make_rng(seed, static_cast<std::uint64_t>(start));
    std::vector<double> x0(P);
    for (double& v : x0) v = uniform(rng, -2, 2);
    NelderMeadResult res = nelder_mead(objective, x0, 0.5, opt.nm_evals, 1e-14);
    for (int polish = 0; polish < 3 && res.value > kRankDropTrigger; ++polish) {
      NelderMeadResult again = nelder_mead(objective, res.x, 1e-3 * std::pow(0.1, polish), opt.nm_evals, 1e-16);
      if (again.value >= res.value * 0.5) break;
      res = again;
    }
    Eigen::VectorXd sv = s.singular_values(res.x);
    double ratio = (sv.size() > m && sv(0) > 0) ? sv(m) / sv(0) : 0;
    if (ratio >= kRankDropTrigger) continue;
    if (auto q = round_point(s, res.x, m)) return q;
    // snap coordinates one at a time, re-minimising over the rest
    std::vector<double> cur = res.x;
    std::vector<Rational> fixed;
    bool ok = true;
    for (int i = 0; i < P && ok; ++i) {
      ok = false;
      auto cands = convergents(cur[i], 64);
      std::reverse(cands.begin(), cands.end());
      cands.push_back(Rational(0));
      std::reverse(cands.begin(), cands.end());
      for (const Rational& c : cands) {
        double cv = c.get_d();
        auto sub = [&](const std::vector<double>& rest) {
          std::vector<double> th = cur;
          th[i] = cv;
          for (int k = i + 1; k < P; ++k) th[k] = rest[k - i - 1];
          return objective(th);
        };
        std::vector<double> rest(cur.begin() + i + 1, cur.end());
        NelderMeadResult r2 = nelder_mead(sub, rest, 0.05, opt.nm_evals, 1e-16);
        if (r2.value < kRankDropTrigger || rest.empty()) {
          std::vector<double> th = cur;
          th[i] = cv;
          for (int k = i + 1; k < P; ++k) th[k] = r2.x[k - i - 1];
          Eigen::VectorXd sv2 = s.singular_values(th);
          double ratio2 = (sv2.size() > m && sv2(0) > 0) ? sv2(m) / sv2(0) : 0;
          if (ratio2 < kRankDropTrigger) {
            cur = th;
            fixed.push_back(c);
            ok = true;
            break;
          }
        }
      }
    }
    if (ok && static_cast<int>(fixed.size()) == P && s.exact_rank(fixed) <= m) return fixed;
  }
  return std::nullopt;
}

// Cells {C_K(w) R(theta, g) = 0 for all grid points g}, one per m-subset K.
SemiAlgebraicSet lower_bound_system(const ParamPencil& pp, const Stacked& s, int m) {
  int P = pp.nparams;
  int nx = pp.nx();
  int E = s.rows;
  int nw = (E - m) * m;
  int nv = P + nw;
  int D = 0;
  for (int i = 0; i < pp.r.rows(); ++i)
    for (int j = 0; j < pp.r.cols(); ++j)
      for (const auto& [e, c] : pp.r.at(i, j).terms()) {
        unsigned dx = 0;
        for (int k = P; k < P + nx; ++k) dx += e[k];
        D = std::max(D, static_cast<int>(dx));
      }
  // R(theta, g) rows restricted to the kept rows, as polynomials in theta
  std::vector<std::vector<Poly>> evals;  // per grid point, E * cols entries
  std::vector<int> g(nx, 1);
  while (true) {
    std::vector<Poly> mat;
    for (int i : s.row_index)
      for (int j = 0; j < pp.r.cols(); ++j) {
        Poly q(P);
        for (const auto& [e, c] : pp.r.at(i, j).terms()) {
          Rational v = c;
          for (int k = 0; k < nx; ++k)
            for (unsigned t = 0; t < e[P + k]; ++t) v *= g[k];
          q.add_term(Exponents(e.begin(), e.begin() + P), v);
        }
        mat.push_back(q.embed(nv, 0));
      }
    evals.push_back(std::move(mat));
    int k = 0;
    while (k < nx && g[k] == D + 1) g[k++] = 1;
    if (k == nx) break;
    ++g[k];
  }
  int cols = pp.r.cols();
  SemiAlgebraicSet z(nv);
  std::vector<std::vector<int>> ks;
  subsets(E, m, ks);
  for (const auto& K : ks) {
    std::vector<int> comp;
    for (int i = 0; i < E; ++i)
      if (std::find(K.begin(), K.end(), i) == K.end()) comp.push_back(i);
    Cell cell;
    std::vector<Poly> seen;
    for (const auto& mat : evals) {
      for (std::size_t a = 0; a < comp.size(); ++a)
        for (int c = 0; c < cols; ++c) {
          Poly eq = mat[static_cast<std::size_t>(comp[a]) * cols + c];
          for (int b = 0; b < m; ++b) {
            const Poly& rk = mat[static_cast<std::size_t>(K[b]) * cols + c];
            if (rk.is_zero()) continue;
            eq += Poly::variable(nv, P + static_cast<int>(a) * m + b) * rk;
          }
          if (eq.is_zero()) continue;
          Poly n = normalize(eq);
          if (std::find(seen.begin(), seen.end(), n) != seen.end()) continue;
          seen.push_back(n);
        }
    }
    cell.equalities = std::move(seen);
    z.add_cell(std::move(cell));
  }
  return z;
}

}  // namespace

RankDecision min_family_rank(const ParamPencil& pp, const RankSearchOptions& opt, std::uint64_t seed, int cap) {
  Stacked s = build_stack(pp);
  int P = pp.nparams;
  int upper = std::min(s.rows, s.cols);
  RankDecision out;
  if (P == 0) {
    out.value = s.exact_rank({});
    out.status = RankStatus::Exact;
    out.witness = std::vector<Rational>{};
    out.certified_lower = out.value;
    return out;
  }
  // trivial bound: any parameter value gives rank <= upper
  Witness best{upper, std::vector<Rational>(P, Rational(0))};
  best.rank = s.exact_rank(best.theta);
  if (auto gw = grid_search(s, opt.grid_points)) {
    if (gw->rank < best.rank) best = *gw;
  }
  int limit = cap >= 0 ? std::min(cap, best.rank) : best.rank;
  int certified = 0;
  bool refuted_all = true;
  for (int m = 0; m < limit; ++m) {
    if (auto q = numeric_witness(s, m, opt, mix_seed(seed, 1000 + m))) {
      best = Witness{s.exact_rank(*q), *q};
      break;
    }
    if (!opt.lower_bound) {
      refuted_all = false;
      continue;
    }
    SemiAlgebraicSet z = lower_bound_system(pp, s, m);
    OracleStatus st = emptiness(z, opt.emptiness, mix_seed(seed, 2000 + m));
    if (st.kind == OracleKind::NonEmpty && st.exact_witness) {
      std::vector<Rational> theta(st.witness.begin(), st.witness.begin() + P);
      int r = s.exact_rank(theta);
      if (r <= m) {
        best = Witness{r, theta};
        break;
      }
    }
    if (st.kind == OracleKind::EmptyHeuristic) {
      if (refuted_all) certified = m + 1;
    } else {
      refuted_all = false;
    }
  }
  if (cap >= 0 && best.rank > cap) {
    out.value = cap;
    out.status = RankStatus::HeuristicLowerBound;
    out.certified_lower = certified;
    return out;
  }
  out.value = best.rank;
  out.witness = best.theta;
  out.certified_lower = std::min(certified, best.rank);
  out.status = certified >= best.rank ? RankStatus::Exact : RankStatus::UpperBoundWitness;
  return out;
}

}  // namespace quadinv
