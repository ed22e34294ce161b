#include "quadinv/invariants.hpp"

#include <algorithm>
#include <set>

#include "quadinv/error.hpp"
#include "quadinv/numeric.hpp"

namespace quadinv {

namespace {

PolyMatrix scale(const Poly& c, const PolyMatrix& m) {
  PolyMatrix out(m.rows(), m.cols(), m.nvars());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out.at(i, j) = c * m.at(i, j);
  return out;
}

}  // namespace

DEntry d_invariant(const QuadTuple& t, int dp, int np, const RankSearchOptions& opt, std::uint64_t seed) {
  int d = t.d, n = t.n();
  if (dp < 0 || dp > d || np < 0 || np > n) throw RangeError("d-invariant ranks out of range");
  DEntry out;
  if (np == 0 || dp == 0) {
    // N = 0 or M = 0 leaves only zero forms
    out.decision.value = 0;
    out.decision.status = RankStatus::Exact;
    out.decision.witness = std::vector<Rational>{};
    return out;
  }
  auto mfams = echelon_types(d, dp);
  auto nfams = echelon_types(n, np);
  std::vector<RatMatrix> mats = t.matrices();
  int best = dp;  // any rank-dp M leaves at most dp variables
  int certified = dp;
  std::optional<DWitness> witness;
  std::optional<std::vector<Rational>> params;
  int idx = 0;
  for (const auto& fm : mfams) {
    for (const auto& fn : nfams) {
      int pm = fm.free_params(), pn = fn.free_params();
      int nv = pm + pn + n;
      PolyMatrix msym = fm.symbolic(nv, 0);
      PolyMatrix nsym = fn.symbolic(nv, pm);
      PolyMatrix r(d, d, nv);
      for (int j = 0; j < n; ++j) {
        Poly c(nv);
        for (int i = 0; i < n; ++i) c = c + Poly::variable(nv, pm + pn + i) * nsym.at(i, j);
        if (c.is_zero()) continue;
        PolyMatrix mam = msym * PolyMatrix::constant(mats[j], nv) * msym.transpose();
        r = r + scale(c, mam);
      }
      ParamPencil pp{pm + pn, r};
      RankDecision dec = min_family_rank(pp, opt, mix_seed(seed, idx++), best);
      certified = std::min(certified, dec.certified_lower);
      if (dec.witness && (dec.value < best || !witness)) {
        best = dec.value;
        params = dec.witness;
        std::vector<Rational> um(dec.witness->begin(), dec.witness->begin() + pm);
        std::vector<Rational> vn(dec.witness->begin() + pm, dec.witness->end());
        witness = DWitness{fm.pivots, fn.pivots, fm.instantiate(um), fn.instantiate(vn)};
      }
    }
  }
  out.decision.value = best;
  out.decision.witness = params;
  out.decision.certified_lower = std::min(certified, best);
  out.decision.status = certified >= best ? RankStatus::Exact : RankStatus::UpperBoundWitness;
  out.witness = witness;
  return out;
}

DTable d_table(const QuadTuple& t, const RankSearchOptions& opt, std::uint64_t seed) {
  DTable tab{t, {}};
  for (int dp = 0; dp <= t.d; ++dp)
    for (int np = 0; np <= t.n(); ++np)
      tab.entries[{dp, np}] = d_invariant(t, dp, np, opt, mix_seed(seed, dp * 64 + np));
  return tab;
}

TangentFrame tangent_frame(const QuadTuple& t, const std::vector<Rational>& xi) {
  int d = t.d, n = t.n();
  if (static_cast<int>(xi.size()) != d) throw DimensionError("point has wrong dimension");
  TangentFrame f{xi, RatMatrix(d + n, d)};
  for (int j = 0; j < d; ++j) f.frame(j, j) = 1;
  for (int i = 0; i < n; ++i) {
    const RatMatrix& a = t.forms[i].matrix();
    for (int j = 0; j < d; ++j) {
      Rational s = 0;
      for (int l = 0; l < d; ++l) s += a(j, l) * xi[l];
      f.frame(d + i, j) = 2 * s;
    }
  }
  return f;
}

int proj_dim(const RatMatrix& v, const TangentFrame& frame) {
  if (v.cols() != frame.frame.rows()) throw DimensionError("subspace has wrong ambient dimension");
  if (rank(v) != v.rows()) throw DimensionError("subspace basis is rank deficient");
  return rank(v * frame.frame);
}

namespace {

// V_xi as polynomials in xi.
PolyMatrix symbolic_frame(const QuadTuple& t, int nvars, int offset) {
  int d = t.d, n = t.n();
  PolyMatrix f(d + n, d, nvars);
  for (int j = 0; j < d; ++j) f.at(j, j) = Poly::constant(nvars, Rational(1));
  for (int i = 0; i < n; ++i) {
    const RatMatrix& a = t.forms[i].matrix();
    for (int j = 0; j < d; ++j) {
      Poly s(nvars);
      for (int l = 0; l < d; ++l)
        if (a(j, l) != 0) s = s + Poly::variable(nvars, offset + l) * (2 * a(j, l));
      f.at(d + i, j) = s;
    }
  }
  return f;
}

// eta-coefficients of the symbolic minors; cheap ones first.
std::vector<Poly> degenerate_hints(const EchelonFamily& fam, const QuadTuple& t, int x, std::size_t max_hints) {
  int a = fam.free_params(), d = t.d;
  int nv = a + d;
  PolyMatrix w = fam.symbolic(nv, 0) * symbolic_frame(t, nv, a);
  std::set<std::string> seen;
  std::vector<Poly> hints;
  for (const Poly& mnr : minors(w, x)) {
    std::map<Exponents, Poly, GrlexLess> coeffs;
    for (const auto& [e, c] : mnr.terms()) {
      Exponents ex(e.begin() + a, e.end());
      Exponents et(e.begin(), e.begin() + a);
      coeffs.try_emplace(ex, Poly(a)).first->second.add_term(et, c);
    }
    for (auto& [e, h] : coeffs) {
      if (h.degree() < 1) continue;
      Poly hn = normalize(h);
      if (seen.insert(hn.to_string()).second) hints.push_back(hn);
    }
  }
  std::stable_sort(hints.begin(), hints.end(), [](const Poly& p, const Poly& q) {
    if (p.degree() != q.degree()) return p.degree() < q.degree();
    return p.terms().size() < q.terms().size();
  });
  if (hints.size() > max_hints) hints.resize(max_hints);
  return hints;
}

struct SliceValue {
  int value;
  Confidence confidence;
  std::optional<std::vector<Rational>> eta;
  int family;
};

// sup over all rank-m subspaces V of dim {xi : rank(V V_xi) < x}.
SliceValue bad_set_dim(const QuadTuple& t, int m, int x, const SliceOptions& opt, std::uint64_t seed,
                       int stop_above) {
  int d = t.d, big = t.d + t.n();
  PolyMatrix frame = symbolic_frame(t, d, 0);
  SliceValue out{-1, Confidence::ClosedFormOracle, std::nullopt, -1};
  auto fams = echelon_types(m, m, big);
  for (std::size_t i = 0; i < fams.size(); ++i) {
    const EchelonFamily& fam = fams[i];
    int a = fam.free_params();
    FiberFn fiber = [&](const std::vector<Rational>& eta) {
      PolyMatrix w = PolyMatrix::constant(fam.instantiate(eta), d) * frame;
      return minors(w, x);
    };
    std::vector<Poly> hints = degenerate_hints(fam, t, x, 6);
    SliceDimResult r = slice_sup_dim(fiber, a, d, hints, opt, mix_seed(seed, i), stop_above);
    out.confidence = weakest(out.confidence, r.confidence);
    if (r.value > out.value) {
      out.value = r.value;
      out.eta = r.witness_eta;
      out.family = static_cast<int>(i);
    }
    if (out.value > stop_above) break;
  }
  return out;
}

class XSolver {
 public:
  XSolver(const QuadTuple& t, const SliceOptions& opt, std::uint64_t seed, int stop_above)
      : t_(t), opt_(opt), seed_(seed), stop_above_(stop_above) {}

  XEntry solve(int k, int m) {
    int d = t_.d;
    XEntry e;
    e.confidence = Confidence::ClosedFormOracle;
    if (m == 0) {
      e.value = 0;
      return e;
    }
    // rank(V V_xi) <= min(m, d), so larger thresholds make the whole space bad
    int top = std::min(m, d);
    if (top < std::min(m, d + 1)) e.bad_dim_above = d;
    for (int x = top; x >= 1; --x) {
      const SliceValue& s = get(m, x);
      e.confidence = weakest(e.confidence, s.confidence);
      if (s.value <= k - 2) {
        e.value = x;
        return e;
      }
      e.bad_dim_above = s.value;
      e.witness_eta = s.eta;
      e.witness_family = s.family;
    }
    e.value = 0;
    return e;
  }

 private:
  const SliceValue& get(int m, int x) {
    auto key = std::make_pair(m, x);
    auto it = cache_.find(key);
    if (it == cache_.end())
      it = cache_.emplace(key, bad_set_dim(t_, m, x, opt_, mix_seed(seed_, m * 64 + x), stop_above_)).first;
    return it->second;
  }

  const QuadTuple& t_;
  SliceOptions opt_;
  std::uint64_t seed_;
  int stop_above_;
  std::map<std::pair<int, int>, SliceValue> cache_;
};

void check_k(const QuadTuple& t, int k) {
  if (k < 2 || k > t.d + 1) throw RangeError("k must satisfy 2 <= k <= d+1");
}

}  // namespace

XEntry x_invariant(const QuadTuple& t, int k, int m, const SliceOptions& opt, std::uint64_t seed) {
  check_k(t, k);
  if (m < 0 || m > t.d + t.n()) throw RangeError("m must satisfy 0 <= m <= d+n");
  return XSolver(t, opt, seed, k - 2).solve(k, m);
}

std::vector<XTable> x_tables(const QuadTuple& t, const std::vector<int>& ks, const SliceOptions& opt,
                             std::uint64_t seed) {
  if (ks.empty()) return {};
  for (int k : ks) check_k(t, k);
  // early stopping above the largest k - 2 keeps every comparison identical
  XSolver solver(t, opt, seed, *std::max_element(ks.begin(), ks.end()) - 2);
  std::vector<XTable> out;
  for (int k : ks) {
    XTable tab{t, k, {}};
    for (int m = 0; m <= t.d + t.n(); ++m) tab.entries[m] = solver.solve(k, m);
    out.push_back(std::move(tab));
  }
  return out;
}

XTable x_table(const QuadTuple& t, int k, const SliceOptions& opt, std::uint64_t seed) {
  return x_tables(t, {k}, opt, seed).front();
}

int x_paraboloid_closed(int d, int k, int m) {
  if (k < 2 || k > d + 1 || m < 0 || m > d + 1) throw RangeError("closed form parameters out of range");
  if (m == d + 1) return d;
  if (m <= k - 1) return m;
  return m - 1;
}

}  // namespace quadinv
