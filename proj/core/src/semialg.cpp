#include "quadinv/semialg.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <numeric>
#include <set>

#include "quadinv/error.hpp"
#include "quadinv/interval.hpp"
#include "quadinv/numeric.hpp"
#include "quadinv/numpoly.hpp"

namespace quadinv {

void SemiAlgebraicSet::add_cell(Cell c) {
  for (const auto& p : c.equalities)
    if (p.nvars() != dim_) throw DimensionError("cell polynomial has wrong variable count");
  for (const auto& p : c.positivities)
    if (p.nvars() != dim_) throw DimensionError("cell polynomial has wrong variable count");
  cells_.push_back(std::move(c));
}

int SemiAlgebraicSet::complexity() const {
  int s = 0;
  for (const auto& c : cells_) {
    for (const auto& p : c.equalities) s += std::max(p.degree(), 0);
    for (const auto& p : c.positivities) s += std::max(p.degree(), 0);
  }
  return s;
}

namespace {

bool cell_contains(const Cell& c, const std::vector<Rational>& x) {
  for (const auto& p : c.equalities)
    if (p.eval(x) != 0) return false;
  for (const auto& p : c.positivities)
    if (p.eval(x) <= 0) return false;
  return true;
}

}  // namespace

bool SemiAlgebraicSet::contains(const std::vector<Rational>& x) const {
  for (const auto& c : cells_)
    if (cell_contains(c, x)) return true;
  return false;
}

SemiAlgebraicSet SemiAlgebraicSet::unite(const SemiAlgebraicSet& o) const {
  if (o.dim_ != dim_) throw DimensionError("union of sets with different ambient dimension");
  SemiAlgebraicSet r = *this;
  for (const auto& c : o.cells_) r.cells_.push_back(c);
  return r;
}

std::string SemiAlgebraicSet::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (i) out += " || ";
    std::vector<std::string> parts;
    for (const auto& p : cells_[i].equalities) parts.push_back(p.to_string() + " = 0");
    for (const auto& p : cells_[i].positivities) parts.push_back(p.to_string() + " > 0");
    if (parts.empty()) parts.push_back("0 = 0");
    for (std::size_t k = 0; k < parts.size(); ++k) out += (k ? " && " : "") + parts[k];
  }
  return out;
}

SemiAlgebraicSet SemiAlgebraicSet::parse(const std::string& text, int dim) {
  SemiAlgebraicSet z(dim);
  auto split = [&](std::size_t b, std::size_t e, const std::string& sep) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    std::size_t s = b;
    while (true) {
      std::size_t f = text.find(sep, s);
      if (f == std::string::npos || f >= e) {
        out.emplace_back(s, e);
        break;
      }
      out.emplace_back(s, f);
      s = f + sep.size();
    }
    return out;
  };
  for (auto [cb, ce] : split(0, text.size(), "||")) {
    Cell cell;
    for (auto [ab, ae] : split(cb, ce, "&&")) {
      std::size_t rel = std::string::npos;
      for (std::size_t i = ab; i < ae; ++i)
        if (text[i] == '=' || text[i] == '>') {
          rel = i;
          break;
        }
      if (rel == std::string::npos) {
        int line = 1, col = 1;
        for (std::size_t i = 0; i < ab; ++i) {
          if (text[i] == '\n') {
            ++line;
            col = 1;
          } else {
            ++col;
          }
        }
        throw ParseError("expected '= 0' or '> 0'", line, col);
      }
      Poly rhs = parse_poly_range(text, rel + 1, ae, dim);
      if (!rhs.is_zero()) throw Error("right-hand side of a relation must be 0");
      Poly lhs = parse_poly_range(text, ab, rel, dim);
      if (text[rel] == '=') {
        if (!lhs.is_zero()) cell.equalities.push_back(lhs);
      } else {
        cell.positivities.push_back(lhs);
      }
    }
    z.add_cell(std::move(cell));
  }
  return z;
}

Confidence weakest(Confidence a, Confidence b) { return static_cast<int>(a) < static_cast<int>(b) ? a : b; }

const char* to_string(Confidence c) {
  switch (c) {
    case Confidence::ClosedFormOracle: return "ClosedFormOracle";
    case Confidence::HighConfidence: return "HighConfidence";
    case Confidence::Inconclusive: return "Inconclusive";
  }
  return "?";
}

namespace {

std::vector<Rational> search_values() {
  return {Rational(0),     Rational(1),     Rational(-1),   Rational(2),    Rational(-2),
          Rational(1, 2),  Rational(-1, 2), Rational(3),    Rational(-3),   Rational(3, 2),
          Rational(-3, 2), Rational(4),     Rational(-4),   Rational(1, 3), Rational(-1, 3)};
}

// Calls f on layered grid points (small values first) until f returns true
// or the budget is spent.
template <class F>
void layered_grid(int n, int budget, const std::vector<Rational>& vals, F&& f) {
  int evaluated = 0;
  std::vector<int> idx(n);
  std::vector<Rational> x(n);
  for (int L = 0; L < static_cast<int>(vals.size()); ++L) {
    std::fill(idx.begin(), idx.end(), 0);
    while (true) {
      bool has_l = L == 0;
      for (int v : idx)
        if (v == L) has_l = true;
      if (has_l) {
        for (int i = 0; i < n; ++i) x[i] = vals[idx[i]];
        if (f(x) || ++evaluated >= budget) return;
      }
      if (n == 0) return;
      int i = 0;
      while (i < n && idx[i] == L) idx[i++] = 0;
      if (i == n) break;
      ++idx[i];
    }
  }
}

// Cell as a square-free-free polynomial system: equalities normalised,
// each positivity p turned into p - margin - s^2 = 0 with a slack s.
struct CellSystem {
  int dim = 0;
  int slacks = 0;
  NumSystem sys;
};

CellSystem cell_system(const Cell& c, int dim, double margin) {
  CellSystem cs;
  cs.dim = dim;
  cs.slacks = static_cast<int>(c.positivities.size());
  int nv = dim + cs.slacks;
  std::vector<Poly> eqs;
  for (const auto& p : c.equalities) eqs.push_back(normalize(p).embed(nv, 0));
  Rational mg = approximate(margin, 1000000000);
  for (int k = 0; k < cs.slacks; ++k) {
    const Poly& p = c.positivities[k];
    Poly q = p.is_zero() ? Poly(dim) : normalize(p);
    Poly e = q.embed(nv, 0) - Poly::constant(nv, mg) - Poly::variable(nv, dim + k).pow(2);
    eqs.push_back(e);
  }
  cs.sys = NumSystem(eqs, nv);
  return cs;
}

std::optional<std::vector<Rational>> round_and_check(const Cell& c, const std::vector<double>& x) {
  std::vector<std::vector<Rational>> conv;
  std::size_t longest = 0;
  for (double v : x) {
    conv.push_back(convergents(v, 1000000));
    if (conv.back().empty()) conv.back().push_back(Rational(0));
    longest = std::max(longest, conv.back().size());
  }
  for (std::size_t lvl = 0; lvl < longest; ++lvl) {
    std::vector<Rational> q;
    for (auto& cv : conv) q.push_back(cv[std::min(lvl, cv.size() - 1)]);
    if (cell_contains(c, q)) return q;
  }
  return std::nullopt;
}

// Interval subdivision: true when every sub-box is rejected.
bool interval_reject(const Cell& c, int dim, double box, int max_boxes) {
  if (c.equalities.empty() && c.positivities.empty()) return false;
  std::deque<std::vector<Interval>> q;
  q.push_back(std::vector<Interval>(dim, Interval(-box, box)));
  int processed = 0;
  while (!q.empty()) {
    if (++processed > max_boxes) return false;
    std::vector<Interval> b = std::move(q.front());
    q.pop_front();
    bool rejected = false;
    for (const auto& p : c.equalities) {
      if (!eval(p, b).contains(0.0)) {
        rejected = true;
        break;
      }
    }
    if (!rejected) {
      for (const auto& p : c.positivities) {
        if (eval(p, b).hi <= 0) {
          rejected = true;
          break;
        }
      }
    }
    if (rejected) continue;
    if (dim == 0) return false;
    int w = 0;
    for (int i = 1; i < dim; ++i)
      if (b[i].width() > b[w].width()) w = i;
    if (b[w].width() < 1e-9) return false;
    std::vector<Interval> l = b, r = b;
    double m = b[w].mid();
    l[w].hi = m;
    r[w].lo = m;
    q.push_back(std::move(l));
    q.push_back(std::move(r));
  }
  return true;
}

}  // namespace

OracleStatus emptiness(const SemiAlgebraicSet& z, const EmptinessBudget& budget, std::uint64_t seed) {
  OracleStatus st;
  st.best_residual = std::numeric_limits<double>::infinity();
  const int dim = z.dim();
  bool near_witness = false;
  auto vals = search_values();

  for (std::size_t ci = 0; ci < z.cells().size(); ++ci) {
    const Cell& cell = z.cells()[ci];
    // phase 1: exact grid
    bool found = false;
    std::optional<std::vector<Rational>> neg, pos;
    bool single = cell.equalities.size() == 1 && cell.positivities.empty();
    layered_grid(dim, budget.grid_points, vals, [&](const std::vector<Rational>& x) {
      if (cell_contains(cell, x)) {
        st.witness = x;
        found = true;
        return true;
      }
      if (single) {
        int sg = sgn(cell.equalities[0].eval(x));
        if (sg < 0 && !neg) neg = x;
        if (sg > 0 && !pos) pos = x;
      }
      return false;
    });
    if (found) {
      st.kind = OracleKind::NonEmpty;
      st.exact_witness = true;
      st.cell = static_cast<int>(ci);
      st.best_residual = 0;
      st.note = "rational grid point";
      return st;
    }
    // phase 2: penalty multistart on the slack system
    CellSystem cs = cell_system(cell, dim, budget.margin);
    int nv = dim + cs.slacks;
    LmOptions lo;
    lo.max_iter = budget.lm_iter;
    lo.box = 0;
    for (int s = 0; s < budget.starts; ++s) {
      Rng rng = make_rng(seed, ci * 100003u + s);
      std::vector<double> x(nv);
      for (int i = 0; i < dim; ++i) x[i] = uniform(rng, -budget.box, budget.box);
      for (int i = dim; i < nv; ++i) x[i] = 1.0;
      double r = levenberg_marquardt(cs.sys, x, {}, lo);
      bool inside = true;
      for (int i = 0; i < dim; ++i)
        if (std::fabs(x[i]) > budget.box) inside = false;
      if (!inside) continue;
      st.best_residual = std::min(st.best_residual, r);
      if (r <= 1e-12) {
        std::vector<double> pt(x.begin(), x.begin() + dim);
        if (auto q = round_and_check(cell, pt)) {
          st.kind = OracleKind::NonEmpty;
          st.exact_witness = true;
          st.witness = *q;
          st.cell = static_cast<int>(ci);
          st.note = "rounded local solution";
          return st;
        }
        near_witness = true;
      }
    }
    // continuity certificate for a single equation
    if (single && neg && pos) {
      std::vector<Rational> a = *neg, b = *pos;
      for (int it = 0; it < 60; ++it) {
        std::vector<Rational> m(dim);
        for (int i = 0; i < dim; ++i) m[i] = (a[i] + b[i]) / 2;
        int sg = sgn(cell.equalities[0].eval(m));
        if (sg == 0) {
          st.witness = m;
          st.exact_witness = true;
          break;
        }
        (sg < 0 ? a : b) = m;
        st.witness = m;
      }
      st.kind = OracleKind::NonEmpty;
      st.cell = static_cast<int>(ci);
      st.note = st.exact_witness ? "bisection hit a rational zero" : "sign change between rational points";
      return st;
    }
  }
  // phase 3: interval subdivision
  bool all_rejected = true;
  for (const auto& cell : z.cells()) {
    if (!interval_reject(cell, dim, budget.box, budget.interval_boxes)) {
      all_rejected = false;
      break;
    }
  }
  st.certified_in_box = all_rejected && !z.cells().empty();
  if (z.cells().empty()) st.certified_in_box = true;
  if (near_witness && !st.certified_in_box) {
    st.kind = OracleKind::Inconclusive;
    st.note = "numerical near-solution without exact confirmation";
  } else {
    st.kind = OracleKind::EmptyHeuristic;
    st.note = st.certified_in_box ? "interval subdivision rejected the whole box" : "no witness found";
  }
  return st;
}

namespace {

enum class Patch { Pass, Fail, Ambiguous };

struct DimContext {
  const Cell* cell;
  int dim;
  NumSystem eqs;
  std::vector<NumPoly> pos;
  DimOptions opt;
};

bool positivities_ok(const DimContext& ctx, const std::vector<double>& x) {
  for (const auto& p : ctx.pos)
    if (p.eval(x.data()) <= 0) return false;
  return true;
}

Patch patch_test(const DimContext& ctx, const std::vector<double>& center, const std::vector<int>& S, double h) {
  int s = static_cast<int>(S.size());
  std::vector<int> free;
  for (int i = 0; i < ctx.dim; ++i)
    if (std::find(S.begin(), S.end(), i) == S.end()) free.push_back(i);
  int total = 1;
  for (int i = 0; i < s; ++i) total *= 3;
  LmOptions lo;
  lo.max_iter = 100;
  lo.target = ctx.opt.tol * 1e-6;
  bool ambiguous = false;
  // corners first so failures show up early
  std::vector<int> order(total);
  for (int i = 0; i < total; ++i) order[i] = total - 1 - i;
  for (int code : order) {
    std::vector<double> x = center;
    int c = code;
    for (int k = 0; k < s; ++k) {
      x[S[k]] += h * ((c % 3) - 1);
      c /= 3;
    }
    double r = free.empty() ? max_abs_residual(ctx.eqs, x) : levenberg_marquardt(ctx.eqs, x, free, lo);
    bool moved_far = false;
    for (int i : free)
      if (std::fabs(x[i] - center[i]) > 10 * h + 1e-9) moved_far = true;
    if (r < ctx.opt.tol * 1e-5 && !moved_far && positivities_ok(ctx, x)) continue;
    if (r > ctx.opt.tol * 1e-2 || moved_far) return Patch::Fail;
    ambiguous = true;
  }
  return ambiguous ? Patch::Ambiguous : Patch::Pass;
}

void combos(int n, int k, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (int i = start; i < n; ++i) {
    cur.push_back(i);
    combos(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

SliceDimResult cell_dim(const Cell& cell, int dim, const DimOptions& opt, std::uint64_t seed) {
  SliceDimResult res;
  std::vector<Poly> eqs;
  for (const auto& p : cell.equalities)
    if (!p.is_zero()) eqs.push_back(normalize(p));
  DimContext ctx{&cell, dim, NumSystem(eqs, dim), {}, opt};
  for (const auto& p : cell.positivities) ctx.pos.emplace_back(p);

  if (eqs.empty()) {
    if (cell.positivities.empty()) {
      res.value = dim;
      res.confidence = Confidence::ClosedFormOracle;
      return res;
    }
    // open set: nonempty iff some sample satisfies the strict inequalities
    for (int s = 0; s < opt.samples * 8; ++s) {
      Rng rng = make_rng(seed, s);
      std::vector<double> x(dim);
      for (double& v : x) v = uniform(rng, -opt.box, opt.box);
      if (positivities_ok(ctx, x)) {
        res.value = dim;
        return res;
      }
    }
    res.value = -1;
    return res;
  }

  // collect points on the set
  std::vector<std::vector<double>> hits;
  double best = std::numeric_limits<double>::infinity();
  auto add_hit = [&](const std::vector<double>& x) {
    for (const auto& h : hits) {
      double dist = 0;
      for (int i = 0; i < dim; ++i) dist = std::max(dist, std::fabs(h[i] - x[i]));
      if (dist < 1e-3) return;
    }
    hits.push_back(x);
  };
  int grid_budget = 1;
  for (int i = 0; i < dim && grid_budget < 625; ++i) grid_budget *= 5;
  std::vector<Rational> small{Rational(0), Rational(1), Rational(-1), Rational(2), Rational(-2)};
  layered_grid(dim, grid_budget, small, [&](const std::vector<Rational>& q) {
    if (cell_contains(cell, q)) {
      std::vector<double> x(dim);
      for (int i = 0; i < dim; ++i) x[i] = q[i].get_d();
      add_hit(x);
    }
    return static_cast<int>(hits.size()) >= opt.max_points;
  });
  LmOptions lo;
  lo.max_iter = 150;
  lo.target = opt.tol * 1e-6;
  lo.box = opt.box;
  for (int s = 0; s < opt.samples; ++s) {
    Rng rng = make_rng(seed, 7919u + s);
    std::vector<double> x(dim);
    for (double& v : x) v = uniform(rng, -opt.box, opt.box);
    double r = levenberg_marquardt(ctx.eqs, x, {}, lo);
    best = std::min(best, r);
    if (r < opt.tol && positivities_ok(ctx, x)) add_hit(x);
  }
  if (hits.empty()) {
    res.value = -1;
    res.confidence = best < opt.miss_tol ? Confidence::Inconclusive : Confidence::HighConfidence;
    return res;
  }
  if (static_cast<int>(hits.size()) > opt.max_points) hits.resize(opt.max_points);

  int value = 0;
  bool ambiguous_above = false;
  for (const auto& p : hits) {
    for (int s = dim - 1; s > value; --s) {
      std::vector<std::vector<int>> subsets;
      std::vector<int> cur;
      combos(dim, s, 0, cur, subsets);
      bool passed = false;
      bool amb = false;
      for (const auto& S : subsets) {
        for (double h : opt.spacings) {
          Patch r = patch_test(ctx, p, S, h);
          if (r == Patch::Pass) {
            passed = true;
            break;
          }
          if (r == Patch::Ambiguous) amb = true;
        }
        if (passed) break;
      }
      if (passed) {
        value = s;
        break;
      }
      if (amb) ambiguous_above = true;
    }
  }
  res.value = value;
  // ambiguity at a level that ended up above the answer leaves it open
  res.confidence = ambiguous_above ? Confidence::Inconclusive : Confidence::HighConfidence;
  return res;
}

}  // namespace

SliceDimResult variety_dim_estimate(const SemiAlgebraicSet& z, const DimOptions& opt, std::uint64_t seed) {
  SliceDimResult out;
  out.value = -1;
  out.confidence = Confidence::HighConfidence;
  bool all_closed = !z.cells().empty();
  for (std::size_t i = 0; i < z.cells().size(); ++i) {
    SliceDimResult r = cell_dim(z.cells()[i], z.dim(), opt, mix_seed(seed, i));
    if (r.confidence != Confidence::ClosedFormOracle) all_closed = false;
    if (r.confidence == Confidence::Inconclusive) out.confidence = Confidence::Inconclusive;
    out.value = std::max(out.value, r.value);
  }
  if (all_closed) out.confidence = Confidence::ClosedFormOracle;
  return out;
}

namespace {

// Real roots of a univariate polynomial given by double coefficients (low to high).
// Rational points on {h = 0}: fix all but one coordinate to small values
// and take rational roots in the remaining one.
std::vector<std::vector<Rational>> hint_points(const Poly& h, int a, int max_points) {
  std::vector<std::vector<Rational>> out;
  std::vector<Rational> base_vals{Rational(0), Rational(1), Rational(-1)};
  for (int j = 0; j < a && static_cast<int>(out.size()) < max_points; ++j) {
    if (h.degree_in(j) <= 0) continue;
    // others cycle through a few fixed patterns
    for (int pat = 0; pat < 3 && static_cast<int>(out.size()) < max_points; ++pat) {
      std::vector<Rational> eta(a, base_vals[pat]);
      std::vector<Poly> img;
      for (int i = 0; i < a; ++i) img.push_back(i == j ? Poly::variable(1, 0) : Poly::constant(1, eta[i]));
      Poly u = h.substitute(img);
      if (u.degree() < 1) continue;
      std::vector<double> coef(u.degree() + 1, 0.0);
      for (const auto& [e, c] : u.terms()) coef[e[0]] = c.get_d();
      for (double r : real_roots(coef)) {
        for (const Rational& q : convergents(r, 1000)) {
          if (u.eval(std::vector<Rational>{q}) == 0) {
            eta[j] = q;
            if (std::find(out.begin(), out.end(), eta) == out.end()) out.push_back(eta);
            break;
          }
        }
      }
    }
  }
  return out;
}

}  // namespace

SliceDimResult slice_sup_dim(const FiberFn& fiber, int a, int b, const std::vector<Poly>& hints,
                             const SliceOptions& opt, std::uint64_t seed, int stop_above) {
  SliceDimResult best;
  best.value = -1;
  best.confidence = Confidence::ClosedFormOracle;
  std::set<std::vector<Rational>> seen;
  bool stop = false;
  std::uint64_t counter = 0;

  auto evaluate = [&](const std::vector<Rational>& eta) -> int {
    if (stop || !seen.insert(eta).second) return -2;
    std::vector<Poly> eqs = fiber(eta);
    Cell c;
    for (auto& p : eqs)
      if (!p.is_zero()) c.equalities.push_back(p);
    SemiAlgebraicSet z(b);
    z.add_cell(std::move(c));
    SliceDimResult r = variety_dim_estimate(z, opt.dim, mix_seed(seed, counter++));
    best.confidence = weakest(best.confidence, r.confidence);
    if (r.value > best.value) {
      best.value = r.value;
      best.witness_eta = eta;
    }
    if (best.value > stop_above) stop = true;
    return r.value;
  };
  // local moves from a candidate that raised the running maximum
  auto consider = [&](const std::vector<Rational>& eta) {
    int before = best.value;
    int v = evaluate(eta);
    if (v > before && v >= 0) {
      for (int i = 0; i < a && !stop; ++i) {
        for (const Rational& c : {Rational(0), Rational(1), Rational(-1)}) {
          if (eta[i] == c) continue;
          std::vector<Rational> e2 = eta;
          e2[i] = c;
          evaluate(e2);
        }
      }
    }
  };

  consider(std::vector<Rational>(a, Rational(0)));
  for (int i = 0; i < a && !stop; ++i)
    for (int sg : {1, -1}) {
      std::vector<Rational> e(a, Rational(0));
      e[i] = sg;
      consider(e);
    }
  if (opt.pair_candidates && a <= 6) {
    for (int i = 0; i < a && !stop; ++i)
      for (int j = i + 1; j < a && !stop; ++j)
        for (int sg : {1, -1}) {
          std::vector<Rational> e(a, Rational(0));
          e[i] = 1;
          e[j] = sg;
          consider(e);
        }
  }
  for (const auto& h : hints) {
    if (stop) break;
    for (const auto& e : hint_points(h, a, opt.hint_candidates)) {
      if (stop) break;
      consider(e);
    }
  }
  // latin hypercube in blocks of 8 so a larger budget extends a smaller one
  const int block = 8;
  for (int start = 0; start < opt.budget && !stop; start += block) {
    Rng rng = make_rng(seed, 0x51ce0000u + start);
    int cnt = block;
    std::vector<std::vector<int>> perm(a, std::vector<int>(cnt));
    for (int i = 0; i < a; ++i) {
      std::iota(perm[i].begin(), perm[i].end(), 0);
      for (int k = cnt - 1; k > 0; --k) std::swap(perm[i][k], perm[i][rng() % (k + 1)]);
    }
    for (int k = 0; k < cnt && start + k < opt.budget && !stop; ++k) {
      std::vector<Rational> e(a);
      for (int i = 0; i < a; ++i) {
        double u = (perm[i][k] + uniform(rng, 0, 1)) / cnt;
        double v = -opt.eta_box + 2 * opt.eta_box * u;
        e[i] = make_rational(std::lround(v * 1024), 1024);
      }
      consider(e);
    }
  }
  if (best.confidence == Confidence::ClosedFormOracle && best.value < b) best.confidence = Confidence::HighConfidence;
  return best;
}

SliceDimResult slice_sup_dim(const std::vector<Poly>& eqs, int a, int b, const std::vector<Poly>& hints,
                             const SliceOptions& opt, std::uint64_t seed, int stop_above) {
  for (const auto& p : eqs)
    if (p.nvars() != a + b) throw DimensionError("slice polynomial has wrong variable count");
  FiberFn fiber = [&](const std::vector<Rational>& eta) {
    std::vector<Poly> out;
    for (const auto& p : eqs) out.push_back(p.fix_leading(eta));
    return out;
  };
  return slice_sup_dim(fiber, a, b, hints, opt, seed, stop_above);
}

SliceDimResult slice_sup_dim(const Poly& p, int a, int b, const SliceOptions& opt, std::uint64_t seed) {
  std::vector<Poly> hints;
  // eta-coefficients of p as hint polynomials
  std::map<Exponents, Poly, GrlexLess> coeffs;
  for (const auto& [e, c] : p.terms()) {
    Exponents ex(e.begin() + a, e.end());
    Exponents et(e.begin(), e.begin() + a);
    coeffs.try_emplace(ex, Poly(a)).first->second.add_term(et, c);
  }
  for (auto& [e, h] : coeffs)
    if (h.degree() >= 1) hints.push_back(h);
  return slice_sup_dim(std::vector<Poly>{p}, a, b, hints, opt, seed);
}

}  // namespace quadinv
