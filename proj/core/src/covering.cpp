#include "quadinv/covering.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <cmath>
#include <cstring>
#include <functional>
#include <limits>
#include <sstream>
#include <unordered_map>

#include <nlohmann/json.hpp>
#include "quadinv/error.hpp"
#include "quadinv/interval.hpp"
#include "quadinv/numeric.hpp"
#include "quadinv/pencil_rank.hpp"

namespace quadinv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double norm(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double dist(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

std::vector<int> base_coords(int d, int pivot) {
  std::vector<int> b;
  for (int i = 0; i < d; ++i)
    if (i != pivot) b.push_back(i);
  return b;
}

Poly derivative(const Poly& p, const Exponents& alpha) {
  Poly q = p;
  for (std::size_t i = 0; i < alpha.size(); ++i)
    for (unsigned k = 0; k < alpha[i]; ++k) q = q.derivative(static_cast<int>(i));
  return q;
}

// Cells of a uniform grid, packed into one key.
struct GridHash {
  double cell;
  std::unordered_map<std::int64_t, std::vector<int>> map;

  explicit GridHash(double c) : cell(c) {}
  static std::int64_t pack(const std::vector<std::int64_t>& idx) {
    std::int64_t key = 0;
    for (std::int64_t v : idx) key = key * (std::int64_t(1) << 21) + (v + (std::int64_t(1) << 20));
    return key;
  }
  std::vector<std::int64_t> index(const std::vector<double>& x) const {
    std::vector<std::int64_t> idx;
    for (double v : x) idx.push_back(static_cast<std::int64_t>(std::floor(v / cell)));
    return idx;
  }
  void insert(const std::vector<double>& x, int id) { map[pack(index(x))].push_back(id); }
  // Calls f on every id stored in the 3^dim cells around x.
  void around(const std::vector<double>& x, const std::function<void(int)>& f) const {
    std::vector<std::int64_t> c = index(x);
    int dim = static_cast<int>(c.size());
    int total = 1;
    for (int i = 0; i < dim; ++i) total *= 3;
    std::vector<std::int64_t> idx(dim);
    for (int t = 0; t < total; ++t) {
      int r = t;
      for (int i = 0; i < dim; ++i) {
        idx[i] = c[i] + (r % 3) - 1;
        r /= 3;
      }
      auto it = map.find(pack(idx));
      if (it == map.end()) continue;
      for (int id : it->second) f(id);
    }
  }
};

std::vector<double> project_base(const std::vector<double>& x, int pivot) {
  std::vector<double> b;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (static_cast<int>(i) != pivot) b.push_back(x[i]);
  return b;
}

std::uint64_t hash_point(const std::vector<double>& x) {
  std::uint64_t h = 0x12345678;
  for (double v : x) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    h = mix_seed(h, bits);
  }
  return h;
}

}  // namespace

ScaleLadder scale_ladder(double K, int D, int Ap) {
  if (D < 1 || Ap < 1) throw RangeError("ladder needs D >= 1 and Ap >= 1");
  if (!(K > 1)) throw RangeError("K must exceed 1");
  double lk = std::log2(K);
  if (lk * std::pow(Ap + 1.0, -D) < 1) throw RangeError("K too small for this ladder");
  ScaleLadder l{K, Ap, D, {}};
  for (int j = 1; j <= D; ++j) l.levels.push_back(std::exp2(std::round(lk * std::pow(Ap + 1.0, j - D - 1))));
  l.levels.push_back(K);
  return l;
}

PolyData::PolyData(const Poly& p) : q(p), d(p.nvars()), value(p) {
  for (int i = 0; i < d; ++i) {
    Poly gi = p.derivative(i);
    grad.emplace_back(gi);
    std::vector<NumPoly> row;
    for (int l = 0; l < d; ++l) row.emplace_back(gi.derivative(l));
    hess.push_back(std::move(row));
  }
  for (int piv = 0; piv < d; ++piv) {
    int deg = std::max(0, p.degree_in(piv));
    std::vector<Poly> c(deg + 1, Poly(d));
    for (const auto& [e, v] : p.terms()) {
      Exponents e2 = e;
      e2[piv] = 0;
      c[e[piv]].add_term(e2, v);
    }
    std::vector<NumPoly> nc;
    for (const auto& ci : c) nc.emplace_back(ci);
    pivot_coeffs.push_back(std::move(nc));
  }
}

std::vector<double> PolyData::gradient(const std::vector<double>& x) const {
  std::vector<double> g(d);
  for (int i = 0; i < d; ++i) g[i] = grad[i].eval(x.data());
  return g;
}

std::vector<double> PolyData::pivot_roots(const std::vector<double>& x, int pivot, double lo, double hi) const {
  const auto& pc = pivot_coeffs[pivot];
  std::vector<double> c(pc.size());
  for (std::size_t k = 0; k < pc.size(); ++k) c[k] = pc[k].eval(x.data());
  std::vector<double> out;
  for (double r : real_roots(c))
    if (r >= lo && r <= hi) out.push_back(r);
  return out;
}

bool RegularGraph::base_contains(const std::vector<double>& x) const {
  for (int i = 0; i < static_cast<int>(x.size()); ++i)
    if (i != pivot && std::fabs(x[i] - center[i]) > rho / 2) return false;
  return true;
}

bool RegularGraph::box_contains(const std::vector<double>& x) const {
  return base_contains(x) && x[pivot] >= pivot_lo && x[pivot] <= pivot_hi;
}

std::vector<double> RegularGraph::roots(const std::vector<double>& x) const {
  return q->pivot_roots(x, pivot, pivot_lo, pivot_hi);
}

std::optional<double> RegularGraph::psi(const std::vector<double>& x) const {
  if (!base_contains(x)) return std::nullopt;
  std::vector<double> r = roots(x);
  if (r.empty()) return std::nullopt;
  // nearest to the center value if the root is not unique
  return *std::min_element(r.begin(), r.end(), [&](double a, double b) {
    return std::fabs(a - center[pivot]) < std::fabs(b - center[pivot]);
  });
}

namespace {

struct AuditOutcome {
  bool unique = true;
  bool enforced_pass = true;
  std::vector<AuditRow> rows;
};

AuditOutcome audit_graph(const PolyData& q, const std::vector<double>& center, int pivot, double side,
                         double height, double K_j, int degree, const CoveringConfig& cfg) {
  int d = q.d;
  std::vector<int> base = base_coords(d, pivot);
  int k = d - 1;
  double lo = center[pivot] - height / 2, hi = center[pivot] + height / 2;
  std::vector<std::vector<double>> pts{center};
  for (int mask = 0; mask < (1 << k); ++mask) {
    std::vector<double> p = center;
    for (int b = 0; b < k; ++b) p[base[b]] += ((mask >> b) & 1 ? 0.5 : -0.5) * side;
    if (k > 0) pts.push_back(p);
  }
  Rng rng = make_rng(hash_point(center));
  for (int r = 0; r < cfg.audit_random && k > 0; ++r) {
    std::vector<double> p = center;
    for (int b : base) p[b] += uniform(rng, -0.5, 0.5) * side;
    pts.push_back(p);
  }
  AuditOutcome out;
  double C = cfg.c_lambda;
  double hess_limit = std::pow(1000.0, d + degree * degree) * K_j;
  auto add = [&](const std::string& name, const std::vector<double>& at, double limit, double measured, bool lower,
                 bool enforced) {
    AuditRow row{name, at, limit, measured, lower, lower ? measured >= limit : measured <= limit};
    if (enforced && !row.pass) out.enforced_pass = false;
    out.rows.push_back(std::move(row));
  };
  for (auto& p : pts) {
    std::vector<double> r = q.pivot_roots(p, pivot, lo, hi);
    if (r.size() != 1) {
      out.unique = false;
      return out;
    }
    p[pivot] = r[0];
    std::vector<double> g = q.gradient(p);
    double gp = g[pivot];
    add("pivot_derivative", p, 1 / (2 * std::sqrt(double(d)) * K_j), std::fabs(gp), true, true);
    add("in_box", p, height / 2, std::fabs(r[0] - center[pivot]), false, true);
    if (k == 0) continue;
    std::vector<double> dpsi(d, 0.0);
    for (int l : base) dpsi[l] = -g[l] / gp;
    double grad_norm = norm(dpsi);
    double hmax = 0;
    for (int l : base)
      for (int m : base) {
        double h = q.hess[l][m].eval(p.data()) + q.hess[l][pivot].eval(p.data()) * dpsi[m] +
                   q.hess[pivot][m].eval(p.data()) * dpsi[l] + q.hess[pivot][pivot].eval(p.data()) * dpsi[l] * dpsi[m];
        hmax = std::max(hmax, std::fabs(h / gp));
      }
    add("grad_psi", p, 2.0 * d, grad_norm, false, true);
    add("hessian_psi", p, hess_limit, hmax, false, true);
    add("constructed_grad", p, C, grad_norm, false, true);
    add("constructed_hessian", p, C * K_j, hmax, false, true);
    add("definition_grad", p, C / side, grad_norm, false, false);
    add("definition_hessian", p, C / (side * side), hmax, false, false);
  }
  return out;
}

}  // namespace

RegularGraph extract_graph(const std::shared_ptr<const PolyData>& q, const std::vector<double>& x, double K_j,
                           int pivot, int degree, const CoveringConfig& cfg, int level) {
  int d = q->d;
  if (static_cast<int>(x.size()) != d || pivot < 0 || pivot >= d) throw DimensionError("bad point or pivot");
  std::vector<double> r = q->pivot_roots(x, pivot, -kInf, kInf);
  if (r.empty()) throw Error("no zero on the pivot line");
  std::vector<double> c = x;
  c[pivot] = *std::min_element(r.begin(), r.end(),
                               [&](double a, double b) { return std::fabs(a - x[pivot]) < std::fabs(b - x[pivot]); });
  std::vector<double> g = q->gradient(c);
  double gn = norm(g);
  const double slack = 1 - 1e-12;
  if (!(gn >= slack / K_j && std::fabs(g[pivot]) >= slack * gn / std::sqrt(double(d))))
    throw Error("pivot precondition violated");
  double C = cfg.c_dd_for(d, degree);
  for (int h = 0;; ++h) {
    double side = 1 / (C * K_j);
    double height = d * cfg.c_lambda * side;
    AuditOutcome a = audit_graph(*q, c, pivot, side, height, K_j, degree, cfg);
    bool last = h >= cfg.max_halvings;
    if (!a.unique) {
      if (last) throw Error("continuation failure: root over the base cube is not unique");
      C *= 2;
      continue;
    }
    if (!a.enforced_pass && !last) {
      C *= 2;
      continue;
    }
    RegularGraph gr;
    gr.k = d - 1;
    gr.level = level;
    gr.pivot = pivot;
    gr.K_j = K_j;
    gr.rho = side;
    gr.height = height;
    gr.lambda = cfg.lambda;
    gr.C = cfg.c_lambda;
    gr.c_effective = C;
    gr.center = c;
    gr.pivot_lo = c[pivot] - height / 2;
    gr.pivot_hi = c[pivot] + height / 2;
    gr.q = q;
    gr.audit = std::move(a.rows);
    gr.audit_pass = a.enforced_pass;
    return gr;
  }
}

RegularGraph extract_graph(const Poly& q, const std::vector<double>& x, double K_j, int pivot,
                           const CoveringConfig& cfg) {
  return extract_graph(std::make_shared<const PolyData>(q), x, K_j, pivot, std::max(1, q.degree()), cfg);
}

namespace {

// Distance-bounded projection onto {Q = 0} by gradient Newton steps.
std::optional<std::vector<double>> project_to_zero(const PolyData& q, const std::vector<double>& x) {
  std::vector<double> y = x;
  for (int it = 0; it < 60; ++it) {
    double v = q.eval(y);
    if (std::fabs(v) < 1e-14) return y;
    std::vector<double> g = q.gradient(y);
    double n2 = 0;
    for (double t : g) n2 += t * t;
    if (n2 < 1e-300) return std::nullopt;
    for (int i = 0; i < q.d; ++i) y[i] -= v * g[i] / n2;
  }
  if (std::fabs(q.eval(y)) < 1e-12) return y;
  return std::nullopt;
}

std::vector<std::vector<Exponents>> all_chains(int d, int D) {
  std::vector<std::vector<Exponents>> out;
  int steps = D - 1;
  long total = 1;
  for (int s = 0; s < steps; ++s) total *= d;
  for (long t = 0; t < total; ++t) {
    std::vector<Exponents> alphas(D, Exponents(d, 0));
    long r = t;
    std::vector<int> seq(steps);
    for (int s = steps - 1; s >= 0; --s) {
      seq[s] = static_cast<int>(r % d);
      r /= d;
    }
    // alphas[D-1] = alpha_D = 0, alpha_j = alpha_{j+1} + e_{seq}
    for (int j = D - 1; j >= 1; --j) {
      alphas[j - 1] = alphas[j];
      alphas[j - 1][seq[D - 1 - j]] += 1;
    }
    out.push_back(alphas);
  }
  return out;
}

}  // namespace

ChainResult derivative_pivot_search(const Poly& p, const ScaleLadder& ladder,
                                    const std::vector<std::vector<double>>& samples) {
  int d = p.nvars(), D = ladder.D;
  ChainResult best;
  best.miss_rate = 2;
  for (const auto& alphas : all_chains(d, D)) {
    ++best.chains_tried;
    std::vector<PolyData> qs;
    for (const auto& a : alphas) qs.emplace_back(derivative(p, a));
    long miss = 0;
    for (const auto& x : samples) {
      bool ok = false;
      for (int j = 1; j <= D && !ok; ++j) {
        const PolyData& q = qs[j - 1];
        if (q.q.degree() < 1) continue;
        auto y = project_to_zero(q, x);
        if (!y) continue;
        double Kj = ladder.at(j);
        ok = dist(*y, x) <= std::pow(Kj, -ladder.Ap) && norm(q.gradient(*y)) >= 1 / Kj;
      }
      if (!ok) ++miss;
    }
    double rate = samples.empty() ? 0 : double(miss) / samples.size();
    if (rate < best.miss_rate) {
      best.alphas = alphas;
      best.miss_rate = rate;
      best.verified = miss == 0;
      if (best.verified) break;
    }
  }
  return best;
}

std::vector<std::vector<double>> sample_sublevel(const Poly& p, double K, long n, std::uint64_t seed,
                                                 long long max_draws, long long* draws) {
  NumPoly np(p);
  int d = p.nvars();
  Rng rng = make_rng(seed);
  std::vector<std::vector<double>> out;
  std::vector<double> x(d);
  long long t = 0;
  double thr = 1 / K;
  while (static_cast<long>(out.size()) < n && t < max_draws) {
    ++t;
    for (int i = 0; i < d; ++i) x[i] = uniform(rng, 0, 1);
    if (std::fabs(np.eval(x.data())) < thr) out.push_back(x);
  }
  if (draws) *draws = t;
  return out;
}

namespace {

bool working_point(const PolyData& q, const std::vector<double>& x, int pivot, double Kj) {
  std::vector<double> g = q.gradient(x);
  double gn = norm(g);
  return gn >= 1 / Kj && std::fabs(g[pivot]) >= gn / std::sqrt(double(q.d));
}

// Greedy maximal separated subset of the candidates, in order.
std::vector<int> separated_subset(const std::vector<std::vector<double>>& cand, double delta) {
  GridHash h(delta);
  std::vector<int> net;
  for (int i = 0; i < static_cast<int>(cand.size()); ++i) {
    bool close = false;
    h.around(cand[i], [&](int id) {
      if (!close && dist(cand[id], cand[i]) < delta) close = true;
    });
    if (close) continue;
    h.insert(cand[i], i);
    net.push_back(i);
  }
  return net;
}

}  // namespace

double CoveringReport::covered_fraction_at(double scale) const {
  if (ratio.empty()) return 1;
  long c = 0;
  for (double r : ratio)
    if (r <= scale) ++c;
  return double(c) / ratio.size();
}

bool CoveringReport::grad_and_pivot_audits_pass() const {
  for (const auto& lv : levels)
    for (const auto& g : lv.graphs)
      for (const auto& row : g.audit)
        if ((row.bound == "grad_psi" || row.bound == "pivot_derivative") && !row.pass) return false;
  return true;
}

CoveringReport cover_sublevel(const Poly& p_in, double K, int Ap, long samples, std::uint64_t seed,
                              const CoveringConfig& cfg) {
  return cover_sublevel(p_in, K, Ap, samples, seed, cfg, {});
}

CoveringReport cover_sublevel(const Poly& p_in, double K, int Ap, long samples, std::uint64_t seed,
                              const CoveringConfig& cfg, const std::vector<std::vector<double>>& net_seeds) {
  int d = p_in.nvars();
  if (d < 1 || d > 3) throw RangeError("covering supports 1 <= d <= 3");
  if (p_in.is_zero()) throw Error("cannot cover the zero polynomial");
  int D = p_in.degree();
  if (D < 1 || D > 4) throw RangeError("covering supports degrees 1 to 4");
  Poly p = normalize(p_in);
  CoveringReport rep;
  rep.poly = p.to_string();
  rep.d = d;
  rep.degree = D;
  rep.K = K;
  rep.Ap = Ap;
  rep.seed = seed;
  rep.samples_requested = samples;
  rep.c_dd = cfg.c_dd_for(d, D);
  rep.c_lambda = cfg.c_lambda;
  rep.ladder = scale_ladder(K, D, Ap);
  rep.samples = sample_sublevel(p, K, samples, mix_seed(seed, 1), cfg.max_draws, &rep.draws);
  if (rep.samples.empty()) {
    rep.empty = true;
    rep.covered_fraction = 1;
    return rep;
  }
  auto chain_pts = sample_sublevel(p, K, cfg.chain_samples, mix_seed(seed, 2), cfg.max_draws);
  rep.chain = derivative_pivot_search(p, rep.ladder, chain_pts);

  std::size_t n = rep.samples.size();
  rep.ratio.assign(n, kInf);
  rep.cover_level.assign(n, 0);
  for (int j = 1; j <= D; ++j) {
    LevelReport lv;
    lv.j = j;
    lv.K_j = rep.ladder.at(j);
    lv.alpha = rep.chain.alphas[j - 1];
    Poly q = derivative(p, lv.alpha);
    lv.q = q.to_string();
    lv.width = std::pow(lv.K_j, -Ap);
    lv.side = 1 / (rep.c_dd * lv.K_j);
    lv.height = d * cfg.c_lambda * lv.side;
    auto qd = std::make_shared<const PolyData>(q);
    double delta = lv.side / 10;
    std::vector<std::string> modes;
    for (int pivot = 0; pivot < d && q.degree() >= 1; ++pivot) {
      if (q.degree_in(pivot) < 1) continue;
      std::vector<std::vector<double>> cand;
      double h = delta / 2;
      long per_dim = static_cast<long>(std::ceil((1 + 2 * h) / h)) + 1;
      long lines = 1;
      for (int b = 0; b < d - 1; ++b) lines = (lines > cfg.full_net_limit) ? lines : lines * per_dim;
      std::vector<int> base = base_coords(d, pivot);
      if (lines <= cfg.full_net_limit) {
        modes.push_back("full");
        std::vector<long> idx(d - 1, 0);
        for (long t = 0; t < lines; ++t) {
          long r = t;
          std::vector<double> x(d, 0.0);
          for (int b = 0; b < d - 1; ++b) {
            x[base[b]] = -h + h * (r % per_dim);
            r /= per_dim;
          }
          for (double s : qd->pivot_roots(x, pivot, -lv.width, 1 + lv.width)) {
            x[pivot] = s;
            if (working_point(*qd, x, pivot, lv.K_j)) cand.push_back(x);
          }
        }
      } else {
        modes.push_back("local");
        std::vector<std::vector<double>> seeds = rep.samples;
        seeds.insert(seeds.end(), net_seeds.begin(), net_seeds.end());
        for (const auto& x : seeds) {
          std::vector<double> r = qd->pivot_roots(x, pivot, x[pivot] - lv.width, x[pivot] + lv.width);
          if (r.empty()) continue;
          std::vector<double> y = x;
          y[pivot] = *std::min_element(r.begin(), r.end(), [&](double a, double b) {
            return std::fabs(a - x[pivot]) < std::fabs(b - x[pivot]);
          });
          if (working_point(*qd, y, pivot, lv.K_j)) cand.push_back(y);
          if (auto z = project_to_zero(*qd, x); z && dist(*z, x) <= lv.width && working_point(*qd, *z, pivot, lv.K_j))
            cand.push_back(*z);
        }
      }
      lv.candidates += static_cast<long>(cand.size());
      for (int id : separated_subset(cand, delta)) {
        try {
          RegularGraph g = extract_graph(qd, cand[id], lv.K_j, pivot, D, cfg, j);
          if (!g.audit_pass) ++lv.audit_failures;
          lv.c_effective_max = std::max(lv.c_effective_max, g.c_effective);
          lv.graphs.push_back(std::move(g));
        } catch (const Error&) {
          ++lv.extraction_failures;
        }
      }
    }
    std::sort(modes.begin(), modes.end());
    modes.erase(std::unique(modes.begin(), modes.end()), modes.end());
    lv.net_mode = modes.empty() ? "none" : modes.size() == 1 ? modes[0] : "mixed";

    // coverage and overlap at this level, per pivot
    std::vector<std::optional<std::vector<double>>> proj(n);
    if (!lv.graphs.empty())
      for (std::size_t s = 0; s < n; ++s) {
        auto y = project_to_zero(*qd, rep.samples[s]);
        if (y && dist(*y, rep.samples[s]) <= lv.width) proj[s] = y;
      }
    for (int pivot = 0; pivot < d; ++pivot) {
      GridHash hash(lv.side);
      bool any = false;
      for (int g = 0; g < static_cast<int>(lv.graphs.size()); ++g)
        if (lv.graphs[g].pivot == pivot) {
          hash.insert(project_base(lv.graphs[g].center, pivot), g);
          any = true;
        }
      if (!any) continue;
      for (std::size_t s = 0; s < n; ++s) {
        const auto& x = rep.samples[s];
        int overlap = 0;
        auto consider = [&](double d2, int) {
          double ratio = d2 / lv.width;
          if (ratio < rep.ratio[s]) {
            rep.ratio[s] = ratio;
            rep.cover_level[s] = j;
          }
        };
        // graph points straight over the sample's base point
        hash.around(project_base(x, pivot), [&](int g) {
          const RegularGraph& gr = lv.graphs[g];
          if (!gr.base_contains(x)) return;
          if (gr.box_contains(x)) ++overlap;
          std::vector<double> r = gr.roots(x);
          if (r.size() > 1) ++rep.uniqueness_violations;
          for (double v : r) consider(std::fabs(x[pivot] - v), g);
        });
        // graph points over the base point of the projection onto the zero set
        if (proj[s]) {
          const std::vector<double>& y = *proj[s];
          hash.around(project_base(y, pivot), [&](int g) {
            const RegularGraph& gr = lv.graphs[g];
            if (!gr.base_contains(y)) return;
            for (double v : gr.roots(y)) {
              std::vector<double> z = y;
              z[pivot] = v;
              consider(dist(x, z), g);
            }
          });
        }
        lv.max_overlap = std::max(lv.max_overlap, overlap);
      }
    }
    rep.max_overlap = std::max(rep.max_overlap, lv.max_overlap);
    if (lv.audit_failures > 0) rep.audits_pass = false;
    rep.levels.push_back(std::move(lv));
  }
  for (double r : rep.ratio)
    if (r <= 1) ++rep.covered;
  rep.covered_fraction = double(rep.covered) / n;
  rep.overlap_ok = rep.max_overlap <= std::pow(1000.0, d);
  return rep;
}

namespace {

std::string alpha_text(const Exponents& a) {
  std::string s = "(";
  for (std::size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + std::to_string(a[i]);
  return s + ")";
}

using json = nlohmann::ordered_json;

json report_json(const CoveringReport& r, const CoveringConfig& cfg) {
  json j;
  j["poly"] = r.poly;
  j["d"] = r.d;
  j["degree"] = r.degree;
  j["K"] = r.K;
  j["Ap"] = r.Ap;
  j["seed"] = r.seed;
  j["samples_requested"] = r.samples_requested;
  j["samples"] = r.samples.size();
  j["draws"] = r.draws;
  j["empty"] = r.empty;
  j["C_dD"] = r.c_dd;
  j["C_dDLambda"] = r.c_lambda;
  j["ladder"] = r.ladder.levels;
  j["chain"]["alphas"] = json::array();
  for (const auto& a : r.chain.alphas) j["chain"]["alphas"].push_back(alpha_text(a));
  j["chain"]["miss_rate"] = r.chain.miss_rate;
  j["chain"]["verified"] = r.chain.verified;
  j["chain"]["chains_tried"] = r.chain.chains_tried;
  j["levels"] = json::array();
  for (const auto& lv : r.levels) {
    json l;
    l["j"] = lv.j;
    l["K_j"] = lv.K_j;
    l["alpha"] = alpha_text(lv.alpha);
    l["Q"] = lv.q;
    l["width"] = lv.width;
    l["box_base_side"] = lv.side;
    l["box_height"] = lv.height;
    l["net_mode"] = lv.net_mode;
    l["candidates"] = lv.candidates;
    l["graphs"] = lv.graphs.size();
    l["extraction_failures"] = lv.extraction_failures;
    l["audit_failures"] = lv.audit_failures;
    l["max_overlap"] = lv.max_overlap;
    l["C_effective_max"] = lv.c_effective_max;
    l["boxes_truncated"] = lv.graphs.size() > cfg.report_boxes;
    l["boxes"] = json::array();
    for (std::size_t g = 0; g < lv.graphs.size() && g < cfg.report_boxes; ++g) {
      const RegularGraph& gr = lv.graphs[g];
      json b;
      b["center"] = gr.center;
      b["pivot"] = gr.pivot;
      b["side"] = gr.rho;
      b["pivot_interval"] = {gr.pivot_lo, gr.pivot_hi};
      b["C_effective"] = gr.c_effective;
      b["audit_pass"] = gr.audit_pass;
      l["boxes"].push_back(b);
    }
    j["levels"].push_back(l);
  }
  j["coverage"]["covered"] = r.covered;
  j["coverage"]["fraction"] = r.covered_fraction;
  j["coverage"]["uniqueness_violations"] = r.uniqueness_violations;
  j["overlap"]["max"] = r.max_overlap;
  j["overlap"]["limit"] = std::pow(1000.0, r.d);
  j["overlap"]["ok"] = r.overlap_ok;
  j["audits"]["all_pass"] = r.audits_pass;
  j["audits"]["grad_and_pivot_pass"] = r.grad_and_pivot_audits_pass();
  // worst margin per bound
  std::map<std::string, std::pair<double, bool>> worst;
  for (const auto& lv : r.levels)
    for (const auto& g : lv.graphs)
      for (const auto& row : g.audit) {
        auto it = worst.find(row.bound);
        if (it == worst.end() || row.margin() < it->second.first) worst[row.bound] = {row.margin(), row.pass};
      }
  for (const auto& [b, w] : worst) j["audits"]["worst_margin"][b] = w.first;
  return j;
}

}  // namespace

std::string to_json(const CoveringReport& r, const CoveringConfig& cfg) { return report_json(r, cfg).dump(2) + "\n"; }

std::string audit_csv(const CoveringReport& r, const CoveringConfig& cfg) {
  std::ostringstream os;
  os.precision(12);
  os << "level,graph,bound,point,limit,measured,margin,pass\n";
  for (const auto& lv : r.levels)
    for (std::size_t g = 0; g < lv.graphs.size(); ++g)
      for (const auto& row : lv.graphs[g].audit) {
        if (g >= cfg.audit_csv_graphs && row.pass) continue;
        os << lv.j << "," << g << "," << row.bound << ",\"";
        for (std::size_t i = 0; i < row.point.size(); ++i) os << (i ? " " : "") << row.point[i];
        os << "\"," << row.limit << "," << row.measured << "," << row.margin() << "," << (row.pass ? 1 : 0) << "\n";
      }
  return os.str();
}

std::string to_svg(const CoveringReport& r, const CoveringConfig& cfg) {
  if (r.d != 2) throw DimensionError("SVG output needs d = 2");
  const double S = 800, pad = 20;
  auto X = [&](double x) { return pad + x * S; };
  auto Y = [&](double y) { return pad + (1 - y) * S; };
  const char* colors[] = {"#d62728", "#1f77b4", "#2ca02c", "#9467bd"};
  std::ostringstream os;
  os.precision(6);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << S + 2 * pad << "\" height=\"" << S + 2 * pad
     << "\">\n";
  os << "<rect x=\"" << pad << "\" y=\"" << pad << "\" width=\"" << S << "\" height=\"" << S
     << "\" fill=\"white\" stroke=\"black\"/>\n";
  for (std::size_t i = 0; i < r.samples.size() && i < cfg.svg_points; ++i)
    os << "<circle cx=\"" << X(r.samples[i][0]) << "\" cy=\"" << Y(r.samples[i][1]) << "\" r=\"0.8\" fill=\""
       << (r.ratio[i] <= 1 ? "#555555" : "#ff00ff") << "\"/>\n";
  std::size_t drawn = 0;
  for (const auto& lv : r.levels) {
    const char* col = colors[(lv.j - 1) % 4];
    for (const auto& g : lv.graphs) {
      if (drawn++ >= cfg.svg_boxes) break;
      int b = 1 - g.pivot;
      double x0, x1, y0, y1;
      if (g.pivot == 1) {
        x0 = g.center[b] - g.rho / 2;
        x1 = g.center[b] + g.rho / 2;
        y0 = g.pivot_lo;
        y1 = g.pivot_hi;
      } else {
        y0 = g.center[b] - g.rho / 2;
        y1 = g.center[b] + g.rho / 2;
        x0 = g.pivot_lo;
        x1 = g.pivot_hi;
      }
      os << "<rect x=\"" << X(x0) << "\" y=\"" << Y(y1) << "\" width=\"" << (x1 - x0) * S << "\" height=\""
         << (y1 - y0) * S << "\" fill=\"none\" stroke=\"" << col << "\" stroke-width=\"0.3\"/>\n";
    }
  }
  os << "</svg>\n";
  return os.str();
}

Poly resultant(const Poly& a, const Poly& b, int var) {
  int d = a.nvars();
  if (b.nvars() != d) throw Error("resultant needs a common variable count");
  if (var < 0 || var >= d) throw RangeError("resultant variable out of range");
  if (a.is_zero() || b.is_zero()) throw Error("resultant of the zero polynomial");
  auto coeffs = [&](const Poly& p) {
    std::vector<Poly> c(std::max(0, p.degree_in(var)) + 1, Poly(d));
    for (const auto& [e, v] : p.terms()) {
      Exponents e2 = e;
      e2[var] = 0;
      c[e[var]].add_term(e2, v);
    }
    return c;
  };
  std::vector<Poly> ca = coeffs(a), cb = coeffs(b);
  int m = static_cast<int>(ca.size()) - 1, n = static_cast<int>(cb.size()) - 1;
  Poly r = Poly::constant(d, 1);
  if (m + n > 0) {
    // Sylvester matrix
    PolyMatrix s(m + n, m + n, d);
    for (int i = 0; i < m + n; ++i)
      for (int k = 0; k < m + n; ++k) s.at(i, k) = Poly(d);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k <= m; ++k) s.at(i, i + k) = ca[m - k];
    for (int i = 0; i < m; ++i)
      for (int k = 0; k <= n; ++k) s.at(n + i, i + k) = cb[n - k];
    r = det(s);
  }
  std::vector<Poly> images;
  for (int i = 0; i < d; ++i) images.push_back(i == var ? Poly(d - 1) : Poly::variable(d - 1, i < var ? i : i - 1));
  return r.substitute(images);
}

std::vector<std::vector<double>> sample_joint_sublevel(const std::vector<Poly>& ps_in, double K, long n,
                                                       std::uint64_t seed, int depth, long long max_draws,
                                                       long long* draws, long* leaves_out) {
  if (ps_in.empty()) throw Error("no polynomials to sample");
  int d = ps_in[0].nvars();
  std::vector<Poly> ps;
  std::vector<NumPoly> nps;
  for (const auto& p : ps_in) {
    if (p.nvars() != d) throw Error("polynomials need a common variable count");
    if (p.is_zero()) throw Error("cannot sample the zero polynomial");
    ps.push_back(normalize(p));
    nps.emplace_back(ps.back());
  }
  double thr = 1 / K;
  double side_min = std::ldexp(1.0, -depth);
  struct Box {
    std::vector<double> lo;
    double side;
  };
  std::vector<std::vector<double>> leaves;
  std::vector<Box> stack{{std::vector<double>(d, 0.0), 1.0}};
  while (!stack.empty()) {
    Box b = std::move(stack.back());
    stack.pop_back();
    std::vector<Interval> iv;
    for (double l : b.lo) iv.emplace_back(l, l + b.side);
    bool possible = true;
    for (const auto& p : ps) {
      Interval v = eval(p, iv);
      if (v.lo >= thr || v.hi <= -thr) {
        possible = false;
        break;
      }
    }
    if (!possible) continue;
    if (b.side <= side_min) {
      leaves.push_back(b.lo);
      continue;
    }
    double h = b.side / 2;
    for (int mask = 0; mask < (1 << d); ++mask) {
      Box c{b.lo, h};
      for (int i = 0; i < d; ++i)
        if ((mask >> i) & 1) c.lo[i] += h;
      stack.push_back(std::move(c));
    }
  }
  if (leaves_out) *leaves_out = static_cast<long>(leaves.size());
  std::vector<std::vector<double>> out;
  long long t = 0;
  Rng rng = make_rng(seed);
  std::vector<double> x(d);
  // all leaves have the same side, so a uniform leaf then a uniform point is uniform on their union
  while (!leaves.empty() && static_cast<long>(out.size()) < n && t < max_draws) {
    ++t;
    auto li = std::min(leaves.size() - 1, static_cast<std::size_t>(uniform(rng, 0, 1) * leaves.size()));
    for (int i = 0; i < d; ++i) x[i] = leaves[li][i] + uniform(rng, 0, 1) * side_min;
    bool in = true;
    for (const auto& np : nps)
      if (std::fabs(np.eval(x.data())) >= thr) in = false;
    if (in) out.push_back(x);
  }
  if (draws) *draws = t;
  return out;
}

namespace {

std::vector<double> with_pivot(const std::vector<double>& base, int pivot, double v) {
  std::vector<double> x;
  std::size_t b = 0;
  for (std::size_t i = 0; i <= base.size(); ++i) x.push_back(static_cast<int>(i) == pivot ? v : base[b++]);
  return x;
}

// Gauss-Newton steps onto {P1 = 0, P2 = 0}: x -= J^T (J J^T)^-1 F.
std::optional<std::vector<double>> project_to_common_zero(const PolyData& a, const PolyData& b,
                                                          const std::vector<double>& x0) {
  std::vector<double> x = x0;
  int d = a.d;
  for (int it = 0; it < 60; ++it) {
    double fa = a.eval(x), fb = b.eval(x);
    if (std::fabs(fa) < 1e-14 && std::fabs(fb) < 1e-14) return x;
    std::vector<double> ga = a.gradient(x), gb = b.gradient(x);
    double aa = 0, ab = 0, bb = 0;
    for (int i = 0; i < d; ++i) {
      aa += ga[i] * ga[i];
      ab += ga[i] * gb[i];
      bb += gb[i] * gb[i];
    }
    double det = aa * bb - ab * ab;
    if (std::fabs(det) < 1e-24) return std::nullopt;
    double ua = (bb * fa - ab * fb) / det, ub = (aa * fb - ab * fa) / det;
    for (int i = 0; i < d; ++i) x[i] -= ua * ga[i] + ub * gb[i];
  }
  if (std::fabs(a.eval(x)) < 1e-12 && std::fabs(b.eval(x)) < 1e-12) return x;
  return std::nullopt;
}

}  // namespace

RecursionReport cover_intersection(const Poly& p1, const Poly& p2, double K, int Ap, long samples,
                                   std::uint64_t seed, const CoveringConfig& cfg) {
  int d = p1.nvars();
  if (p2.nvars() != d) throw Error("both polynomials need the same variables");
  if (d < 2 || d > 3) throw RangeError("one recursion step supports d = 2 or 3");
  RecursionReport rep;
  rep.depth = d == 2 ? 10 : 8;
  rep.samples = sample_joint_sublevel({p1, p2}, K, samples, mix_seed(seed, 3), rep.depth, cfg.max_draws,
                                      &rep.draws, &rep.leaves);
  // a local outer net must also reach Z near every sample
  std::vector<std::vector<double>> seeds;
  std::vector<std::optional<std::vector<double>>> on_z(rep.samples.size());
  {
    PolyData a(normalize(p1)), b(normalize(p2));
    for (std::size_t s = 0; s < rep.samples.size(); ++s)
      if ((on_z[s] = project_to_common_zero(a, b, rep.samples[s]))) seeds.push_back(*on_z[s]);
  }
  rep.outer = cover_sublevel(p1, K, Ap, samples, seed, cfg, seeds);
  for (int p = 0; p < d; ++p) {
    Poly r = resultant(p1, p2, p);
    if (r.is_zero()) throw Error("the polynomials share a factor involving x" + std::to_string(p + 1));
    rep.resultants.push_back(r.to_string());
    if (r.degree() < 1)
      rep.inner.emplace_back(std::nullopt);
    else
      rep.inner.emplace_back(cover_sublevel(r, K, Ap, samples, mix_seed(seed, 10 + p), cfg));
  }
  if (rep.samples.empty()) {
    rep.empty = true;
    rep.covered_fraction = 1;
    return rep;
  }

  // outer_hash[p][level], inner_hash[p][level][inner pivot]
  std::vector<std::vector<GridHash>> outer_hash(d);
  std::vector<std::vector<std::vector<GridHash>>> inner_hash(d);
  for (int p = 0; p < d; ++p) {
    for (const auto& lv : rep.outer.levels) {
      GridHash h(lv.side);
      for (int g = 0; g < static_cast<int>(lv.graphs.size()); ++g)
        if (lv.graphs[g].pivot == p) h.insert(project_base(lv.graphs[g].center, p), g);
      outer_hash[p].push_back(std::move(h));
    }
    if (!rep.inner[p]) continue;
    for (const auto& lv : rep.inner[p]->levels) {
      std::vector<GridHash> per;
      for (int q = 0; q < d - 1; ++q) {
        GridHash h(lv.side);
        for (int g = 0; g < static_cast<int>(lv.graphs.size()); ++g)
          if (lv.graphs[g].pivot == q) h.insert(project_base(lv.graphs[g].center, q), g);
        per.push_back(std::move(h));
      }
      inner_hash[p].push_back(std::move(per));
    }
  }

  std::map<std::array<int, 5>, std::size_t> piece_index;
  std::size_t n = rep.samples.size();
  rep.ratio.assign(n, kInf);
  for (std::size_t s = 0; s < n; ++s) {
    const auto& x = rep.samples[s];
    std::array<int, 5> best_key{};
    std::vector<double> best_point;
    for (int p = 0; p < d; ++p) {
      if (!rep.inner[p]) continue;
      const CoveringReport& in = *rep.inner[p];
      std::vector<double> b = project_base(x, p);
      // lifts an inner graph point y through every outer graph over it
      auto lift = [&](const std::vector<double>& y, int il, int ig) {
        for (int ol = 0; ol < static_cast<int>(rep.outer.levels.size()); ++ol) {
          const LevelReport& olv = rep.outer.levels[ol];
          std::vector<double> yf = with_pivot(y, p, 0);
          outer_hash[p][ol].around(y, [&](int og) {
            const RegularGraph& gr = olv.graphs[og];
            if (!gr.base_contains(yf)) return;
            for (double v : gr.roots(yf)) {
              std::vector<double> z = yf;
              z[p] = v;
              double ratio = dist(x, z) / olv.width;
              if (ratio < rep.ratio[s]) {
                rep.ratio[s] = ratio;
                best_key = {p, olv.j, og, in.levels[il].j, ig};
                best_point = z;
              }
            }
          });
        }
      };
      for (int il = 0; il < static_cast<int>(in.levels.size()); ++il) {
        const LevelReport& ilv = in.levels[il];
        if (ilv.graphs.empty()) continue;
        std::vector<std::vector<double>> starts{b};
        if (on_z[s]) starts.push_back(project_base(*on_z[s], p));
        if (auto c = project_to_zero(*ilv.graphs[0].q, b); c && dist(*c, b) <= ilv.width) starts.push_back(*c);
        for (const auto& c : starts)
          for (int q = 0; q < d - 1; ++q)
            inner_hash[p][il][q].around(project_base(c, q), [&](int ig) {
              const RegularGraph& gr = ilv.graphs[ig];
              if (!gr.base_contains(c)) return;
              for (double v : gr.roots(c)) {
                std::vector<double> y = c;
                y[q] = v;
                lift(y, il, ig);
              }
            });
      }
    }
    if (rep.ratio[s] <= 1) {
      ++rep.covered;
      if (piece_index.emplace(best_key, rep.pieces.size()).second)
        rep.pieces.push_back({best_key[0], best_key[1], best_key[2], best_key[3], best_key[4], best_point});
    }
  }
  rep.covered_fraction = double(rep.covered) / n;
  return rep;
}

std::string to_json(const RecursionReport& r, const CoveringConfig& cfg) {
  json j;
  j["outer"] = report_json(r.outer, cfg);
  j["resultants"] = r.resultants;
  j["inner"] = json::array();
  for (const auto& in : r.inner) j["inner"].push_back(in ? report_json(*in, cfg) : json(nullptr));
  j["sampling"]["depth"] = r.depth;
  j["sampling"]["leaves"] = r.leaves;
  j["sampling"]["draws"] = r.draws;
  j["sampling"]["samples"] = r.samples.size();
  j["sampling"]["empty"] = r.empty;
  j["pieces"]["count"] = r.pieces.size();
  j["pieces"]["truncated"] = r.pieces.size() > cfg.report_boxes;
  j["pieces"]["list"] = json::array();
  for (std::size_t i = 0; i < r.pieces.size() && i < cfg.report_boxes; ++i) {
    const LiftedPiece& pc = r.pieces[i];
    j["pieces"]["list"].push_back({{"pivot", pc.pivot},
                                   {"outer_level", pc.outer_level},
                                   {"outer_graph", pc.outer_graph},
                                   {"inner_level", pc.inner_level},
                                   {"inner_graph", pc.inner_graph},
                                   {"point", pc.point}});
  }
  j["coverage"]["covered"] = r.covered;
  j["coverage"]["fraction"] = r.covered_fraction;
  return j.dump(2) + "\n";
}


}  // namespace quadinv
