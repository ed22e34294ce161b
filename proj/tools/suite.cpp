#include "suite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>

#include "quadinv/classify.hpp"
#include "quadinv/covering.hpp"
#include "quadinv/exponents.hpp"
#include "quadinv/fixtures.hpp"
#include "quadinv/invariants.hpp"
#include "quadinv/numeric.hpp"
#include "quadinv/pencil_rank.hpp"

namespace quadinv::suite {

namespace {

struct Outcome {
  bool pass = true;
  bool inconclusive = false;
  std::ostringstream detail;
  std::vector<std::string> failures;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    if (failures.size() < 8) failures.push_back(what);
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Rational rand_rat(Rng& rng, int range = 4, int den = 3) {
  long num = static_cast<long>(rng() % (2 * range + 1)) - range;
  long d = 1 + static_cast<long>(rng() % den);
  return make_rational(num, d);
}

// 1. row-rank versus determinant
void row_rank_trap(Outcome& o) {
  PolyMatrix m(2, 2, 2);
  m.at(0, 0) = m.at(0, 1) = Poly::variable(2, 0);
  m.at(1, 0) = m.at(1, 1) = Poly::variable(2, 1);
  int rr = row_rank(m);
  bool det_zero = det(m).is_zero();
  o.require(rr == 2, "row_rank = " + std::to_string(rr));
  o.require(det_zero, "determinant is not zero");
  o.detail << "row_rank=" << rr << " det=" << (det_zero ? "0" : "nonzero");
}

// 2. paraboloid critical exponent
void paraboloid_pc(Outcome& o) {
  CriticalP c = critical_p_paraboloid(2);
  o.require(c.value == make_rational(10, 3), "p_c(2) = " + to_string(c.value));
  Rational worst = 0;
  for (int d = 10; d <= 200; ++d) {
    int k = 2 * (d + 2) / 3;
    Rational err = abs(d * (critical_p_paraboloid(d).per_k.at(k) - 2) - 3);
    if (err > make_rational(10, d)) o.require(false, "d = " + std::to_string(d));
    worst = std::max(worst, Rational(err * d));
  }
  o.detail << "p_c(2)=" << to_string(c.value) << " max d*|d(p-2)-3|=" << to_string(worst) << " (limit 10)";
}

// 3. good-manifold critical exponent
void good_pc(Outcome& o) {
  CriticalP c = critical_p_good(4);
  o.require(c.value == make_rational(10, 3), "p_c(4) = " + to_string(c.value));
  Rational worst = 0;
  for (int d = 10; d <= 200; ++d) {
    Rational err = abs(d * (critical_p_good(d).value - 2) - 6);
    if (err > make_rational(20, d)) o.require(false, "d = " + std::to_string(d));
    worst = std::max(worst, Rational(err * d));
  }
  o.detail << "p_c(4)=" << to_string(c.value) << " max d*|d(p-2)-6|=" << to_string(worst) << " (limit 20)";
}

// 4. maximal codimension
void maxcodim(Outcome& o, std::uint64_t seed) {
  for (int d = 2; d <= 6; ++d)
    o.require(critical_p_maxcodim(d) == 2 * d + 2, "p_c(" + std::to_string(d) + ")");
  QuadTuple t = fixtures::mockenhaupt();
  int d = t.d, n = t.n(), k = d + 1;
  XTable tab = x_table(t, k, SliceOptions{}, seed);
  for (const auto& [m, e] : tab.entries) {
    if (e.confidence == Confidence::Inconclusive) o.inconclusive = true;
    o.require(e.confidence >= Confidence::HighConfidence, "X(" + std::to_string(m) + ") below HighConfidence");
  }
  Rational p = Rational(2 * d + 2) + make_rational(1, 100);
  VerifyReport r = verify_exponent_conditions(dec_exp_paraboloid_slice, tab, d, n, k, p);
  o.require(r.ok, "verify at " + to_string(p) + ": " + r.to_string());
  o.detail << "X=[";
  for (const auto& [m, e] : tab.entries) o.detail << (m ? "," : "") << e.value;
  o.detail << "] verify p=" << to_string(p) << " " << (r.ok ? "ok" : "fails");
}

// 5. X closed form for the paraboloid
void x_closed(Outcome& o, std::uint64_t seed) {
  int entries = 0;
  for (int d : {2, 3}) {
    std::vector<int> ks;
    for (int k = 2; k <= d + 1; ++k) ks.push_back(k);
    for (const XTable& tab : x_tables(fixtures::paraboloid(d), ks, SliceOptions{}, seed)) {
      for (const auto& [m, e] : tab.entries) {
        ++entries;
        if (e.confidence == Confidence::Inconclusive) o.inconclusive = true;
        std::string at = "d=" + std::to_string(d) + " k=" + std::to_string(tab.k) + " m=" + std::to_string(m);
        o.require(e.value == x_paraboloid_closed(d, tab.k, m), at + " value " + std::to_string(e.value));
        o.require(e.confidence >= Confidence::HighConfidence, at + " below HighConfidence");
      }
    }
  }
  o.detail << entries << " entries compared";
}

// 6. d-invariant bounds for the good fixture
void d_bounds(Outcome& o, std::uint64_t seed) {
  DTable tab = d_table(fixtures::good_d4().tuple(), RankSearchOptions{}, seed);
  auto status_ok = [&](const DEntry& e, int oracle) {
    const RankDecision& r = e.decision;
    if (r.status == RankStatus::Inconclusive) o.inconclusive = true;
    return r.status == RankStatus::Exact || (r.status == RankStatus::UpperBoundWitness && r.value == oracle);
  };
  for (int m = 0; m <= 2; ++m) {
    const DEntry& e = tab.at(4 - m, 2);
    std::string at = "d(" + std::to_string(4 - m) + ",2)";
    o.require(e.decision.value == 4 - m, at + " = " + std::to_string(e.decision.value));
    o.require(status_ok(e, 4 - m), at + " status " + to_string(e.decision.status));
  }
  for (int m = 0; m <= 1; ++m) {
    const DEntry& e = tab.at(4 - m, 1);
    int lower = std::max(0, 3 - 2 * m);
    std::string at = "d(" + std::to_string(4 - m) + ",1)";
    o.require(e.decision.value >= lower, at + " = " + std::to_string(e.decision.value));
    bool certified = e.decision.status == RankStatus::Exact || e.decision.certified_lower >= lower;
    o.require(certified, at + " lower bound not certified");
  }
  for (int dp = 0; dp <= 4; ++dp) {
    const DEntry& e = tab.at(dp, 0);
    o.require(e.decision.value == 0 && e.decision.status == RankStatus::Exact,
              "d(" + std::to_string(dp) + ",0) = " + std::to_string(e.decision.value));
  }
  o.detail << "d(4,2),d(3,2),d(2,2)=" << tab.at(4, 2).decision.value << "," << tab.at(3, 2).decision.value << ","
           << tab.at(2, 2).decision.value << " d(4,1),d(3,1)=" << tab.at(4, 1).decision.value << ","
           << tab.at(3, 1).decision.value;
}

// 7. lower bound on X for the good fixture
void x_good(Outcome& o, std::uint64_t seed) {
  int entries = 0;
  for (const XTable& tab : x_tables(fixtures::good_d4().tuple(), {3, 4, 5}, SliceOptions{}, seed)) {
    int k = tab.k;
    for (const auto& [m, e] : tab.entries) {
      ++entries;
      if (e.confidence == Confidence::Inconclusive) o.inconclusive = true;
      int bound = (m * (k - 1) + k) / (k + 1);  // ceil(m(k-1)/(k+1))
      o.require(e.value >= bound,
                "k=" + std::to_string(k) + " m=" + std::to_string(m) + " X=" + std::to_string(e.value));
    }
  }
  o.detail << entries << " entries checked";
}

// 8. classification
void classification(Outcome& o) {
  o.require(is_good(fixtures::good_d4()), "good fixture not good");
  GoodManifoldSpec h = fixtures::hyperbolic_tensor();
  o.require(!is_good(h), "hyperbolic tensor reported good");
  WeakConditionResult w = good_weak_condition(h);
  o.require(!w.holds && w.witness.has_value(), "weak condition holds on the hyperbolic tensor");
  QuadTuple ht = h.tuple();
  o.require(is_well_curved(ht.forms[0], ht.forms[1]), "hyperbolic tensor not well-curved");
  QuadTuple bad = parse_tuple("d=2; x1*x2; x1^2");
  o.require(!is_well_curved(bad.forms[0], bad.forms[1]), "(x1 x2, x1^2) reported well-curved");
  o.detail << "good=1 hyperbolic: good=0 weak=0 well_curved=1; (x1x2,x1^2): well_curved=0";
}

RatMatrix random_full_rank(Rng& rng, int r, int c) {
  while (true) {
    RatMatrix m(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) m(i, j) = static_cast<long>(rng() % 7) - 3;
    if (rank(m) == r) return m;
  }
}

// 9. projection-dimension identity
void proj_identity(Outcome& o, std::uint64_t seed) {
  std::vector<QuadTuple> tuples{fixtures::paraboloid(3), fixtures::good_d4().tuple()};
  int failures = 0;
  for (std::size_t ti = 0; ti < tuples.size(); ++ti) {
    const QuadTuple& t = tuples[ti];
    int big = t.d + t.n();
    Rng rng = make_rng(seed, 900 + ti);
    for (int it = 0; it < 1000; ++it) {
      int m = 1 + static_cast<int>(rng() % big);
      RatMatrix v = random_full_rank(rng, m, big);
      std::vector<Rational> xi;
      for (int j = 0; j < t.d; ++j) xi.push_back(make_rational(static_cast<long>(rng() % 41) - 20, 1 + rng() % 4));
      TangentFrame f = tangent_frame(t, xi);
      RatMatrix vperp = nullspace(v);
      RatMatrix tperp = nullspace(f.frame.transpose());
      int rhs = vperp.cols() == 0 ? 0 : rank(vperp.transpose() * tperp);
      if (proj_dim(v, f) != m - t.n() + rhs) ++failures;
    }
  }
  o.require(failures == 0, std::to_string(failures) + " instances disagree");
  o.detail << "2000 instances, " << failures << " disagreements";
}

// 10. covering
void covering(Outcome& o, std::uint64_t seed, long samples) {
  auto t0 = std::chrono::steady_clock::now();
  CoveringReport c = cover_sublevel(fixtures::poly("circle_r0.5"), 1000, 2, samples, seed);
  double tc = seconds_since(t0);
  o.require(tc <= 300, "circle run over 300 s");
  o.require(static_cast<long>(c.samples.size()) == samples, "circle: too few samples");
  o.require(c.covered_fraction == 1.0, "circle covered " + std::to_string(c.covered_fraction));
  o.require(c.grad_and_pivot_audits_pass(), "circle: gradient or pivot audit failed");
  o.require(c.overlap_ok, "circle: overlap " + std::to_string(c.max_overlap));
  t0 = std::chrono::steady_clock::now();
  CoveringReport k = cover_sublevel(fixtures::cone(), 1000, 2, samples, seed);
  double tk = seconds_since(t0);
  o.require(tk <= 300, "cone run over 300 s");
  o.require(k.covered_fraction >= 0.999, "cone covered " + std::to_string(k.covered_fraction));
  o.require(k.overlap_ok, "cone: overlap " + std::to_string(k.max_overlap));
  o.detail << "circle " << c.covered << "/" << c.samples.size() << " overlap " << c.max_overlap << " in " << tc
           << " s; cone " << k.covered << "/" << k.samples.size() << " overlap " << k.max_overlap << " in " << tk << " s";
}

PolyMatrix rand_poly_matrix(Rng& rng, int r, int c, int nvars) {
  PolyMatrix m(r, c, nvars);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) {
      int terms = static_cast<int>(rng() % 3);
      for (int t = 0; t < terms; ++t) {
        Exponents e(nvars, 0);
        e[rng() % nvars] += static_cast<unsigned>(rng() % 3);
        m.at(i, j).add_term(e, rand_rat(rng));
      }
    }
  return m;
}

RatMatrix rand_invertible(Rng& rng, int n) {
  while (true) {
    RatMatrix m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = rand_rat(rng);
    if (det(m) != 0) return m;
  }
}

// 11. property suites
void properties(Outcome& o, std::uint64_t seed) {
  // identity testing on a grid against coefficient inspection
  Rng rng = make_rng(seed, 1100);
  int pit = 0, pit_bad = 0, pit_zero = 0;
  while (pit < 1000) {
    int n = 1 + static_cast<int>(rng() % 4);
    auto rand_poly = [&](int maxdeg, int terms) {
      Poly p(n);
      for (int t = 0; t < terms; ++t) {
        Exponents e(n, 0);
        int budget = static_cast<int>(rng() % (maxdeg + 1));
        for (int k = 0; k < budget; ++k) e[rng() % n] += 1;
        p.add_term(e, rand_rat(rng));
      }
      return p;
    };
    Poly a = rand_poly(3, 3), b = rand_poly(3, 3);
    Poly r = (rng() % 2) ? rand_poly(6, 1) : Poly(n);
    bool tele = pit % 2;
    Poly p = tele ? a * b - b * a + (a + b) * (a - b) - a * a + b * b + r : rand_poly(6, 1 + rng() % 8) + r;
    if (p.degree() > 6) continue;
    int bound = tele ? std::max({2 * a.degree(), 2 * b.degree(), r.degree(), 0}) : std::max(p.degree(), 0);
    if (bound > 6) continue;
    // the telescoping side is evaluated unexpanded so its zero cases exercise the grid
    auto f = [&](const std::vector<Rational>& x) {
      if (!tele) return p.eval(x);
      Rational av = a.eval(x), bv = b.eval(x);
      return Rational(av * bv - bv * av + (av + bv) * (av - bv) - av * av + bv * bv + r.eval(x));
    };
    ++pit;
    bool coeff = is_identically_zero(p);
    pit_zero += coeff;
    if (coeff != vanishes_on_grid(p) || coeff != vanishes_on_grid(n, bound, f)) ++pit_bad;
  }
  o.require(pit_zero > 100, std::to_string(pit_zero) + " identically zero cases");
  o.require(pit_bad == 0, std::to_string(pit_bad) + " identity-test disagreements");

  // minor-sum polynomial vanishes exactly where the rank drops
  rng = make_rng(seed, 1101);
  int minor_bad = 0;
  for (int it = 0; it < 500; ++it) {
    int r = 1 + rng() % 3, c = 1 + rng() % 3;
    int nv = 1 + rng() % 2;
    PolyMatrix b = rand_poly_matrix(rng, r, c, nv);
    int x = 1 + static_cast<int>(rng() % std::min(r, c));
    Poly s = minor_sum_poly(b, x);
    std::vector<Rational> v(nv);
    for (auto& q : v) q = (rng() % 2) ? Rational(0) : rand_rat(rng);
    if ((rank(b.evaluate(v)) < x) != (s.eval(v) == 0)) ++minor_bad;
  }
  o.require(minor_bad == 0, std::to_string(minor_bad) + " minor-sum disagreements");

  // row-rank under invertible multiplication
  rng = make_rng(seed, 1102);
  int inv_bad = 0;
  for (int it = 0; it < 500; ++it) {
    int r = 1 + rng() % 5, c = 1 + rng() % 5;
    int nv = 1 + rng() % 3;
    PolyMatrix b = rand_poly_matrix(rng, r, c, nv);
    int rr = row_rank(b);
    PolyMatrix left = PolyMatrix::constant(rand_invertible(rng, r), nv) * b;
    PolyMatrix right = b * PolyMatrix::constant(rand_invertible(rng, c), nv);
    if (row_rank(left) != rr || row_rank(right) != rr) ++inv_bad;
  }
  o.require(inv_bad == 0, std::to_string(inv_bad) + " row-rank invariance failures");

  // every matrix lies in exactly the echelon family of its pivots
  rng = make_rng(seed, 1103);
  int ech_bad = 0;
  for (int it = 0; it < 200; ++it) {
    int d = 2 + rng() % 4;
    int rk = 1 + static_cast<int>(rng() % d);
    RatMatrix a(d, rk), b(rk, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < rk; ++j) a(i, j) = rand_rat(rng);
    for (int i = 0; i < rk; ++i)
      for (int j = 0; j < d; ++j) b(i, j) = rand_rat(rng);
    RatMatrix m = a * b;
    int r = rank(m);
    std::vector<int> piv;
    RatMatrix e = rref(m, &piv);
    const EchelonFamily* match = nullptr;
    auto fams = echelon_types(d, r);
    for (const auto& f : fams)
      if (f.pivots == piv) match = &f;
    if (!match) {
      ++ech_bad;
      continue;
    }
    std::vector<Rational> params;
    std::vector<bool> is_piv(d, false);
    for (int p : piv) is_piv[p] = true;
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < d; ++j)
        if (!is_piv[j]) params.push_back(e(i, j));
    if (!(match->instantiate(params) == e)) ++ech_bad;
  }
  o.require(ech_bad == 0, std::to_string(ech_bad) + " echelon completeness failures");
  o.detail << "identity 1000, minor-sum 500, invariance 500, echelon 200 cases";
}

struct Criterion {
  int id;
  const char* name;
  double limit;
  std::function<void(Outcome&, const Options&)> body;
};

}  // namespace

std::vector<Check> run(const Options& opt) {
  const std::vector<Criterion> all{
      {1, "row-rank counterexample", 1, [](Outcome& o, const Options&) { row_rank_trap(o); }},
      {2, "paraboloid critical exponent", 1, [](Outcome& o, const Options&) { paraboloid_pc(o); }},
      {3, "good-manifold critical exponent", 1, [](Outcome& o, const Options&) { good_pc(o); }},
      {4, "maximal codimension", 600, [](Outcome& o, const Options& op) { maxcodim(o, op.seed); }},
      {5, "X closed form", 900, [](Outcome& o, const Options& op) { x_closed(o, op.seed); }},
      {6, "d-invariant bounds", 600, [](Outcome& o, const Options& op) { d_bounds(o, op.seed); }},
      {7, "X lower bound for the good fixture", 900, [](Outcome& o, const Options& op) { x_good(o, op.seed); }},
      {8, "classification", 1, [](Outcome& o, const Options&) { classification(o); }},
      {9, "projection-dimension identity", 60, [](Outcome& o, const Options& op) { proj_identity(o, op.seed); }},
      // two runs, each limited to 300 s
      {10, "covering", 600,
       [](Outcome& o, const Options& op) { covering(o, op.seed, op.cover_samples); }},
      {11, "property suites", 300, [](Outcome& o, const Options& op) { properties(o, op.seed); }},
  };
  std::vector<Check> out;
  for (const auto& c : all) {
    if (!opt.only.empty() && std::find(opt.only.begin(), opt.only.end(), c.id) == opt.only.end()) continue;
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    try {
      c.body(o, opt);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    Check r;
    r.id = c.id;
    r.name = c.name;
    r.seconds = seconds_since(t0);
    r.limit_seconds = c.limit;
    if (r.seconds > c.limit) o.require(false, "time limit exceeded");
    r.pass = o.pass;
    r.inconclusive = o.inconclusive;
    r.detail = o.detail.str();
    for (std::size_t i = 0; i < o.failures.size(); ++i) r.detail += (i ? "; " : " | failed: ") + o.failures[i];
    out.push_back(std::move(r));
  }
  return out;
}

std::string line(const Check& c) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(2);
  os << (c.pass ? "PASS" : "FAIL") << " " << c.id << " " << c.name << " (" << c.seconds << " s, limit "
     << c.limit_seconds << " s): " << c.detail;
  return os.str();
}

}  // namespace quadinv::suite
