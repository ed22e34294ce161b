#include "quadinv/classify.hpp"

#include "quadinv/error.hpp"
#include "quadinv/matrix.hpp"

namespace quadinv {

QuadTuple GoodManifoldSpec::tuple() const {
  if (a.size() != b.size()) throw DimensionError("a and b must have the same length");
  return make_tuple({RatMatrix::diagonal(a), RatMatrix::diagonal(b)});
}

bool is_good(const GoodManifoldSpec& spec) {
  int d = spec.d();
  if (static_cast<int>(spec.b.size()) != d) throw DimensionError("a and b must have the same length");
  for (const auto& v : spec.a)
    if (v <= 0) return false;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      if (spec.a[i] * spec.b[j] - spec.a[j] * spec.b[i] == 0) return false;
  return true;
}

namespace {

// Solves C_S w = (1, 0, 0) for the columns (1, a_i, b_i), i in s, when the
// columns are independent and the solution is unique.
std::optional<std::vector<Rational>> solve_support(const GoodManifoldSpec& spec, const std::vector<int>& s) {
  int k = static_cast<int>(s.size());
  RatMatrix aug(3, k + 1);
  for (int c = 0; c < k; ++c) {
    aug(0, c) = 1;
    aug(1, c) = spec.a[s[c]];
    aug(2, c) = spec.b[s[c]];
  }
  aug(0, k) = 1;
  std::vector<int> piv;
  RatMatrix r = rref(aug, &piv);
  if (static_cast<int>(piv.size()) != k) return std::nullopt;  // dependent columns or inconsistent
  for (int p : piv)
    if (p == k) return std::nullopt;
  std::vector<Rational> w(k);
  for (int i = 0; i < k; ++i) w[piv[i]] = r(i, k);
  return w;
}

}  // namespace

WeakConditionResult good_weak_condition(const GoodManifoldSpec& spec) {
  int d = spec.d();
  if (static_cast<int>(spec.b.size()) != d) throw DimensionError("a and b must have the same length");
  // Any nonempty face of the feasible polytope has a vertex supported on at most
  // three coordinates with independent columns.
  std::vector<int> s;
  for (int size = 1; size <= std::min(3, d); ++size) {
    s.assign(size, 0);
    for (int i = 0; i < size; ++i) s[i] = i;
    while (true) {
      auto w = solve_support(spec, s);
      bool ok = w.has_value();
      if (ok)
        for (const auto& v : *w) ok = ok && v >= 0;
      if (ok) {
        std::vector<Rational> full(d, Rational(0));
        for (int i = 0; i < size; ++i) full[s[i]] = (*w)[i];
        return {false, full};
      }
      int i = size - 1;
      while (i >= 0 && s[i] == d - size + i) --i;
      if (i < 0) break;
      ++s[i];
      for (int j = i + 1; j < size; ++j) s[j] = s[j - 1] + 1;
    }
  }
  return {true, std::nullopt};
}

std::vector<Rational> pencil_binary_form(const QuadForm& p, const QuadForm& q) {
  if (p.d() != q.d()) throw DimensionError("forms must share the dimension");
  int d = p.d();
  RatMatrix hp = Rational(2) * p.matrix();
  RatMatrix hq = Rational(2) * q.matrix();
  std::vector<Rational> ts, vals;
  for (int i = 0; i <= d; ++i) {
    Rational t = i;
    ts.push_back(t);
    vals.push_back(det(hp + t * hq));
  }
  // F(1, t) has degree <= d, so d+1 samples determine it.
  std::vector<Rational> c = interpolate(ts, vals).coeffs();
  c.resize(d + 1, Rational(0));
  return c;
}

WellCurvedResult well_curved_analysis(const QuadForm& p, const QuadForm& q) {
  WellCurvedResult res;
  int d = p.d();
  res.binary_form = pencil_binary_form(p, q);
  UPoly f(res.binary_form);
  if (f.is_zero()) {
    res.f_zero = true;
    return res;
  }
  // F(x, y) = x^(d - deg f) * (homogenized f): the degree deficit is the multiplicity of x.
  int mult = d - f.degree();
  for (const auto& [factor, i] : squarefree_decomposition(f)) mult = std::max(mult, i);
  res.max_multiplicity = mult;
  res.value = 2 * mult <= d;
  return res;
}

bool is_well_curved(const QuadForm& p, const QuadForm& q) { return well_curved_analysis(p, q).value; }

}  // namespace quadinv
