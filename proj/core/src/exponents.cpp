#include "quadinv/exponents.hpp"

#include <sstream>

#include <nlohmann/json.hpp>
#include "quadinv/error.hpp"

namespace quadinv {

namespace {

void check_p(const Rational& p) {
  if (p < 2) throw RangeError("p must be at least 2");
}

Rational max0(std::initializer_list<Rational> v) {
  Rational m = 0;
  for (const auto& x : v)
    if (x > m) m = x;
  return m;
}

CriticalP min_over_k(int k_lo, int k_hi, const std::function<Rational(int)>& per_k) {
  CriticalP out;
  for (int k = k_lo; k <= k_hi; ++k) {
    Rational v = per_k(k);
    out.per_k[k] = v;
    if (k == k_lo || v < out.value) {
      out.value = v;
      out.argmin_k = k;
    }
  }
  return out;
}

}  // namespace

Rational dec_exp_paraboloid_slice(int k, int d, const Rational& p) {
  if (k < 2 || d < 1) throw RangeError("need k >= 2 and d >= 1");
  check_p(p);
  Rational s = make_rational(1, 2) - 1 / p;
  return max0({(k - 2) * s, (k - 2) - 2 * (k - 1) / p});
}

Rational dec_exp_codim2_slice(int k, int d, const Rational& p) {
  if (k < 3 || k > d + 1) throw RangeError("need 3 <= k <= d+1");
  check_p(p);
  Rational s = make_rational(1, 2) - 1 / p;
  Rational first = (k - 2) * s;
  Rational middle = std::min(Rational(2 * (k - 2) * s - 2 / p), Rational((d + 1) * s - 2 / p));
  Rational last = (k - 2) - (2 * (k - 2) + 4) / p;
  return max0({first, middle, last});
}

CriticalP critical_p_paraboloid(int d) {
  if (d < 1) throw RangeError("d must be positive");
  return min_over_k(2, d + 1, [d](int k) {
    return std::max(make_rational(2 * k, k - 1), make_rational(2 * (2 * d - k + 4), 2 * d - k + 2));
  });
}

CriticalP critical_p_good(int d) {
  if (d < 2) throw RangeError("d must be at least 2");
  return min_over_k(3, d + 1, [d](int k) {
    return std::max(make_rational(2 * (k + 1), k - 1), make_rational(2 * (2 * d - k + 6), 2 * d - k + 2));
  });
}

Rational critical_p_maxcodim(int d) {
  if (d < 1) throw RangeError("d must be positive");
  return 2 * d + 2;
}

Rational tomas_stein_wellcurved(int d) {
  if (d < 2) throw RangeError("d must be at least 2");
  return 2 + make_rational(8, d);
}

Rational conjectured_wellcurved(int d) {
  if (d < 2) throw RangeError("d must be at least 2");
  return 2 + make_rational(4, d);
}

std::string VerifyReport::to_string() const {
  std::ostringstream os;
  os << (ok ? "pass" : "fail") << ": dec " << dec.get_str() << (dec_ok ? " <= " : " > ") << dec_bound.get_str();
  if (!violating_m.empty()) {
    os << "; 2m/p > X at m =";
    for (int m : violating_m) os << " " << m;
  }
  return os.str();
}

VerifyReport verify_exponent_conditions(const DecSliceFn& dec, const std::map<int, int>& x, int d, int n, int k,
                                        const Rational& p) {
  if (k < 2 || k > d + 1) throw RangeError("k must satisfy 2 <= k <= d+1");
  check_p(p);
  for (int m = 0; m <= d + n; ++m)
    if (!x.count(m)) throw Error("X table incomplete at m = " + std::to_string(m));
  VerifyReport r;
  r.dec = dec(k, d, p);
  r.dec_bound = d - (2 * d + 2 * n) / p;
  r.dec_ok = r.dec <= r.dec_bound;
  for (int m = 0; m <= d + n; ++m)
    if (2 * m / p > x.at(m)) r.violating_m.push_back(m);
  r.ok = r.dec_ok && r.violating_m.empty();
  return r;
}

VerifyReport verify_exponent_conditions(const DecSliceFn& dec, const XTable& x, int d, int n, int k,
                                        const Rational& p) {
  if (x.k != k) throw Error("X table was computed for a different k");
  std::map<int, int> values;
  for (const auto& [m, e] : x.entries) values[m] = e.value;
  return verify_exponent_conditions(dec, values, d, n, k, p);
}

namespace {

CriticalP critical_for(const std::string& family, int d) {
  if (family == "paraboloid") return critical_p_paraboloid(d);
  if (family == "good") return critical_p_good(d);
  if (family == "maxcodim") return CriticalP{critical_p_maxcodim(d), d + 1, {{d + 1, critical_p_maxcodim(d)}}};
  throw Error("unknown exponent family: " + family);
}

}  // namespace

std::string critical_table_csv(const std::string& family, int d_min, int d_max) {
  std::ostringstream os;
  os << "family,d,p_c,argmin_k,k,value_k\n";
  for (int d = d_min; d <= d_max; ++d) {
    CriticalP c = critical_for(family, d);
    for (const auto& [k, v] : c.per_k)
      os << family << "," << d << "," << c.value.get_str() << "," << c.argmin_k << "," << k << "," << v.get_str()
         << "\n";
  }
  return os.str();
}

std::string critical_table_json(const std::string& family, int d_min, int d_max) {
  nlohmann::ordered_json j;
  j["family"] = family;
  j["rows"] = nlohmann::ordered_json::array();
  for (int d = d_min; d <= d_max; ++d) {
    CriticalP c = critical_for(family, d);
    nlohmann::ordered_json r;
    r["d"] = d;
    r["p_c"] = c.value.get_str();
    r["argmin_k"] = c.argmin_k;
    r["per_k"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : c.per_k) r["per_k"][std::to_string(k)] = v.get_str();
    j["rows"].push_back(r);
  }
  return j.dump(2) + "\n";
}

std::string plot_data_csv(int d_min, int d_max) {
  std::ostringstream os;
  os.precision(10);
  os << "d,paraboloid,good,two_plus_4_over_d,two_plus_6_over_d,two_plus_8_over_d\n";
  for (int d = std::max(2, d_min); d <= d_max; ++d)
    os << d << "," << critical_p_paraboloid(d).value.get_d() << "," << critical_p_good(d).value.get_d() << ","
       << 2 + 4.0 / d << "," << 2 + 6.0 / d << "," << 2 + 8.0 / d << "\n";
  return os.str();
}

}  // namespace quadinv
