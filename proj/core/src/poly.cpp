#include "quadinv/poly.hpp"

#include <cctype>
#include <numeric>
#include <sstream>

#include "quadinv/error.hpp"

namespace quadinv {

unsigned total_degree(const Exponents& e) {
  return std::accumulate(e.begin(), e.end(), 0u);
}

bool GrlexLess::operator()(const Exponents& a, const Exponents& b) const {
  unsigned da = total_degree(a), db = total_degree(b);
  if (da != db) return da < db;
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return a.size() < b.size();
}

Poly Poly::constant(int nvars, const Rational& c) {
  Poly p(nvars);
  p.add_term(Exponents(nvars, 0), c);
  return p;
}

Poly Poly::variable(int nvars, int index) {
  if (index < 0 || index >= nvars) throw RangeError("variable index out of range");
  Exponents e(nvars, 0);
  e[index] = 1;
  return monomial(nvars, e, 1);
}

Poly Poly::monomial(int nvars, const Exponents& e, const Rational& c) {
  if (static_cast<int>(e.size()) != nvars) throw DimensionError("exponent length mismatch");
  Poly p(nvars);
  p.add_term(e, c);
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
}

int Poly::degree() const {
  if (terms_.empty()) return -1;
  return static_cast<int>(total_degree(terms_.rbegin()->first));
}

int Poly::degree_in(int var) const {
  int d = terms_.empty() ? -1 : 0;
  for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(e[var]));
  return d;
}

bool Poly::is_homogeneous(int deg) const {
  for (const auto& [e, c] : terms_) {
    if (static_cast<int>(total_degree(e)) != deg) return false;
  }
  return true;
}

Rational Poly::coeff(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Poly::add_term(const Exponents& e, const Rational& c) {
  if (static_cast<int>(e.size()) != nvars_) throw DimensionError("exponent length mismatch");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly& Poly::operator+=(const Poly& o) {
  if (nvars_ != o.nvars_) throw DimensionError("variable count mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (nvars_ != o.nvars_) throw DimensionError("variable count mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Poly& Poly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& [e, v] : r.terms_) v = -v;
  return r;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.nvars_ != b.nvars_) throw DimensionError("variable count mismatch");
  Poly r(a.nvars_);
  if (a.is_zero() || b.is_zero()) return r;
  Exponents e(a.nvars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (int i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

Poly Poly::pow(unsigned k) const {
  Poly r = constant(nvars_, 1);
  Poly base = *this;
  while (k) {
    if (k & 1u) r = r * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return r;
}

Poly Poly::derivative(int var) const {
  if (var < 0 || var >= nvars_) throw RangeError("variable index out of range");
  Poly r(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponents f = e;
    f[var] -= 1;
    r.add_term(f, c * e[var]);
  }
  return r;
}

Rational Poly::eval(const std::vector<Rational>& x) const {
  if (static_cast<int>(x.size()) != nvars_) throw DimensionError("point dimension mismatch");
  // cache powers per variable
  std::vector<std::vector<Rational>> pw(nvars_);
  for (int i = 0; i < nvars_; ++i) {
    pw[i].push_back(1);
    int di = degree_in(i);
    for (int k = 1; k <= di; ++k) pw[i].push_back(pw[i].back() * x[i]);
  }
  Rational s = 0;
  Rational t;
  for (const auto& [e, c] : terms_) {
    t = c;
    for (int i = 0; i < nvars_; ++i) {
      if (e[i]) t *= pw[i][e[i]];
    }
    s += t;
  }
  return s;
}

double Poly::eval(const std::vector<double>& x) const {
  if (static_cast<int>(x.size()) != nvars_) throw DimensionError("point dimension mismatch");
  double s = 0;
  for (const auto& [e, c] : terms_) {
    double t = c.get_d();
    for (int i = 0; i < nvars_; ++i) {
      for (unsigned k = 0; k < e[i]; ++k) t *= x[i];
    }
    s += t;
  }
  return s;
}

Poly Poly::substitute(const std::vector<Poly>& images) const {
  if (static_cast<int>(images.size()) != nvars_) throw DimensionError("substitution arity mismatch");
  int m = images.empty() ? 0 : images[0].nvars();
  for (const auto& im : images) {
    if (im.nvars() != m) throw DimensionError("substitution images disagree on variable count");
  }
  std::vector<std::vector<Poly>> pw(nvars_);
  for (int i = 0; i < nvars_; ++i) {
    pw[i].push_back(constant(m, 1));
    int di = degree_in(i);
    for (int k = 1; k <= di; ++k) pw[i].push_back(pw[i].back() * images[i]);
  }
  Poly r(m);
  for (const auto& [e, c] : terms_) {
    Poly t = constant(m, c);
    for (int i = 0; i < nvars_; ++i) {
      if (e[i]) t = t * pw[i][e[i]];
    }
    r += t;
  }
  return r;
}

Poly Poly::fix_leading(const std::vector<Rational>& values) const {
  int k = static_cast<int>(values.size());
  if (k > nvars_) throw DimensionError("too many fixed values");
  int m = nvars_ - k;
  std::vector<std::vector<Rational>> pw(k);
  for (int i = 0; i < k; ++i) {
    pw[i].push_back(1);
    int di = degree_in(i);
    for (int j = 1; j <= di; ++j) pw[i].push_back(pw[i].back() * values[i]);
  }
  Poly r(m);
  Exponents f(m);
  Rational t;
  for (const auto& [e, c] : terms_) {
    t = c;
    for (int i = 0; i < k; ++i) {
      if (e[i]) t *= pw[i][e[i]];
    }
    if (t == 0) continue;
    for (int i = 0; i < m; ++i) f[i] = e[k + i];
    r.add_term(f, t);
  }
  return r;
}

Poly Poly::embed(int nvars, int offset) const {
  if (offset < 0 || offset + nvars_ > nvars) throw DimensionError("embedding out of range");
  Poly r(nvars);
  Exponents f(nvars, 0);
  for (const auto& [e, c] : terms_) {
    std::fill(f.begin(), f.end(), 0u);
    for (int i = 0; i < nvars_; ++i) f[offset + i] = e[i];
    r.add_term(f, c);
  }
  return r;
}

Rational Poly::l1_norm() const {
  Rational s = 0;
  for (const auto& [e, c] : terms_) s += abs(c);
  return s;
}

std::string Poly::to_string() const {
  std::vector<std::string> names;
  for (int i = 0; i < nvars_; ++i) names.push_back("x" + std::to_string(i + 1));
  return to_string(names);
}

std::string Poly::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool has_var = total_degree(e) > 0;
    bool wrote = false;
    if (!has_var || mag != 1) {
      os << mag.get_str();
      wrote = true;
    }
    for (int i = 0; i < nvars_; ++i) {
      if (!e[i]) continue;
      if (wrote) os << "*";
      os << names[i];
      if (e[i] > 1) os << "^" << e[i];
      wrote = true;
    }
  }
  return os.str();
}

bool is_identically_zero(const Poly& p) { return p.is_zero(); }

bool vanishes_on_grid(const Poly& p) {
  int n = p.nvars();
  int D = p.degree();
  if (D < 0) return true;
  // clear denominators, then evaluate with integers
  Integer l = 1;
  for (const auto& [e, c] : p.terms()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  std::vector<std::pair<const Exponents*, Integer>> terms;
  for (const auto& [e, c] : p.terms()) terms.emplace_back(&e, Integer(c.get_num() * (l / c.get_den())));
  // powers[v][e] = v^e for grid values v = 1..D+1
  std::vector<std::vector<Integer>> powers(D + 2, std::vector<Integer>(D + 1));
  for (int v = 1; v <= D + 1; ++v) {
    powers[v][0] = 1;
    for (int e = 1; e <= D; ++e) powers[v][e] = powers[v][e - 1] * v;
  }
  std::vector<int> x(n, 1);
  Integer s, t;
  while (true) {
    s = 0;
    for (const auto& [e, c] : terms) {
      t = c;
      for (int i = 0; i < n; ++i) {
        if ((*e)[i]) t *= powers[x[i]][(*e)[i]];
      }
      s += t;
    }
    if (s != 0) return false;
    int i = 0;
    while (i < n && x[i] == D + 1) x[i++] = 1;
    if (i == n) break;
    ++x[i];
  }
  return true;
}

bool vanishes_on_grid(int nvars, int degree_bound,
                      const std::function<Rational(const std::vector<Rational>&)>& f) {
  if (nvars < 0 || degree_bound < 0) throw Error("vanishes_on_grid: bad arguments");
  int top = degree_bound + 1;
  std::vector<int> x(nvars, 1);
  std::vector<Rational> pt(nvars, Rational(1));
  while (true) {
    if (f(pt) != 0) return false;
    int i = 0;
    while (i < nvars && x[i] == top) {
      x[i] = 1;
      pt[i] = 1;
      ++i;
    }
    if (i == nvars) break;
    pt[i] = ++x[i];
  }
  return true;
}

Poly normalize(const Poly& p) {
  if (p.is_zero()) throw Error("cannot normalize the zero polynomial");
  Rational n = p.l1_norm();
  return p * Rational(1 / n);
}

namespace {

class Parser {
 public:
  Parser(const std::string& text, std::size_t begin, std::size_t end, int nvars)
      : s_(text), nvars_(nvars), pos_(begin), end_(end) {}

  Poly parse() {
    Poly p = expr();
    skip_ws();
    if (pos_ < end_) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    int line = 1, col = 1;
    for (std::size_t i = 0; i < pos_ && i < s_.size(); ++i) {
      if (s_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(msg, line, col);
  }

  void skip_ws() {
    while (pos_ < end_ && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < end_ && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Poly expr() {
    Poly p = term();
    while (true) {
      if (accept('+')) {
        p += term();
      } else if (accept('-')) {
        p -= term();
      } else {
        return p;
      }
    }
  }

  Poly term() {
    Poly p = unary();
    while (accept('*')) p = p * unary();
    return p;
  }

  Poly unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Poly power() {
    Poly base = atom();
    if (accept('^')) {
      skip_ws();
      std::string digits = read_digits();
      if (digits.empty()) fail("expected integer exponent");
      if (digits.size() > 3) fail("exponent too large");
      base = base.pow(static_cast<unsigned>(std::stoul(digits)));
    }
    return base;
  }

  std::string read_digits() {
    std::size_t b = pos_;
    while (pos_ < end_ && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return s_.substr(b, pos_ - b);
  }

  Poly atom() {
    skip_ws();
    if (pos_ >= end_) fail("unexpected end of input");
    char c = s_[pos_];
    Poly r;
    if (c == '(') {
      ++pos_;
      r = expr();
      if (!accept(')')) fail("expected ')'");
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num = read_digits();
      if (pos_ < end_ && s_[pos_] == '/') {
        ++pos_;
        std::string den = read_digits();
        if (den.empty()) fail("expected denominator");
        if (Integer(den) == 0) fail("zero denominator");
        num += "/" + den;
      }
      r = Poly::constant(nvars_, parse_rational(num));
    } else if (c == 'x') {
      std::size_t start = pos_;
      ++pos_;
      std::string idx = read_digits();
      if (idx.empty()) {
        pos_ = start;
        fail("expected variable index after 'x'");
      }
      long i = idx.size() > 6 ? 0 : std::stol(idx);
      if (i < 1 || i > nvars_) {
        pos_ = start;
        fail("variable x" + idx + " out of range 1.." + std::to_string(nvars_));
      }
      r = Poly::variable(nvars_, static_cast<int>(i - 1));
    } else {
      fail("unexpected character '" + std::string(1, c) + "'");
    }
    // catches implicit multiplication such as "2x1" or "x1 x2"
    std::size_t save = pos_;
    skip_ws();
    if (pos_ < end_) {
      char n = s_[pos_];
      if (n == '(' || n == 'x' || std::isdigit(static_cast<unsigned char>(n))) {
        fail("implicit multiplication is not allowed");
      }
    }
    pos_ = save;
    return r;
  }

  const std::string& s_;
  int nvars_;
  std::size_t pos_;
  std::size_t end_;
};

}  // namespace

Poly parse_poly(const std::string& text, int nvars) {
  if (nvars < 1) throw RangeError("variable count must be positive");
  return Parser(text, 0, text.size(), nvars).parse();
}

Poly parse_poly_range(const std::string& text, std::size_t begin, std::size_t end, int nvars) {
  if (nvars < 1) throw RangeError("variable count must be positive");
  return Parser(text, begin, end, nvars).parse();
}

}  // namespace quadinv
