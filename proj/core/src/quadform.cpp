#include "quadinv/quadform.hpp"

#include <algorithm>
#include <cctype>

#include "quadinv/error.hpp"

namespace quadinv {

QuadForm::QuadForm(const RatMatrix& a) : a_(a) {
  if (!a.is_symmetric()) throw DimensionError("quadratic form matrix must be square and symmetric");
}

QuadForm QuadForm::from_poly(const Poly& p) {
  int d = p.nvars();
  RatMatrix a(d, d);
  for (const auto& [e, c] : p.terms()) {
    if (total_degree(e) != 2) throw Error("form is not homogeneous quadratic: " + p.to_string());
    std::vector<int> idx;
    for (int i = 0; i < d; ++i)
      for (unsigned k = 0; k < e[i]; ++k) idx.push_back(i);
    if (idx[0] == idx[1]) {
      a(idx[0], idx[0]) = c;
    } else {
      a(idx[0], idx[1]) = c / 2;
      a(idx[1], idx[0]) = c / 2;
    }
  }
  return QuadForm(a);
}

Poly QuadForm::to_poly() const {
  int d = a_.rows();
  Poly p(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      if (a_(i, j) == 0) continue;
      Exponents e(d, 0);
      e[i] += 1;
      e[j] += 1;
      p.add_term(e, a_(i, j));
    }
  return p;
}

RatMatrix hessian_half(const QuadForm& q) { return q.matrix(); }

QuadForm quad_of_matrix(const RatMatrix& a) { return QuadForm(a); }

std::vector<RatMatrix> QuadTuple::matrices() const {
  std::vector<RatMatrix> out;
  for (const auto& f : forms) out.push_back(f.matrix());
  return out;
}

QuadTuple make_tuple(const std::vector<RatMatrix>& mats) {
  if (mats.empty()) throw DimensionError("tuple needs at least one form");
  QuadTuple t;
  t.d = mats[0].rows();
  for (const auto& m : mats) {
    if (m.rows() != t.d) throw DimensionError("forms disagree on dimension");
    t.forms.emplace_back(m);
  }
  return t;
}

QuadTuple substitute_linear(const QuadTuple& t, const RatMatrix& m) {
  if (m.rows() != t.d || m.cols() != t.d) throw DimensionError("substitution matrix must be d x d");
  RatMatrix mt = m.transpose();
  QuadTuple r;
  r.d = t.d;
  for (const auto& f : t.forms) r.forms.emplace_back(mt * f.matrix() * m);
  return r;
}

QuadTuple combine_forms(const QuadTuple& t, const RatMatrix& mp) {
  if (mp.rows() != t.n() || mp.cols() != t.n()) throw DimensionError("combination matrix must be n x n");
  QuadTuple r;
  r.d = t.d;
  for (int i = 0; i < t.n(); ++i) {
    RatMatrix acc(t.d, t.d);
    for (int j = 0; j < t.n(); ++j) {
      if (mp(i, j) != 0) acc = acc + mp(i, j) * t.forms[j].matrix();
    }
    r.forms.emplace_back(acc);
  }
  return r;
}

int nv(const QuadTuple& t) {
  int count = 0;
  for (int i = 0; i < t.d; ++i) {
    bool used = false;
    for (const auto& f : t.forms)
      for (int j = 0; j < t.d && !used; ++j)
        if (f.matrix()(i, j) != 0) used = true;
    if (used) ++count;
  }
  return count;
}

namespace {

[[noreturn]] void fail_at(const std::string& text, std::size_t pos, const std::string& msg) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i < pos && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  throw ParseError(msg, line, col);
}

}  // namespace

QuadTuple parse_tuple(const std::string& raw) {
  // blank out comments so positions stay aligned with the input
  std::string text = raw;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '#') {
      while (i < text.size() && text[i] != '\n') text[i++] = ' ';
    }
  }
  std::vector<std::pair<std::size_t, std::size_t>> segs;
  std::size_t b = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == ';') {
      segs.emplace_back(b, i);
      b = i + 1;
    }
  }
  auto trim = [&](std::pair<std::size_t, std::size_t> s) {
    while (s.first < s.second && std::isspace(static_cast<unsigned char>(text[s.first]))) ++s.first;
    while (s.second > s.first && std::isspace(static_cast<unsigned char>(text[s.second - 1]))) --s.second;
    return s;
  };
  auto head = trim(segs[0]);
  std::string h = text.substr(head.first, head.second - head.first);
  std::string compact;
  for (char c : h)
    if (!std::isspace(static_cast<unsigned char>(c))) compact += c;
  if (compact.rfind("d=", 0) != 0) fail_at(text, head.first, "expected header 'd=<int>'");
  std::string num = compact.substr(2);
  if (num.empty() || num.size() > 4 ||
      !std::all_of(num.begin(), num.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    fail_at(text, head.first, "invalid dimension in header");
  }
  int d = std::stoi(num);
  if (d < 1) fail_at(text, head.first, "dimension must be positive");

  QuadTuple t;
  t.d = d;
  for (std::size_t s = 1; s < segs.size(); ++s) {
    auto seg = trim(segs[s]);
    if (seg.first == seg.second) {
      if (s + 1 == segs.size()) continue;  // trailing separator
      fail_at(text, seg.first, "empty form");
    }
    Poly p = parse_poly_range(text, seg.first, seg.second, d);
    for (const auto& [e, c] : p.terms()) {
      if (total_degree(e) != 2) fail_at(text, seg.first, "non-quadratic term in form: " + p.to_string());
    }
    t.forms.push_back(QuadForm::from_poly(p));
  }
  if (t.forms.empty()) fail_at(text, text.size(), "tuple has no forms");
  return t;
}

std::string serialize_tuple(const QuadTuple& t) {
  std::string out = "d=" + std::to_string(t.d);
  for (const auto& f : t.forms) out += "; " + f.to_poly().to_string();
  return out;
}

}  // namespace quadinv
