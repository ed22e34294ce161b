#pragma once

#include <string>
#include <vector>

#include "quadinv/matrix.hpp"
#include "quadinv/poly.hpp"

namespace quadinv {

// Q(xi) = xi^T A xi with A symmetric.
class QuadForm {
 public:
  QuadForm() = default;
  explicit QuadForm(const RatMatrix& a);

  // Throws unless p is homogeneous quadratic or zero.
  static QuadForm from_poly(const Poly& p);

  int d() const { return a_.rows(); }
  const RatMatrix& matrix() const { return a_; }
  Poly to_poly() const;
  bool is_zero() const { return a_.is_zero(); }
  bool operator==(const QuadForm& o) const = default;

 private:
  RatMatrix a_;
};

RatMatrix hessian_half(const QuadForm& q);
QuadForm quad_of_matrix(const RatMatrix& a);

struct QuadTuple {
  int d = 0;
  std::vector<QuadForm> forms;

  int n() const { return static_cast<int>(forms.size()); }
  std::vector<RatMatrix> matrices() const;
  bool operator==(const QuadTuple& o) const = default;
};

QuadTuple make_tuple(const std::vector<RatMatrix>& mats);

// Form i becomes Q_i o M, with matrix M^T A_i M.
QuadTuple substitute_linear(const QuadTuple& t, const RatMatrix& m);
// Form i becomes sum_j mp(i, j) Q_j.
QuadTuple combine_forms(const QuadTuple& t, const RatMatrix& mp);
// Number of variables some form depends on.
int nv(const QuadTuple& t);

// Text format: "d=<int>; form; form; ...". '#' starts a comment.
QuadTuple parse_tuple(const std::string& text);
std::string serialize_tuple(const QuadTuple& t);

}  // namespace quadinv
