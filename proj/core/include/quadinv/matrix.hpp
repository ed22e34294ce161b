#pragma once

#include <optional>
#include <string>
#include <vector>

#include "quadinv/rational.hpp"

namespace quadinv {

class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols) {}
  RatMatrix(std::initializer_list<std::initializer_list<Rational>> rows);

  static RatMatrix identity(int n);
  static RatMatrix diagonal(const std::vector<Rational>& d);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Rational& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  const Rational& operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

  RatMatrix transpose() const;
  bool is_symmetric() const;
  bool is_zero() const;
  bool operator==(const RatMatrix& o) const = default;

  friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
  friend RatMatrix operator+(const RatMatrix& a, const RatMatrix& b);
  friend RatMatrix operator*(const Rational& c, const RatMatrix& a);

  std::string to_string() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Rational> data_;
};

// Reduced row echelon form; pivots receives the pivot column of each nonzero row.
RatMatrix rref(RatMatrix m, std::vector<int>* pivots = nullptr);
int rank(const RatMatrix& m);
Rational det(const RatMatrix& m);
std::optional<RatMatrix> inverse(const RatMatrix& m);
// Columns form a basis of {x : m x = 0}.
RatMatrix nullspace(const RatMatrix& m);

}  // namespace quadinv
