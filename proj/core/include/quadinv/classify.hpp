#pragma once

#include <optional>
#include <vector>

#include "quadinv/quadform.hpp"
#include "quadinv/univariate.hpp"

namespace quadinv {

// Diagonal codimension-two family P = sum a_i xi_i^2, Q = sum b_i xi_i^2.
struct GoodManifoldSpec {
  std::vector<Rational> a;
  std::vector<Rational> b;

  int d() const { return static_cast<int>(a.size()); }
  QuadTuple tuple() const;
};

bool is_good(const GoodManifoldSpec& spec);

struct WeakConditionResult {
  bool holds = true;
  // Point of the simplex with a.w = b.w = 0 when the condition fails.
  std::optional<std::vector<Rational>> witness;
};

WeakConditionResult good_weak_condition(const GoodManifoldSpec& spec);

// F(x, y) = det(x H(P) + y H(Q)) as coefficients of x^(d-i) y^i, i = 0..d.
std::vector<Rational> pencil_binary_form(const QuadForm& p, const QuadForm& q);

struct WellCurvedResult {
  bool value = false;
  bool f_zero = false;
  int max_multiplicity = 0;
  std::vector<Rational> binary_form;
};

WellCurvedResult well_curved_analysis(const QuadForm& p, const QuadForm& q);
bool is_well_curved(const QuadForm& p, const QuadForm& q);

}  // namespace quadinv
