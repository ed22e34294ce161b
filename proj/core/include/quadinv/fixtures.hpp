#pragma once

#include <string>

#include "quadinv/classify.hpp"
#include "quadinv/poly.hpp"
#include "quadinv/quadform.hpp"

namespace quadinv::fixtures {

// xi_1^2 + ... + xi_d^2
QuadTuple paraboloid(int d);
// a = (1,1,1,1), b = (1,2,3,4)
GoodManifoldSpec good_d4();
// Every degree-two monomial in d variables.
QuadTuple max_codim(int d);
// max_codim(2): (xi_1^2, xi_1 xi_2, xi_2^2)
QuadTuple mockenhaupt();
// a = (1,1,-1,-1,0,0,0,0), b = (0,0,0,0,1,1,-1,-1)
GoodManifoldSpec hyperbolic_tensor();

// x1^2 + x2^2 - r^2
Poly circle(const Rational& r);
// x1^2 + x2^2 - x3^2
Poly cone();

// Named tuple or polynomial fixtures, as accepted on the command line.
bool has_tuple(const std::string& name);
QuadTuple tuple(const std::string& name);
bool has_poly(const std::string& name);
Poly poly(const std::string& name);

}  // namespace quadinv::fixtures
