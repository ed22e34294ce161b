#include "quadinv/fixtures.hpp"

#include "quadinv/error.hpp"

namespace quadinv::fixtures {

QuadTuple paraboloid(int d) {
  if (d < 1) throw RangeError("dimension must be positive");
  return make_tuple({RatMatrix::identity(d)});
}

GoodManifoldSpec good_d4() { return {{1, 1, 1, 1}, {1, 2, 3, 4}}; }

QuadTuple max_codim(int d) {
  if (d < 1) throw RangeError("dimension must be positive");
  std::vector<RatMatrix> mats;
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) {
      RatMatrix a(d, d);
      if (i == j) {
        a(i, i) = 1;
      } else {
        a(i, j) = make_rational(1, 2);
        a(j, i) = make_rational(1, 2);
      }
      mats.push_back(a);
    }
  return quadinv::make_tuple(mats);
}

QuadTuple mockenhaupt() { return max_codim(2); }

GoodManifoldSpec hyperbolic_tensor() { return {{1, 1, -1, -1, 0, 0, 0, 0}, {0, 0, 0, 0, 1, 1, -1, -1}}; }

Poly circle(const Rational& r) {
  Poly x = Poly::variable(2, 0), y = Poly::variable(2, 1);
  return x * x + y * y - Poly::constant(2, r * r);
}

Poly cone() {
  Poly x = Poly::variable(3, 0), y = Poly::variable(3, 1), z = Poly::variable(3, 2);
  return x * x + y * y - z * z;
}

namespace {

bool paraboloid_name(const std::string& name, int* d) {
  const std::string pre = "paraboloid_d";
  if (name.rfind(pre, 0) != 0 || name.size() != pre.size() + 1) return false;
  char c = name.back();
  if (c < '1' || c > '6') return false;
  *d = c - '0';
  return true;
}

}  // namespace

bool has_tuple(const std::string& name) {
  int d;
  return paraboloid_name(name, &d) || name == "good_d4" || name == "mockenhaupt" || name == "maxcodim_d2" ||
         name == "maxcodim_d3" || name == "hyperbolic_tensor";
}

QuadTuple tuple(const std::string& name) {
  int d;
  if (paraboloid_name(name, &d)) return paraboloid(d);
  if (name == "good_d4") return good_d4().tuple();
  if (name == "mockenhaupt" || name == "maxcodim_d2") return max_codim(2);
  if (name == "maxcodim_d3") return max_codim(3);
  if (name == "hyperbolic_tensor") return hyperbolic_tensor().tuple();
  throw Error("unknown tuple fixture: " + name);
}

bool has_poly(const std::string& name) { return name == "circle_r0.5" || name == "cone"; }

Poly poly(const std::string& name) {
  if (name == "circle_r0.5") return circle(make_rational(1, 2));
  if (name == "cone") return cone();
  throw Error("unknown polynomial fixture: " + name);
}

}  // namespace quadinv::fixtures
