#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace quadinv {

// GMP keeps mpq_class canonical: gcd(num, den) = 1 and den > 0.
using Rational = mpq_class;
using Integer = mpz_class;

Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);
double to_double(const Rational& q);

// Continued fraction convergents of x with denominators <= max_den,
// in order of increasing denominator.
std::vector<Rational> convergents(double x, std::int64_t max_den);

// Last convergent of x with denominator <= max_den.
Rational approximate(double x, std::int64_t max_den);

Rational abs(const Rational& q);

// Canonicalised num/den; the two-argument mpq_class constructor is not.
Rational make_rational(long num, long den);

}  // namespace quadinv
