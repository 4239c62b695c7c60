#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>

namespace qes {

// Exact scalar type used throughout the symbolic pipeline. cpp_rational keeps
// values in lowest terms with positive denominator, which is exactly the
// canonical form the polynomial layer relies on.
using BigInt   = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Exact conversion: every finite double is an integer times a power of two.
Rational rational_from_double(double x);

// Best continued-fraction convergent p/q with |x - p/q| <= tol. Used where a
// float has to enter exact arithmetic without dragging a 2^52 denominator in.
Rational rationalize(double x, double tol = 1e-12);

double to_double(const Rational& r);

// Exact square root when the argument is a perfect rational square.
std::optional<Rational> exact_sqrt(const Rational& r);

std::string to_string(const Rational& r);

}  // namespace qes
