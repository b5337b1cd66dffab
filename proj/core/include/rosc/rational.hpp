#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace rosc {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.template convert_to<double>(); }

/// base^exp with exp any integer; base must be nonzero when exp < 0.
Rational rational_pow(const Rational& base, long exp);

/// gcd of |a| and |b| extended to rationals: gcd of numerators over lcm of
/// denominators. gcd(0, b) = |b|.
Rational rational_gcd(const Rational& a, const Rational& b);

/// "3", "-3/2", ...
std::string to_string(const Rational& r);

}  // namespace rosc
