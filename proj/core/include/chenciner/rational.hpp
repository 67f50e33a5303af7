#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace chenciner {

// Exact rational scalar used for every series coefficient. Arbitrary-precision
// integer parts; always stored in lowest terms by the backend.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

// Parses "num/den", a plain integer, or a decimal literal with optional
// exponent ("-0.017", "1e-3") into an exact rational. Decimals are read in
// base 10, so "0.1" becomes 1/10 exactly, not the nearest double.
Rational rational_from_string(std::string_view text);

// "num/den" in lowest terms; plain "num" when the denominator is 1.
std::string fraction_string(const Rational& q);

double to_double(const Rational& q);

int sign_of(const Rational& q);

// Sign with a dead band: values within tol of zero count as zero.
int sign_with_tol(double value, double tol);

}  // namespace chenciner
