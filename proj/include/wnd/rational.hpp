#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace wnd {

using Rational = mpq_class;

// Every finite double is a dyadic rational; this conversion is exact.
Rational rational_from_double(double value);

// Nearest double (ties to even). mpq_get_d truncates, this does not.
double to_double_nearest(const Rational& value);

// Accepts "12", "-0.5", "2.02e-10", "1E3", "-7/3" (whitespace trimmed).
// Decimal forms are read exactly: "0.1" is 1/10, not the double 0.1.
Rational parse_rational(std::string_view text);

// Canonical text: integers as-is, terminating fractions as exact
// scientific decimals ("2.02e-10"), everything else as "num/den".
std::string format_rational(const Rational& value);

// 10^exponent exactly.
Rational pow10(long exponent);

// Short human-readable approximation, e.g. "1.7e-10".
std::string approx_string(const Rational& value, int digits = 2);

std::vector<double> to_doubles(const std::vector<Rational>& values);
std::vector<Rational> from_doubles(const std::vector<double>& values);

}  // namespace wnd
