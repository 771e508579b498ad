#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace gbp {

// Item sizes and capacity checks are exact rationals throughout; a float tie
// at capacity 1 would make feasibility nondeterministic.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Accepts "p/q", decimal strings ("0.25", ".5", "-1.0") and plain integers.
// Throws std::invalid_argument on malformed input.
Rational parse_rational(const std::string& text);

// "p" when the denominator is 1, "p/q" otherwise. parse(format(r)) == r.
std::string format_rational(const Rational& r);

long long floor_to_int(const Rational& r);
long long ceil_to_int(const Rational& r);

Rational rational_pow(const Rational& base, unsigned exp);

double to_double(const Rational& r);

}  // namespace gbp
