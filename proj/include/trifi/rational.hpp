#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <string>
#include <string_view>

namespace trifi {

using Integer = boost::multiprecision::mpz_int;

// Exact rational scalar. GMP keeps values canonical (denominator > 0,
// gcd(|num|, den) = 1, zero is 0/1) after every arithmetic operation.
// Expression templates are disabled so Rational behaves as a plain value
// type inside Eigen expressions.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

// Parses "p", "-p" or "p/q". The result is canonicalized; q = 0 or any
// other malformed input throws std::invalid_argument.
Rational parse_rational(std::string_view text);

// Canonical text form: "p" when the denominator is 1, otherwise "p/q".
std::string format_rational(const Rational& value);

// Exact binomial coefficient, 0 when k > n.
Rational binomial(unsigned n, unsigned k);

}  // namespace trifi
