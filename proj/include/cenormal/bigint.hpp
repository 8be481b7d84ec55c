#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace cenormal {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Exact c^e for a rational base.
Rational pow(const Rational& base, unsigned exponent);

/// Greatest integer <= q.
BigInt floor(const Rational& q);

/// floor(c^e), evaluated exactly.
BigInt floor_pow(const Rational& c, unsigned exponent);

/// Parses "7", "3/2" or a finite decimal such as "1.5" into an exact rational.
/// Throws ParseError on anything else.
Rational parse_rational(std::string_view text);

/// "p/q" in lowest terms; integers print without the denominator.
std::string to_string(const Rational& q);

bool is_integral(const Rational& q);

/// Narrowing with a range check; throws OverflowError if the value does not fit.
std::uint64_t to_u64(const BigInt& v, std::string_view what);

double to_double(const Rational& q);

}  // namespace cenormal
