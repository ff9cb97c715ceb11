#pragma once

#include <string>
#include <string_view>

#include <gmpxx.h>

namespace rootstack {

// Exact arbitrary-precision rational. GMP keeps values canonical
// (gcd(num, den) = 1, den > 0) after every arithmetic operation.
using Rational = mpq_class;
using Integer = mpz_class;

// num/den in canonical form. Prefer this to Rational(num, den), which leaves
// common factors in place.
Rational make_rational(long num, long den);

// "num/den", denominator always printed.
std::string to_string(const Rational& q);

// Short form: "num" when the denominator is 1.
std::string to_short_string(const Rational& q);

// Accepts "a", "-a", "a/b"; result is canonicalized. Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

Rational factorial(unsigned long n);

Rational binomial(unsigned long n, unsigned long k);

}  // namespace rootstack
