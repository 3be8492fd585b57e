#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace dpt {

using Rational = mpq_class;
using Integer = mpz_class;

// Accepts "num/den" or a bare integer; anything with '.', 'e' or spaces is rejected.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);
// num/den in lowest terms; den must be nonzero.
Rational make_rational(long num, long den);

Rational abs(const Rational& q);
Rational pow(const Rational& base, unsigned exponent);
Integer binomial(long n, long k);
Integer factorial(unsigned k);
// Σ_{j≤l} C(n,j)
Integer binomial_prefix(long n, long l);
double to_double(const Rational& q);
// Exact conversion of a finite double.
Rational from_double(double v);
// Largest integer ≤ q.
Integer floor(const Rational& q);
// Smallest integer ≥ q.
Integer ceil(const Rational& q);

inline int popcount(std::uint64_t x) { return __builtin_popcountll(x); }
inline int chi(std::uint64_t set, std::uint64_t x) { return (popcount(set & x) & 1) ? -1 : 1; }

}  // namespace dpt
