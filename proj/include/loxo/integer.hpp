#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <string>
#include <string_view>

namespace loxo {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Prime factorization of |n| (n != 0) as prime -> exponent, ascending.
/// Trial division, then Pollard-Brent rho on the cofactor.
std::map<BigInt, long> factor_integer(const BigInt& n);

bool is_prime(const BigInt& n);

/// Writes n = square^2 * squarefree with squarefree > 0 for n > 0.
struct SquarefreeSplit {
  BigInt square_root;  // k with n = k^2 * squarefree
  BigInt squarefree;
};
SquarefreeSplit squarefree_split(const BigInt& n);

/// Natural log of |n|, valid far beyond double range of n itself.
double log_abs(const BigInt& n);
double log_abs(const Rational& x);

std::size_t decimal_digits(const BigInt& n);
std::size_t decimal_digits(const Rational& x);

/// Parses "a", "-a", "a/b" with optional surrounding whitespace.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& x);
std::string to_string(const BigInt& n);

/// Exact x^e for signed e (x != 0 when e < 0).
Rational pow(const Rational& x, long e);

long to_long_checked(const BigInt& n, const char* what);

/// p-adic valuation of a nonzero rational.
long ord_p(const Rational& x, const BigInt& p);

}  // namespace loxo
