#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace qlat {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "n" or "n/m" into a canonical rational. Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& r);

bool is_prime(long n);

/// Exponent of p in a nonzero integer or rational.
int ord_p(const Integer& a, long p);
int ord_p(const Rational& a, long p);

/// p^e as an exact rational (negative e allowed).
Rational pow_p(long p, int e);

/// Residue of a p-integral rational modulo `modulus` (a power of p), in [0, modulus).
std::int64_t residue(const Rational& a, long p, std::int64_t modulus);

/// Residue of the unit part a / p^ord_p(a) modulo `modulus`.
std::int64_t unit_residue(const Rational& a, long p, std::int64_t modulus);

std::int64_t ipow(std::int64_t base, int exp);

}  // namespace qlat
