#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace midlayer {

using BigInt = mpz_class;
using Rational = mpq_class;

BigInt binomial(unsigned long n, unsigned long k);
BigInt power(const BigInt& base, unsigned long exponent);
Rational power(const Rational& base, long exponent);
// num/den in lowest terms; den must be nonzero.
Rational fraction(const BigInt& num, const BigInt& den);

// Rationals are always rendered "p/q", including integral values ("3/1").
std::string to_string(const Rational& value);
std::string to_string(const BigInt& value);

// Parses "p/q" or "p".
Rational parse_rational(const std::string& text);

// Nearest double; used only for reporting.
double to_double(const Rational& value);

}  // namespace midlayer
