#include "midlayer/exact.hpp"

#include <stdexcept>

#include "midlayer/errors.hpp"

namespace midlayer {

BigInt binomial(unsigned long n, unsigned long k) {
  BigInt result;
  mpz_bin_uiui(result.get_mpz_t(), n, k);
  return result;
}

BigInt power(const BigInt& base, unsigned long exponent) {
  BigInt result;
  mpz_pow_ui(result.get_mpz_t(), base.get_mpz_t(), exponent);
  return result;
}

Rational power(const Rational& base, long exponent) {
  if (exponent < 0) {
    if (base == 0) throw ParameterError("zero raised to a negative power");
    return power(Rational(1) / base, -exponent);
  }
  Rational result(power(BigInt(base.get_num()), static_cast<unsigned long>(exponent)),
                  power(BigInt(base.get_den()), static_cast<unsigned long>(exponent)));
  result.canonicalize();
  return result;
}

Rational fraction(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::domain_error("zero denominator");
  Rational out(num, den);
  out.canonicalize();
  return out;
}

std::string to_string(const Rational& value) {
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string to_string(const BigInt& value) { return value.get_str(); }

Rational parse_rational(const std::string& text) {
  Rational result;
  if (result.set_str(text, 10) != 0 || result.get_den() == 0) {
    throw ParameterError("not a rational: '" + text + "'");
  }
  result.canonicalize();
  return result;
}

double to_double(const Rational& value) { return value.get_d(); }

}  // namespace midlayer
