#pragma once

#include <string>

#include <mpfr.h>

#include "midlayer/exact.hpp"

namespace midlayer {

inline constexpr mpfr_prec_t kDefaultPrecisionBits = 128;

enum class Ordering { Less, Greater, Indeterminate };

std::string to_string(Ordering ordering);

// Closed real interval [lo, hi] with MPFR endpoints. Every operation rounds
// the lower endpoint down and the upper endpoint up, so the exact real
// result of the same expression is always enclosed.
class Interval {
 public:
  Interval();
  // Zero at the given precision.
  static Interval zero(mpfr_prec_t precision);
  Interval(const Rational& value, mpfr_prec_t precision = kDefaultPrecisionBits);
  Interval(long value, mpfr_prec_t precision = kDefaultPrecisionBits);
  Interval(const Interval& other);
  Interval(Interval&& other) noexcept;
  Interval& operator=(const Interval& other);
  Interval& operator=(Interval&& other) noexcept;
  ~Interval();

  mpfr_prec_t precision() const { return mpfr_get_prec(lo_); }

  Interval operator+(const Interval& rhs) const;
  Interval operator-(const Interval& rhs) const;
  Interval operator*(const Interval& rhs) const;
  Interval operator/(const Interval& rhs) const;
  Interval& operator+=(const Interval& rhs) { return *this = *this + rhs; }
  Interval& operator*=(const Interval& rhs) { return *this = *this * rhs; }

  Interval exp() const;
  Interval log() const;   // requires lo > 0
  Interval expm1() const;

  bool contains(const Rational& value) const;
  bool contains(const Interval& other) const;
  bool overlaps(const Interval& other) const;

  // Certain ordering against other, or Indeterminate when they overlap.
  Ordering compare(const Interval& other) const;

  double lower() const;
  double upper() const;
  double midpoint() const;
  // hi - lo rounded up.
  double width() const;

  std::string lower_string(int digits = 25) const;
  std::string upper_string(int digits = 25) const;
  std::string midpoint_string(int digits = 25) const;

  const __mpfr_struct* lo() const { return lo_; }
  const __mpfr_struct* hi() const { return hi_; }

 private:
  struct Raw {};
  Interval(Raw, mpfr_prec_t precision);

  mpfr_t lo_;
  mpfr_t hi_;
};

// Lifts the MPFR exponent range to its maximum so values like 2^N for
// N ~ 1e17 stay representable.
void widen_exponent_range();

}  // namespace midlayer
