#include "midlayer/interval.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>

#include "midlayer/errors.hpp"

namespace midlayer {

namespace {

std::string render(const __mpfr_struct* value, int digits, mpfr_rnd_t mode) {
  char* buffer = nullptr;
  const char* format = mode == MPFR_RNDD ? "%.*RDe" : (mode == MPFR_RNDU ? "%.*RUe" : "%.*RNe");
  if (mpfr_asprintf(&buffer, format, digits, value) < 0) return "nan";
  std::string out(buffer);
  mpfr_free_str(buffer);
  return out;
}

}  // namespace

std::string to_string(Ordering ordering) {
  switch (ordering) {
    case Ordering::Less:
      return "less";
    case Ordering::Greater:
      return "greater";
    case Ordering::Indeterminate:
      return "indeterminate";
  }
  return "indeterminate";
}

// The exponent range is thread-local in thread-safe MPFR builds.
void widen_exponent_range() {
  thread_local bool widened = false;
  if (!widened) {
    mpfr_set_emax(mpfr_get_emax_max());
    mpfr_set_emin(mpfr_get_emin_min());
    widened = true;
  }
}

Interval::Interval() : Interval(Raw{}, kDefaultPrecisionBits) {}

Interval Interval::zero(mpfr_prec_t precision) { return Interval(Raw{}, precision); }

Interval::Interval(Raw, mpfr_prec_t precision) {
  widen_exponent_range();
  mpfr_init2(lo_, precision);
  mpfr_init2(hi_, precision);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Interval::Interval(const Rational& value, mpfr_prec_t precision) : Interval(Raw{}, precision) {
  mpfr_set_q(lo_, value.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi_, value.get_mpq_t(), MPFR_RNDU);
}

Interval::Interval(long value, mpfr_prec_t precision) : Interval(Raw{}, precision) {
  mpfr_set_si(lo_, value, MPFR_RNDD);
  mpfr_set_si(hi_, value, MPFR_RNDU);
}

Interval::Interval(const Interval& other) : Interval(Raw{}, other.precision()) {
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& other) noexcept : Interval(Raw{}, other.precision()) {
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
}

Interval& Interval::operator=(const Interval& other) {
  if (this != &other) {
    mpfr_set_prec(lo_, other.precision());
    mpfr_set_prec(hi_, other.precision());
    mpfr_set(lo_, other.lo_, MPFR_RNDD);
    mpfr_set(hi_, other.hi_, MPFR_RNDU);
  }
  return *this;
}

Interval& Interval::operator=(Interval&& other) noexcept {
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
  return *this;
}

Interval::~Interval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

Interval Interval::operator+(const Interval& rhs) const {
  Interval out(Raw{}, std::max(precision(), rhs.precision()));
  mpfr_add(out.lo_, lo_, rhs.lo_, MPFR_RNDD);
  mpfr_add(out.hi_, hi_, rhs.hi_, MPFR_RNDU);
  return out;
}

Interval Interval::operator-(const Interval& rhs) const {
  Interval out(Raw{}, std::max(precision(), rhs.precision()));
  mpfr_sub(out.lo_, lo_, rhs.hi_, MPFR_RNDD);
  mpfr_sub(out.hi_, hi_, rhs.lo_, MPFR_RNDU);
  return out;
}

Interval Interval::operator*(const Interval& rhs) const {
  const mpfr_prec_t prec = std::max(precision(), rhs.precision());
  Interval out(Raw{}, prec);
  mpfr_t candidate;
  mpfr_init2(candidate, prec);
  const std::array<std::pair<const __mpfr_struct*, const __mpfr_struct*>, 4> pairs{{
      {lo_, rhs.lo_}, {lo_, rhs.hi_}, {hi_, rhs.lo_}, {hi_, rhs.hi_}}};
  bool first = true;
  for (const auto& [a, b] : pairs) {
    mpfr_mul(candidate, a, b, MPFR_RNDD);
    if (first || mpfr_less_p(candidate, out.lo_)) mpfr_set(out.lo_, candidate, MPFR_RNDD);
    mpfr_mul(candidate, a, b, MPFR_RNDU);
    if (first || mpfr_greater_p(candidate, out.hi_)) mpfr_set(out.hi_, candidate, MPFR_RNDU);
    first = false;
  }
  mpfr_clear(candidate);
  return out;
}

Interval Interval::operator/(const Interval& rhs) const {
  if (mpfr_sgn(rhs.lo_) <= 0 && mpfr_sgn(rhs.hi_) >= 0) {
    throw ParameterError("interval division by an interval containing zero");
  }
  const mpfr_prec_t prec = std::max(precision(), rhs.precision());
  Interval out(Raw{}, prec);
  mpfr_t candidate;
  mpfr_init2(candidate, prec);
  const std::array<std::pair<const __mpfr_struct*, const __mpfr_struct*>, 4> pairs{{
      {lo_, rhs.lo_}, {lo_, rhs.hi_}, {hi_, rhs.lo_}, {hi_, rhs.hi_}}};
  bool first = true;
  for (const auto& [a, b] : pairs) {
    mpfr_div(candidate, a, b, MPFR_RNDD);
    if (first || mpfr_less_p(candidate, out.lo_)) mpfr_set(out.lo_, candidate, MPFR_RNDD);
    mpfr_div(candidate, a, b, MPFR_RNDU);
    if (first || mpfr_greater_p(candidate, out.hi_)) mpfr_set(out.hi_, candidate, MPFR_RNDU);
    first = false;
  }
  mpfr_clear(candidate);
  return out;
}

Interval Interval::exp() const {
  Interval out(Raw{}, precision());
  mpfr_exp(out.lo_, lo_, MPFR_RNDD);
  mpfr_exp(out.hi_, hi_, MPFR_RNDU);
  return out;
}

Interval Interval::expm1() const {
  Interval out(Raw{}, precision());
  mpfr_expm1(out.lo_, lo_, MPFR_RNDD);
  mpfr_expm1(out.hi_, hi_, MPFR_RNDU);
  return out;
}

Interval Interval::log() const {
  if (mpfr_sgn(lo_) <= 0) throw ParameterError("interval log of a non-positive interval");
  Interval out(Raw{}, precision());
  mpfr_log(out.lo_, lo_, MPFR_RNDD);
  mpfr_log(out.hi_, hi_, MPFR_RNDU);
  return out;
}

bool Interval::contains(const Rational& value) const {
  return mpfr_cmp_q(lo_, value.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, value.get_mpq_t()) >= 0;
}

bool Interval::contains(const Interval& other) const {
  return mpfr_lessequal_p(lo_, other.lo_) && mpfr_greaterequal_p(hi_, other.hi_);
}

bool Interval::overlaps(const Interval& other) const {
  return mpfr_lessequal_p(lo_, other.hi_) && mpfr_lessequal_p(other.lo_, hi_);
}

Ordering Interval::compare(const Interval& other) const {
  if (mpfr_less_p(hi_, other.lo_)) return Ordering::Less;
  if (mpfr_greater_p(lo_, other.hi_)) return Ordering::Greater;
  return Ordering::Indeterminate;
}

double Interval::lower() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double Interval::upper() const { return mpfr_get_d(hi_, MPFR_RNDU); }

double Interval::midpoint() const {
  mpfr_t mid;
  mpfr_init2(mid, precision() + 1);
  mpfr_add(mid, lo_, hi_, MPFR_RNDN);
  mpfr_div_ui(mid, mid, 2, MPFR_RNDN);
  const double out = mpfr_get_d(mid, MPFR_RNDN);
  mpfr_clear(mid);
  return out;
}

double Interval::width() const {
  mpfr_t diff;
  mpfr_init2(diff, precision());
  mpfr_sub(diff, hi_, lo_, MPFR_RNDU);
  const double out = mpfr_get_d(diff, MPFR_RNDU);
  mpfr_clear(diff);
  return out;
}

std::string Interval::lower_string(int digits) const { return render(lo_, digits, MPFR_RNDD); }
std::string Interval::upper_string(int digits) const { return render(hi_, digits, MPFR_RNDU); }

std::string Interval::midpoint_string(int digits) const {
  mpfr_t mid;
  mpfr_init2(mid, precision() + 1);
  mpfr_add(mid, lo_, hi_, MPFR_RNDN);
  mpfr_div_ui(mid, mid, 2, MPFR_RNDN);
  std::string out = render(mid, digits, MPFR_RNDN);
  mpfr_clear(mid);
  return out;
}

}  // namespace midlayer
