#include "rstar/hp_real.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "rstar/errors.hpp"

namespace rstar {

namespace detail {
std::string layout_decimal(bool negative, std::string digits, long exp10);
}

namespace {

mpfr_prec_t checked_precision(long bits) {
  if (bits < MPFR_PREC_MIN || bits > 1L << 24)
    throw DomainError("precision out of range: " + std::to_string(bits) + " bits");
  return static_cast<mpfr_prec_t>(bits);
}

long min_prec(const HPReal& a, const HPReal& b) {
  return std::min(a.precision_bits(), b.precision_bits());
}

}  // namespace

HPReal::HPReal(long precision_bits) {
  mpfr_init2(value_, checked_precision(precision_bits));
  mpfr_set_zero(value_, 1);
}

HPReal::HPReal(double value, long precision_bits) : HPReal(precision_bits) {
  mpfr_set_d(value_, value, MPFR_RNDN);
}

HPReal::HPReal(long value, long precision_bits) : HPReal(precision_bits) {
  mpfr_set_si(value_, value, MPFR_RNDN);
}

HPReal::HPReal(const Rational& value, long precision_bits) : HPReal(precision_bits) {
  mpfr_set_q(value_, value.raw().get_mpq_t(), MPFR_RNDN);
}

HPReal HPReal::parse(std::string_view text, long precision_bits) {
  HPReal r(precision_bits);
  const std::string s(text);
  if (mpfr_set_str(r.value_, s.c_str(), 10, MPFR_RNDN) != 0 && !r.is_finite())
    throw DomainError("malformed real: '" + s + "'");
  return r;
}

HPReal HPReal::pi(long precision_bits) {
  HPReal r(precision_bits);
  mpfr_const_pi(r.value_, MPFR_RNDN);
  return r;
}

HPReal::HPReal(const HPReal& other) {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

HPReal::HPReal(HPReal&& other) noexcept {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_swap(value_, other.value_);
}

HPReal& HPReal::operator=(const HPReal& other) {
  if (this != &other) {
    mpfr_set_prec(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

HPReal& HPReal::operator=(HPReal&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

HPReal::~HPReal() { mpfr_clear(value_); }

HPReal HPReal::with_precision(long precision_bits) const {
  HPReal r(precision_bits);
  mpfr_set(r.value_, value_, MPFR_RNDN);
  return r;
}

Rational HPReal::to_rational() const {
  if (!is_finite()) throw NumericalError("non-finite value has no rational form");
  mpq_class q;
  mpfr_get_q(q.get_mpq_t(), value_);
  return Rational(q);
}

long HPReal::exponent2() const {
  if (is_zero() || !is_finite()) return 0;
  return static_cast<long>(mpfr_get_exp(value_));
}

std::string HPReal::to_string(int digits) const {
  if (digits <= 0) digits = decimal_digits_for(precision_bits());
  if (mpfr_nan_p(value_)) return "nan";
  if (mpfr_inf_p(value_)) return sign() < 0 ? "-inf" : "inf";
  if (is_zero()) return "0";
  mpfr_exp_t exp = 0;
  std::unique_ptr<char, void (*)(char*)> raw(
      mpfr_get_str(nullptr, &exp, 10, static_cast<size_t>(digits), value_, MPFR_RNDN),
      mpfr_free_str);
  std::string text(raw.get());
  const bool negative = !text.empty() && text.front() == '-';
  if (negative) text.erase(0, 1);
  // mpfr: value = 0.d1d2... * 10^exp, so the leading digit sits at 10^{exp-1}.
  return detail::layout_decimal(negative, std::move(text), static_cast<long>(exp) - 1);
}

#define RSTAR_COMPOUND(op, fn)                          \
  HPReal& HPReal::operator op(const HPReal& rhs) {      \
    fn(value_, value_, rhs.value_, MPFR_RNDN);          \
    return *this;                                       \
  }
RSTAR_COMPOUND(+=, mpfr_add)
RSTAR_COMPOUND(-=, mpfr_sub)
RSTAR_COMPOUND(*=, mpfr_mul)
RSTAR_COMPOUND(/=, mpfr_div)
#undef RSTAR_COMPOUND

HPReal& HPReal::operator*=(const Rational& rhs) {
  mpfr_mul_q(value_, value_, rhs.raw().get_mpq_t(), MPFR_RNDN);
  return *this;
}

HPReal& HPReal::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw DomainError("division by zero");
  mpfr_div_q(value_, value_, rhs.raw().get_mpq_t(), MPFR_RNDN);
  return *this;
}

HPReal& HPReal::operator+=(const Rational& rhs) {
  mpfr_add_q(value_, value_, rhs.raw().get_mpq_t(), MPFR_RNDN);
  return *this;
}

HPReal& HPReal::operator*=(long rhs) {
  mpfr_mul_si(value_, value_, rhs, MPFR_RNDN);
  return *this;
}

HPReal& HPReal::operator/=(long rhs) {
  mpfr_div_si(value_, value_, rhs, MPFR_RNDN);
  return *this;
}

#define RSTAR_BINARY(op, fn)                              \
  HPReal operator op(const HPReal& a, const HPReal& b) {  \
    HPReal r(min_prec(a, b));                             \
    fn(r.value_, a.value_, b.value_, MPFR_RNDN);          \
    return r;                                             \
  }
RSTAR_BINARY(+, mpfr_add)
RSTAR_BINARY(-, mpfr_sub)
RSTAR_BINARY(*, mpfr_mul)
RSTAR_BINARY(/, mpfr_div)
#undef RSTAR_BINARY

HPReal HPReal::operator-() const {
  HPReal r(precision_bits());
  mpfr_neg(r.value_, value_, MPFR_RNDN);
  return r;
}

std::partial_ordering operator<=>(const HPReal& a, const HPReal& b) {
  if (mpfr_unordered_p(a.value_, b.value_)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp(a.value_, b.value_);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

HPReal abs(const HPReal& x) {
  HPReal r(x.precision_bits());
  mpfr_abs(r.get(), x.get(), MPFR_RNDN);
  return r;
}

HPReal sqrt(const HPReal& x) {
  if (x.sign() < 0) throw DomainError("square root of a negative number");
  HPReal r(x.precision_bits());
  mpfr_sqrt(r.get(), x.get(), MPFR_RNDN);
  return r;
}

HPReal log(const HPReal& x) {
  if (x.sign() <= 0) throw DomainError("logarithm of a non-positive number");
  HPReal r(x.precision_bits());
  mpfr_log(r.get(), x.get(), MPFR_RNDN);
  return r;
}

HPReal square(const HPReal& x) {
  HPReal r(x.precision_bits());
  mpfr_sqr(r.get(), x.get(), MPFR_RNDN);
  return r;
}

HPReal max(const HPReal& a, const HPReal& b) { return a < b ? b : a; }
HPReal min(const HPReal& a, const HPReal& b) { return b < a ? b : a; }

HPReal pow2(long e, long precision_bits) {
  HPReal r(1L, precision_bits);
  mpfr_mul_2si(r.get(), r.get(), e, MPFR_RNDN);
  return r;
}

int decimal_digits_for(long precision_bits) {
  return static_cast<int>(std::ceil(static_cast<double>(precision_bits) * 0.30103));
}

}  // namespace rstar
