#pragma once

#include <mpfr.h>

#include <compare>
#include <string>
#include <string_view>

#include "rstar/rational.hpp"

namespace rstar {

inline constexpr long kDefaultPrecision = 128;

/// Binary floating-point number with an explicit precision in bits.
///
/// RAII owner of an mpfr_t. Binary operators produce a result at the smaller
/// of the two operand precisions; compound assignment keeps the precision of
/// the left-hand side. All rounding is to nearest.
class HPReal {
 public:
  explicit HPReal(long precision_bits = kDefaultPrecision);
  HPReal(double value, long precision_bits);
  HPReal(long value, long precision_bits);
  HPReal(int value, long precision_bits) : HPReal(static_cast<long>(value), precision_bits) {}
  HPReal(const Rational& value, long precision_bits);
  static HPReal parse(std::string_view text, long precision_bits);
  static HPReal pi(long precision_bits);

  HPReal(const HPReal& other);
  HPReal(HPReal&& other) noexcept;
  HPReal& operator=(const HPReal& other);
  HPReal& operator=(HPReal&& other) noexcept;
  ~HPReal();

  long precision_bits() const { return static_cast<long>(mpfr_get_prec(value_)); }
  /// Copy rounded (or widened) to a new precision.
  HPReal with_precision(long precision_bits) const;

  mpfr_srcptr get() const noexcept { return value_; }
  mpfr_ptr get() noexcept { return value_; }

  int sign() const { return mpfr_sgn(value_); }
  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  bool is_finite() const { return mpfr_number_p(value_) != 0; }
  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  /// Exact binary value as a rational.
  Rational to_rational() const;
  /// Base-2 exponent e with 2^{e-1} <= |x| < 2^e (0 for zero).
  long exponent2() const;

  /// Decimal text with `digits` significant digits (0: derived from precision).
  std::string to_string(int digits = 0) const;

  HPReal& operator+=(const HPReal& rhs);
  HPReal& operator-=(const HPReal& rhs);
  HPReal& operator*=(const HPReal& rhs);
  HPReal& operator/=(const HPReal& rhs);
  HPReal& operator*=(const Rational& rhs);
  HPReal& operator/=(const Rational& rhs);
  HPReal& operator+=(const Rational& rhs);
  HPReal& operator*=(long rhs);
  HPReal& operator/=(long rhs);

  friend HPReal operator+(const HPReal& a, const HPReal& b);
  friend HPReal operator-(const HPReal& a, const HPReal& b);
  friend HPReal operator*(const HPReal& a, const HPReal& b);
  friend HPReal operator/(const HPReal& a, const HPReal& b);
  friend HPReal operator*(HPReal a, const Rational& b) { return a *= b; }
  friend HPReal operator*(const Rational& a, HPReal b) { return b *= a; }
  friend HPReal operator/(HPReal a, const Rational& b) { return a /= b; }
  friend HPReal operator+(HPReal a, const Rational& b) { return a += b; }
  friend HPReal operator*(HPReal a, long b) { return a *= b; }
  friend HPReal operator/(HPReal a, long b) { return a /= b; }
  HPReal operator-() const;

  friend bool operator==(const HPReal& a, const HPReal& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }
  friend std::partial_ordering operator<=>(const HPReal& a, const HPReal& b);

 private:
  mpfr_t value_;
};

HPReal abs(const HPReal& x);
HPReal sqrt(const HPReal& x);
HPReal log(const HPReal& x);
HPReal square(const HPReal& x);
HPReal max(const HPReal& a, const HPReal& b);
HPReal min(const HPReal& a, const HPReal& b);
/// 2^e at the given precision.
HPReal pow2(long e, long precision_bits);

/// Number of significant decimal digits printed for a precision:
/// ceil(bits * log10(2)).
int decimal_digits_for(long precision_bits);

/// Exact decimal rendering of a rational with `digits` significant digits,
/// rounded half-to-even. Trailing zeros are trimmed; very large or small
/// magnitudes switch to scientific notation.
std::string format_decimal(const Rational& value, int digits);

}  // namespace rstar
