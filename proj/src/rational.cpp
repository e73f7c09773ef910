#include "rstar/rational.hpp"

#include <cctype>

#include "rstar/errors.hpp"

namespace rstar {

namespace {

mpz_class parse_integer(std::string_view digits, std::string_view original) {
  if (digits.empty()) throw DomainError("malformed number: '" + std::string(original) + "'");
  for (char c : digits) {
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw DomainError("malformed number: '" + std::string(original) + "'");
  }
  return mpz_class(std::string(digits), 10);
}

mpz_class pow10(unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

}  // namespace

Rational::Rational(long num, long den) : Rational(mpz_class(num), mpz_class(den)) {}

Rational::Rational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational::Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
  const std::string_view original = text;
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }

  Rational result;
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const mpz_class num = parse_integer(text.substr(0, slash), original);
    const mpz_class den = parse_integer(text.substr(slash + 1), original);
    if (den == 0) throw DomainError("zero denominator in '" + std::string(original) + "'");
    result = Rational(num, den);
  } else {
    long exponent = 0;
    if (const auto e = text.find_first_of("eE"); e != std::string_view::npos) {
      std::string_view exp_text = text.substr(e + 1);
      bool exp_negative = false;
      if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
        exp_negative = exp_text.front() == '-';
        exp_text.remove_prefix(1);
      }
      const mpz_class mag = parse_integer(exp_text, original);
      if (!mag.fits_slong_p() || mag > 100000)
        throw DomainError("exponent out of range in '" + std::string(original) + "'");
      exponent = exp_negative ? -mag.get_si() : mag.get_si();
      text = text.substr(0, e);
    }
    std::string digits;
    long frac_digits = 0;
    if (const auto dot = text.find('.'); dot != std::string_view::npos) {
      const std::string_view int_part = text.substr(0, dot);
      const std::string_view frac_part = text.substr(dot + 1);
      if (int_part.empty() && frac_part.empty())
        throw DomainError("malformed number: '" + std::string(original) + "'");
      digits = std::string(int_part) + std::string(frac_part);
      frac_digits = static_cast<long>(frac_part.size());
    } else {
      digits = std::string(text);
    }
    const mpz_class mantissa = parse_integer(digits, original);
    const long scale = exponent - frac_digits;
    result = scale >= 0 ? Rational(mantissa * pow10(static_cast<unsigned long>(scale)), 1)
                        : Rational(mantissa, pow10(static_cast<unsigned long>(-scale)));
  }
  return negative ? -result : result;
}

Rational Rational::abs() const { return sign() < 0 ? -*this : *this; }

Rational Rational::pow(int exponent) const {
  if (exponent < 0) {
    if (is_zero()) throw DomainError("zero raised to a negative power");
    return Rational(1) / pow(-exponent);
  }
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), q_.get_num_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(den.get_mpz_t(), q_.get_den_mpz_t(), static_cast<unsigned long>(exponent));
  return Rational(num, den);
}

std::string Rational::to_string() const {
  if (is_integer()) return q_.get_num().get_str();
  return q_.get_str();
}

Rational& Rational::operator+=(const Rational& rhs) {
  q_ += rhs.q_;
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  q_ -= rhs.q_;
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  q_ *= rhs.q_;
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw DomainError("division by zero");
  q_ /= rhs.q_;
  return *this;
}

Rational Rational::operator-() const { return Rational(mpq_class(-q_)); }

Rational binomial(const Rational& mu, unsigned k) {
  Rational result(1);
  for (unsigned i = 0; i < k; ++i) {
    result *= mu - Rational(static_cast<long>(i));
    result /= Rational(static_cast<long>(i) + 1);
  }
  return result;
}

}  // namespace rstar
