#include <string>

#include "rstar/errors.hpp"
#include "rstar/hp_real.hpp"

namespace rstar {

namespace detail {

// `digits` holds the significant digits without sign or point; the first
// digit has weight 10^exp10.
std::string layout_decimal(bool negative, std::string digits, long exp10) {
  while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
  if (digits == "0") return "0";
  std::string out = negative ? "-" : "";
  const auto n = static_cast<long>(digits.size());
  if (exp10 >= -6 && exp10 < 21) {
    if (exp10 < 0) {
      out += "0.";
      out.append(static_cast<std::size_t>(-exp10 - 1), '0');
      out += digits;
    } else if (exp10 + 1 >= n) {
      out += digits;
      out.append(static_cast<std::size_t>(exp10 + 1 - n), '0');
    } else {
      out += digits.substr(0, static_cast<std::size_t>(exp10 + 1));
      out += '.';
      out += digits.substr(static_cast<std::size_t>(exp10 + 1));
    }
    return out;
  }
  out += digits.front();
  if (n > 1) {
    out += '.';
    out += digits.substr(1);
  }
  out += 'e';
  out += exp10 < 0 ? "-" : "+";
  out += std::to_string(exp10 < 0 ? -exp10 : exp10);
  return out;
}

}  // namespace detail

std::string format_decimal(const Rational& value, int digits) {
  if (digits < 1) throw DomainError("need at least one significant digit");
  if (value.is_zero()) return "0";
  const Rational mag = value.abs();
  const mpz_class num = mag.numerator();
  const mpz_class den = mag.denominator();

  // Decimal exponent e with 10^e <= mag < 10^{e+1}; start from the size
  // estimate and correct.
  long e = static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 10)) -
           static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 10));
  const auto ten_pow = [](long p) { return Rational(10).pow(static_cast<int>(p)); };
  while (mag < ten_pow(e)) --e;
  while (mag >= ten_pow(e + 1)) ++e;

  const Rational scaled = mag * ten_pow(digits - 1 - e);
  mpz_class whole;
  mpz_fdiv_q(whole.get_mpz_t(), scaled.numerator().get_mpz_t(), scaled.denominator().get_mpz_t());
  const Rational frac = scaled - Rational(whole, 1);
  const Rational half(1, 2);
  if (frac > half || (frac == half && mpz_odd_p(whole.get_mpz_t()))) whole += 1;
  std::string text = whole.get_str();
  if (static_cast<int>(text.size()) > digits) {
    // Rounded up to the next power of ten.
    text.pop_back();
    ++e;
  }
  return detail::layout_decimal(value.sign() < 0, std::move(text), e);
}

}  // namespace rstar
