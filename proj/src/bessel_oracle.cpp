#include "rstar/bessel_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "rstar/errors.hpp"

namespace rstar {

namespace {

constexpr long kGuardBits = 32;
constexpr std::size_t kSeriesCap = 2'000'000;
// Beyond this the series is too costly to be useful as an oracle.
constexpr long kMaxWorkingBits = 1L << 18;

// Natural log of |x| without overflowing a double.
double log_abs(const HPReal& x) {
  long exp = 0;
  const double mant = mpfr_get_d_2exp(&exp, x.get(), MPFR_RNDN);
  return std::log(std::fabs(mant)) + static_cast<double>(exp) * std::numbers::ln2;
}

// log2 of the largest |term| of sum z^m / (m! (b)_m) (never below 0, since
// the m = 0 term is 1).
double largest_term_log2(double b, double log_abs_z) {
  double log_term = 0.0;
  double best = 0.0;
  for (std::size_t m = 1; m < kSeriesCap; ++m) {
    const double md = static_cast<double>(m);
    const double step = log_abs_z - std::log(md) - std::log(b + md - 1.0);
    if (step < 0.0) break;
    log_term += step;
    best = std::max(best, log_term);
  }
  return best / std::numbers::ln2;
}

void require_precision(long bits) {
  if (bits < 53) throw DomainError("precision must be at least 53 bits, got " + std::to_string(bits));
}

bool opposite_signs(const HPReal& a, const HPReal& b) {
  return (a.sign() < 0 && b.sign() > 0) || (a.sign() > 0 && b.sign() < 0);
}

HPReal midpoint(const HPReal& lo, const HPReal& hi) {
  HPReal mid = lo + hi;
  mpfr_div_2ui(mid.get(), mid.get(), 1, MPFR_RNDN);
  return mid;
}

}  // namespace

HPReal hyp0f1(const HPReal& b, const HPReal& z, long precision_bits) {
  require_precision(precision_bits);
  if (b.sign() <= 0) throw DomainError("0F1 parameter b must be positive");
  if (z.is_zero()) return HPReal(1L, precision_bits);

  const double b_d = b.to_double();
  const double log_z = log_abs(z);
  const double peak_bits = largest_term_log2(b_d, log_z);
  const long work = precision_bits + kGuardBits + static_cast<long>(std::ceil(peak_bits)) + 8;
  if (work > kMaxWorkingBits) {
    std::ostringstream msg;
    msg << "0F1 needs " << work << " working bits (limit " << kMaxWorkingBits << ") for b=" << b.to_string(17)
        << ", z=" << z.to_string(17);
    throw NumericalError(msg.str());
  }
  const long cutoff = -(precision_bits + kGuardBits);

  const HPReal zw = z.with_precision(work);
  const HPReal bw = b.with_precision(work);
  HPReal term(1L, work);
  HPReal sum(1L, work);
  HPReal denom(work);
  for (std::size_t m = 1; m < kSeriesCap; ++m) {
    // denom = m (b + m - 1)
    mpfr_add_ui(denom.get(), bw.get(), m - 1, MPFR_RNDN);
    mpfr_mul_ui(denom.get(), denom.get(), m, MPFR_RNDN);
    term *= zw;
    term /= denom;
    sum += term;
    const double md = static_cast<double>(m);
    const bool past_peak = log_z < std::log(md) + std::log(b_d + md - 1.0);
    if (term.is_zero() || (past_peak && term.exponent2() < cutoff)) return sum.with_precision(precision_bits);
  }
  std::ostringstream msg;
  msg << "0F1 series did not converge after " << kSeriesCap << " terms (b=" << b.to_string(17)
      << ", z=" << z.to_string(17) << ")";
  throw NumericalError(msg.str());
}

HPReal phi_prime(const HPReal& nu, const HPReal& z, long precision_bits) {
  if (nu.sign() < 0) throw DomainError("phi_prime requires nu >= 0");
  if (z.sign() < 0) throw DomainError("phi_prime requires z >= 0");
  const long work = precision_bits + 16;
  const HPReal nu_w = nu.with_precision(work);
  const HPReal zw = z.with_precision(work);
  const HPReal arg = -(zw / 4L);
  const HPReal b1 = nu_w + Rational(1);
  const HPReal g = hyp0f1(b1, arg, work);
  // z g'(z) = -z / (4 (nu+1)) 0F1(; nu+2; -z/4)
  HPReal zdg = hyp0f1(nu_w + Rational(2), arg, work) * zw;
  zdg /= b1;
  zdg /= 4L;
  return (g - zdg).with_precision(precision_bits);
}

HPReal varphi_prime(const HPReal& nu, const HPReal& z, long precision_bits) {
  if (nu.sign() < 0) throw DomainError("varphi_prime requires nu >= 0");
  if (z.sign() < 0) throw DomainError("varphi_prime requires z >= 0");
  const long work = precision_bits + 16;
  const HPReal nu_w = nu.with_precision(work);
  const HPReal z2 = square(z.with_precision(work));
  const HPReal arg = -(z2 / 4L);
  const HPReal b1 = nu_w + Rational(1);
  const HPReal h = hyp0f1(b1, arg, work);
  // z h'(z) = -z^2 / (2 (nu+1)) 0F1(; nu+2; -z^2/4)
  HPReal zdh = hyp0f1(nu_w + Rational(2), arg, work) * z2;
  zdh /= b1;
  zdh /= 2L;
  return (h - zdh).with_precision(precision_bits);
}

RootResult smallest_positive_root(const ScalarFunction& f, const HPReal& scan_from,
                                  const HPReal& scan_step, const HPReal& scan_limit,
                                  const HPReal& tol) {
  if (scan_step.sign() <= 0) throw DomainError("scan step must be positive");
  if (tol.sign() <= 0) throw DomainError("root tolerance must be positive");
  const long prec = scan_from.precision_bits();

  HPReal lo = scan_from;
  HPReal f_lo = f(lo);
  std::size_t iterations = 0;
  if (f_lo.is_zero()) return {lo, lo, lo, f_lo, 0};

  HPReal hi(prec);
  HPReal f_hi(prec);
  bool bracketed = false;
  while (lo < scan_limit) {
    hi = min(lo + scan_step.with_precision(prec), scan_limit.with_precision(prec));
    f_hi = f(hi);
    ++iterations;
    if (f_hi.is_zero()) return {hi, lo, hi, f_hi, iterations};
    if (opposite_signs(f_lo, f_hi)) {
      bracketed = true;
      break;
    }
    lo = hi;
    f_lo = f_hi;
  }
  if (!bracketed) {
    throw NumericalError("no sign change found scanning [" + scan_from.to_string(17) + ", " +
                         scan_limit.to_string(17) + "] with step " + scan_step.to_string(17));
  }

  while (hi - lo > tol) {
    HPReal mid = midpoint(lo, hi);
    if (mid == lo || mid == hi) break;  // precision exhausted
    HPReal f_mid = f(mid);
    ++iterations;
    if (f_mid.is_zero()) return {mid, lo, hi, f_mid, iterations};
    if (opposite_signs(f_lo, f_mid)) {
      hi = std::move(mid);
    } else {
      lo = std::move(mid);
      f_lo = std::move(f_mid);
    }
  }
  HPReal root = midpoint(lo, hi);
  HPReal residual = f(root);
  return {std::move(root), std::move(lo), std::move(hi), std::move(residual), iterations};
}

RootResult safeguarded_newton(const ScalarFunction& f, const ScalarFunction& df, HPReal lo,
                              HPReal hi, const HPReal& guess, const HPReal& tol,
                              std::size_t max_iterations) {
  HPReal f_lo = f(lo);
  const HPReal f_hi = f(hi);
  if (f_lo.is_zero()) return {lo, lo, hi, f_lo, 0};
  if (f_hi.is_zero()) return {hi, lo, hi, f_hi, 0};
  if (!opposite_signs(f_lo, f_hi)) throw NumericalError("safeguarded Newton: bracket has no sign change");

  HPReal x = (guess > lo && guess < hi) ? guess.with_precision(lo.precision_bits()) : midpoint(lo, hi);
  HPReal previous_step = hi - lo;
  for (std::size_t it = 1; it <= max_iterations; ++it) {
    const HPReal fx = f(x);
    if (fx.is_zero()) return {x, lo, hi, fx, it};
    if (opposite_signs(f_lo, fx)) {
      hi = x;
    } else {
      lo = x;
      f_lo = fx;
    }
    const HPReal dfx = df(x);
    HPReal next(x.precision_bits());
    bool newton_ok = !dfx.is_zero();
    if (newton_ok) {
      next = x - fx / dfx;
      // A converged step may land on a bracket end; accept it outright.
      if (abs(next - x) <= tol) {
        HPReal residual = f(next);
        return {std::move(next), std::move(lo), std::move(hi), std::move(residual), it};
      }
      // Reject steps leaving the bracket or not shrinking fast enough.
      newton_ok = next > lo && next < hi && abs(fx + fx) <= abs(previous_step * dfx);
    }
    if (!newton_ok) next = midpoint(lo, hi);
    previous_step = abs(next - x);
    x = std::move(next);
    if (previous_step <= tol || hi - lo <= tol || x == lo || x == hi) {
      HPReal residual = f(x);
      return {std::move(x), std::move(lo), std::move(hi), std::move(residual), it};
    }
  }
  throw NumericalError("safeguarded Newton did not converge in " + std::to_string(max_iterations) +
                       " iterations");
}

RootResult radius_phi_numeric(const Rational& nu, long precision_bits) {
  require_precision(precision_bits);
  if (nu.sign() < 0) throw DomainError("radius_phi_numeric requires nu >= 0");
  const long work = precision_bits + kGuardBits;
  const HPReal nu_w(nu, work);
  const HPReal j1 = bessel_zero(nu_w, 1, 64).root.with_precision(work);
  const HPReal step = nu >= Rational(1) ? HPReal(nu / Rational(8), work) : HPReal(Rational(1, 20), work);
  auto f = [&](const HPReal& z) { return phi_prime(nu_w, z, work); };
  RootResult r = smallest_positive_root(f, HPReal(work), step, square(j1),
                                        pow2(8 - precision_bits, work));
  return {r.root.with_precision(precision_bits), r.lo.with_precision(precision_bits),
          r.hi.with_precision(precision_bits), r.residual.with_precision(precision_bits),
          r.iterations};
}

RootResult radius_varphi_numeric(const Rational& nu, long precision_bits) {
  require_precision(precision_bits);
  if (nu.sign() < 0) throw DomainError("radius_varphi_numeric requires nu >= 0");
  const long work = precision_bits + kGuardBits;
  const HPReal nu_w(nu, work);
  const HPReal j1 = bessel_zero(nu_w, 1, 64).root.with_precision(work);
  const HPReal step = nu >= Rational(1) ? sqrt(HPReal(Rational(2) * nu, work)) / 8L
                                        : HPReal(Rational(1, 20), work);
  auto f = [&](const HPReal& z) { return varphi_prime(nu_w, z, work); };
  RootResult r = smallest_positive_root(f, HPReal(work), step, j1, pow2(8 - precision_bits, work));
  return {r.root.with_precision(precision_bits), r.lo.with_precision(precision_bits),
          r.hi.with_precision(precision_bits), r.residual.with_precision(precision_bits),
          r.iterations};
}

HPReal radius_numeric_value(RadiusFamily family, const Rational& nu, long precision_bits) {
  switch (family) {
    case RadiusFamily::Phi: return radius_phi_numeric(nu, precision_bits).root;
    case RadiusFamily::VarphiSq: return square(radius_varphi_numeric(nu, precision_bits).root);
    case RadiusFamily::Varphi: return radius_varphi_numeric(nu, precision_bits).root;
  }
  throw DomainError("unknown radius family");
}

double mcmahon_guess(double nu, unsigned n) {
  const double beta = (static_cast<double>(n) + nu / 2.0 - 0.25) * std::numbers::pi;
  return beta - (4.0 * nu * nu - 1.0) / (8.0 * beta);
}

std::vector<RootResult> bessel_zeros(const HPReal& nu, unsigned count, long precision_bits) {
  require_precision(precision_bits);
  if (nu.sign() < 0) throw DomainError("bessel_zeros requires nu >= 0");
  if (count == 0) throw DomainError("bessel_zeros requires count >= 1");
  const long work = precision_bits + kGuardBits;
  const HPReal nu_w = nu.with_precision(work);
  const HPReal b1 = nu_w + Rational(1);
  const HPReal b2 = nu_w + Rational(2);
  const double nu_d = nu.to_double();

  // Zeros of J_nu(x) for x > 0 are the zeros of F(x) = 0F1(; nu+1; -x^2/4).
  // F decays like x^{-nu-1/2}; evaluate with enough extra bits that the
  // absolute error stays far below |F'| * tol.
  auto series_bits = [&](const HPReal& x) {
    const double lx = std::max(1.0, std::log2(std::max(2.0, x.to_double())));
    return work + 64 + static_cast<long>(std::ceil((nu_d + 1.0) * lx));
  };
  ScalarFunction f = [&](const HPReal& x) {
    const HPReal arg = -(square(x) / 4L);
    return hyp0f1(b1, arg, series_bits(x)).with_precision(work);
  };
  ScalarFunction df = [&](const HPReal& x) {
    const HPReal arg = -(square(x) / 4L);
    HPReal d = hyp0f1(b2, arg, series_bits(x)).with_precision(work) * x;
    d /= b1;
    d /= -2L;
    return d;
  };

  const HPReal tol = pow2(8 - precision_bits, work);
  // Consecutive zeros of J_nu, nu >= 0, are more than 3 apart; a quarter-pi
  // scan step cannot jump over one.
  const HPReal step = HPReal::pi(work) / 4L;
  std::vector<RootResult> zeros;
  zeros.reserve(count);
  HPReal lo = nu_w;  // j_{nu,1} > nu
  for (unsigned n = 1; n <= count; ++n) {
    if (n > 1) lo = zeros.back().root.with_precision(work) + Rational(1, 2);
    HPReal f_lo = f(lo);
    HPReal hi = lo;
    bool bracketed = false;
    for (int s = 0; s < 64; ++s) {
      hi = lo + step;
      HPReal f_hi = f(hi);
      if (opposite_signs(f_lo, f_hi) || f_hi.is_zero()) {
        bracketed = true;
        break;
      }
      lo = hi;
      f_lo = std::move(f_hi);
    }
    if (!bracketed) {
      throw NumericalError("could not bracket j_{" + nu.to_string(17) + "," + std::to_string(n) + "}");
    }
    const HPReal guess(mcmahon_guess(nu_d, n), work);
    RootResult r = safeguarded_newton(f, df, lo, hi, guess, tol);
    zeros.push_back({r.root.with_precision(precision_bits), r.lo.with_precision(precision_bits),
                     r.hi.with_precision(precision_bits), r.residual.with_precision(precision_bits),
                     r.iterations});
  }
  return zeros;
}

RootResult bessel_zero(const HPReal& nu, unsigned n, long precision_bits) {
  if (n == 0) throw DomainError("Bessel zero index must be >= 1");
  return std::move(bessel_zeros(nu, n, precision_bits).back());
}

HPReal rayleigh_partial(unsigned k, const HPReal& nu, unsigned terms, long precision_bits) {
  if (k == 0) throw DomainError("Rayleigh index k must be >= 1");
  if (terms == 0) throw DomainError("partial Rayleigh sum needs at least one term");
  const auto zeros = bessel_zeros(nu, terms, precision_bits);
  return rayleigh_partial(k, zeros, precision_bits);
}

HPReal rayleigh_partial(unsigned k, std::span<const RootResult> zeros, long precision_bits) {
  if (k == 0) throw DomainError("Rayleigh index k must be >= 1");
  const long work = precision_bits + kGuardBits;
  HPReal sum(work);
  // Smallest terms first.
  for (auto it = zeros.rbegin(); it != zeros.rend(); ++it) {
    HPReal p(work);
    mpfr_pow_si(p.get(), it->root.with_precision(work).get(), -2L * static_cast<long>(k), MPFR_RNDN);
    sum += p;
  }
  return sum.with_precision(precision_bits);
}

}  // namespace rstar
