#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "rstar/expansions.hpp"
#include "rstar/hp_real.hpp"
#include "rstar/rational.hpp"

namespace rstar {

/// A bracketed root. lo <= root <= hi, f(lo) and f(hi) of opposite sign
/// (or one of them exactly zero).
struct RootResult {
  HPReal root;
  HPReal lo;
  HPReal hi;
  HPReal residual;
  std::size_t iterations = 0;
};

using ScalarFunction = std::function<HPReal(const HPReal&)>;

/// 0F1(; b; z) = sum_m z^m / (m! (b)_m), b > 0.
///
/// Working precision is raised by the bit size of the largest series term,
/// so alternating sums with heavy cancellation keep an absolute error of
/// about 2^{-(precision_bits + 32)}. Throws NumericalError if the series has
/// not settled after the iteration cap or would need more than 2^18 working
/// bits.
HPReal hyp0f1(const HPReal& b, const HPReal& z, long precision_bits);

/// d/dz [z 0F1(; nu+1; -z/4)], the derivative of the normalised phi_nu.
/// Vanishes exactly where sqrt(z) J'_nu(sqrt z) + (2 - nu) J_nu(sqrt z) = 0.
HPReal phi_prime(const HPReal& nu, const HPReal& z, long precision_bits);

/// d/dz [z 0F1(; nu+1; -z^2/4)], the derivative of the normalised varphi_nu.
/// Vanishes exactly where z J'_nu(z) + (1 - nu) J_nu(z) = 0.
HPReal varphi_prime(const HPReal& nu, const HPReal& z, long precision_bits);

/// Scans upward from scan_from in steps of scan_step until the first sign
/// change (at most scan_limit) and bisects that bracket to width <= tol.
/// Arithmetic runs at the precision of scan_from.
RootResult smallest_positive_root(const ScalarFunction& f, const HPReal& scan_from,
                                  const HPReal& scan_step, const HPReal& scan_limit,
                                  const HPReal& tol);

/// Newton iteration kept inside [lo, hi]; steps that leave the bracket or
/// fail to halve it fall back to bisection. f(lo) and f(hi) must differ in sign.
RootResult safeguarded_newton(const ScalarFunction& f, const ScalarFunction& df, HPReal lo,
                              HPReal hi, const HPReal& guess, const HPReal& tol,
                              std::size_t max_iterations = 400);

/// r*(phi_nu): smallest positive zero of phi_prime, searched in (0, j_{nu,1}^2).
RootResult radius_phi_numeric(const Rational& nu, long precision_bits = kDefaultPrecision);

/// r*(varphi_nu): smallest positive zero of varphi_prime, searched in (0, j_{nu,1}).
RootResult radius_varphi_numeric(const Rational& nu, long precision_bits = kDefaultPrecision);

/// Numeric value matching radius_asymptotic(family, ...): the root itself, or
/// its square for VarphiSq.
HPReal radius_numeric_value(RadiusFamily family, const Rational& nu, long precision_bits);

/// McMahon-type estimate beta - (4nu^2 - 1) / (8 beta), beta = (n + nu/2 - 1/4) pi.
double mcmahon_guess(double nu, unsigned n);

/// j_{nu,1}, ..., j_{nu,count}, each to absolute tolerance 2^{-precision_bits+8}.
std::vector<RootResult> bessel_zeros(const HPReal& nu, unsigned count,
                                     long precision_bits = kDefaultPrecision);

/// j_{nu,n}.
RootResult bessel_zero(const HPReal& nu, unsigned n, long precision_bits = kDefaultPrecision);

/// sum_{n<=M} j_{nu,n}^{-2k}.
HPReal rayleigh_partial(unsigned k, const HPReal& nu, unsigned terms,
                        long precision_bits = kDefaultPrecision);

/// Same sum over precomputed zeros.
HPReal rayleigh_partial(unsigned k, std::span<const RootResult> zeros, long precision_bits);

}  // namespace rstar
