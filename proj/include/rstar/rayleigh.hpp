#pragma once

#include <map>
#include <shared_mutex>
#include <utility>
#include <vector>

#include "rstar/rational.hpp"

namespace rstar {

/// Memoised Laurent coefficients sigma_m^(k) of the Rayleigh function,
///
///   sigma_k(nu) = nu^{-(2k-1)} sum_{m>=0} sigma_m^(k) nu^{-m},   nu > k.
///
/// Entries are produced on demand from the convolution recurrence and kept
/// for the lifetime of the table. Safe for concurrent use; each (k, m) is
/// computed once.
class SigmaTable {
 public:
  SigmaTable() = default;
  SigmaTable(const SigmaTable&) = delete;
  SigmaTable& operator=(const SigmaTable&) = delete;

  /// sigma_m^(k). Throws DomainError for k == 0.
  Rational coeff(unsigned k, unsigned m) const;

  std::size_t cached_entries() const;

 private:
  const Rational& coeff_locked(unsigned k, unsigned m) const;

  mutable std::shared_mutex mutex_;
  mutable std::map<std::pair<unsigned, unsigned>, Rational> entries_;
};

/// Process-wide table used by the free functions below.
SigmaTable& default_sigma_table();

/// sigma_m^(k) from the default table.
Rational sigma_coeff(unsigned k, unsigned m);

/// Closed forms for k = 1, 2, 3:
///   sigma_m^(1) = (-1)^m / 4
///   sigma_m^(2) = (-1)^m (2^{m+2} - m - 3) / 16
///   sigma_m^(3) = (-1)^m (3^{m+4} - 2^{m+7} + 2(m+4)(m+6) + 7) / 256
Rational sigma_closed_form(unsigned k, unsigned m);

struct RayleighValue {
  unsigned k = 0;
  Rational nu;
  Rational value;
  // nu <= -1: the rational-function value is still defined, but it is no
  // longer a sum over Bessel zeros.
  bool outside_zero_sum = false;
};

/// Exact sigma_k(nu) from sigma_1 = 1/(4(nu+1)) and
///   sigma_k = (nu+k)^{-1} sum_{n=1}^{k-1} sigma_n sigma_{k-n}.
/// Throws PoleError when nu is one of -1, ..., -k.
RayleighValue rayleigh_sum_exact(unsigned k, const Rational& nu);

/// sigma_1(nu), ..., sigma_k(nu) (index 0 holds sigma_1).
std::vector<Rational> rayleigh_sums_exact(unsigned k, const Rational& nu);

/// nu^{-(2k-1)} sum_{m<M} sigma_m^(k) nu^{-m}; requires nu > k.
Rational laurent_truncation(unsigned k, const Rational& nu, unsigned terms);

/// binom(2k,k) / (2^{2k+1} (2k-1)) * nu^{-(2k-1)}, an upper bound for
/// sigma_k(nu) when nu > 0.
Rational rayleigh_bound(unsigned k, const Rational& nu);

}  // namespace rstar
