#include "rstar/rayleigh.hpp"

#include <mutex>

#include "rstar/errors.hpp"

namespace rstar {

namespace {

Rational signed_power(long base, unsigned exponent) {
  return Rational(base).pow(static_cast<int>(exponent));
}

void require_positive_k(unsigned k) {
  if (k == 0) throw DomainError("Rayleigh index k must be >= 1");
}

}  // namespace

Rational SigmaTable::coeff(unsigned k, unsigned m) const {
  require_positive_k(k);
  {
    std::shared_lock lock(mutex_);
    if (auto it = entries_.find({k, m}); it != entries_.end()) return it->second;
  }
  std::unique_lock lock(mutex_);
  return coeff_locked(k, m);
}

std::size_t SigmaTable::cached_entries() const {
  std::shared_lock lock(mutex_);
  return entries_.size();
}

// Caller holds the unique lock. std::map nodes are stable, so references
// survive later insertions.
const Rational& SigmaTable::coeff_locked(unsigned k, unsigned m) const {
  if (auto it = entries_.find({k, m}); it != entries_.end()) return it->second;

  Rational value;
  if (k == 1) {
    value = Rational(m % 2 == 0 ? 1 : -1, 4);
  } else {
    // Inner convolution conv_i = sum_{j<=i} sum_{n<k} sigma_j^(n) sigma_{i-j}^(k-n),
    // then sigma_m^(k) = sum_{i<=m} (-k)^{m-i} conv_i.
    const long neg_k = -static_cast<long>(k);
    for (unsigned i = 0; i <= m; ++i) {
      Rational conv;
      for (unsigned j = 0; j <= i; ++j) {
        for (unsigned n = 1; n < k; ++n) conv += coeff_locked(n, j) * coeff_locked(k - n, i - j);
      }
      value += signed_power(neg_k, m - i) * conv;
    }
  }
  return entries_.emplace(std::make_pair(k, m), std::move(value)).first->second;
}

SigmaTable& default_sigma_table() {
  static SigmaTable table;
  return table;
}

Rational sigma_coeff(unsigned k, unsigned m) { return default_sigma_table().coeff(k, m); }

Rational sigma_closed_form(unsigned k, unsigned m) {
  const Rational sign(m % 2 == 0 ? 1 : -1);
  const auto mi = static_cast<long>(m);
  switch (k) {
    case 1:
      return sign / Rational(4);
    case 2:
      return sign * (Rational(2).pow(static_cast<int>(m + 2)) - Rational(mi) - Rational(3)) /
             Rational(16);
    case 3:
      return sign *
             (Rational(3).pow(static_cast<int>(m + 4)) - Rational(2).pow(static_cast<int>(m + 7)) +
              Rational(2 * (mi + 4) * (mi + 6)) + Rational(7)) /
             Rational(256);
    default:
      throw DomainError("closed form for sigma_m^(k) is only available for k in {1,2,3}, got k=" +
                        std::to_string(k));
  }
}

std::vector<Rational> rayleigh_sums_exact(unsigned k, const Rational& nu) {
  require_positive_k(k);
  for (unsigned p = 1; p <= k; ++p) {
    if (nu == Rational(-static_cast<long>(p))) {
      throw PoleError("sigma_" + std::to_string(k) + "(nu) has a pole at nu = " + nu.to_string(),
                      nu.to_string());
    }
  }
  std::vector<Rational> sums;
  sums.reserve(k);
  sums.push_back(Rational(1) / (Rational(4) * (nu + Rational(1))));
  for (unsigned j = 2; j <= k; ++j) {
    Rational acc;
    for (unsigned n = 1; n < j; ++n) acc += sums[n - 1] * sums[j - n - 1];
    sums.push_back(acc / (nu + Rational(static_cast<long>(j))));
  }
  return sums;
}

RayleighValue rayleigh_sum_exact(unsigned k, const Rational& nu) {
  auto sums = rayleigh_sums_exact(k, nu);
  return RayleighValue{k, nu, std::move(sums.back()), nu <= Rational(-1)};
}

Rational laurent_truncation(unsigned k, const Rational& nu, unsigned terms) {
  require_positive_k(k);
  if (nu <= Rational(static_cast<long>(k)))
    throw DomainError("Laurent expansion of sigma_" + std::to_string(k) + " requires nu > " +
                      std::to_string(k) + ", got " + nu.to_string());
  // Horner in 1/nu.
  const Rational inv = Rational(1) / nu;
  Rational acc;
  for (unsigned m = terms; m-- > 0;) acc = acc * inv + sigma_coeff(k, m);
  return acc * inv.pow(static_cast<int>(2 * k - 1));
}

Rational rayleigh_bound(unsigned k, const Rational& nu) {
  require_positive_k(k);
  if (nu <= Rational(0)) throw DomainError("Rayleigh bound requires nu > 0, got " + nu.to_string());
  const Rational central = binomial(Rational(static_cast<long>(2 * k)), k);
  const Rational denom =
      Rational(2).pow(static_cast<int>(2 * k + 1)) * Rational(static_cast<long>(2 * k - 1));
  return central / denom * nu.pow(-static_cast<int>(2 * k - 1));
}

}  // namespace rstar
