#include "rstar/potential.hpp"

#include "rstar/errors.hpp"

namespace rstar {

// Power-of-a-series recurrence (J.C.P. Miller):
//   n c_n = sum_{j=1}^{n} ((mu + 1) j - n) x_j c_{n-j},  c_0 = 1.
std::vector<Rational> potential_poly_row(const Rational& mu, std::size_t n,
                                         std::span<const Rational> xs) {
  if (xs.size() < n)
    throw DomainError("potential polynomial of order " + std::to_string(n) + " needs " +
                      std::to_string(n) + " arguments, got " + std::to_string(xs.size()));
  std::vector<Rational> c;
  c.reserve(n + 1);
  c.emplace_back(1);
  const Rational mu_plus_one = mu + Rational(1);
  for (std::size_t k = 1; k <= n; ++k) {
    Rational acc;
    for (std::size_t j = 1; j <= k; ++j) {
      if (xs[j - 1].is_zero() || c[k - j].is_zero()) continue;
      acc += (mu_plus_one * Rational(static_cast<long>(j)) - Rational(static_cast<long>(k))) *
             xs[j - 1] * c[k - j];
    }
    c.push_back(acc / Rational(static_cast<long>(k)));
  }
  return c;
}

Rational potential_poly(unsigned mu, std::size_t n, const PotentialArgs& args) {
  return potential_poly_row(Rational(static_cast<long>(mu)), n, args.values()).back();
}

}  // namespace rstar
