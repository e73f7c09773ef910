#include "rstar/expansions.hpp"

#include <functional>

#include "rstar/errors.hpp"
#include "rstar/potential.hpp"
#include "rstar/rayleigh.hpp"

namespace rstar {

namespace {

Rational parity(std::size_t k) { return Rational(k % 2 == 0 ? 1 : -1); }

// Coefficients c_k of the inversion of
//   1 = sum_{k>=1} weight(k) (nu (1 + c(nu)))^k sigma_k(nu)
// with c(nu) = sum c_k nu^{-k}:
//   c_k = (-1)^{k+1} - sum_{n<k} (-1)^{k-n} c_n
//         - sum_{n=2}^{k+1} weight(n) sum_{m=0}^{k-n+1} sigma_{k-n-m+1}^(n) A_{n,m}(c_1..c_m).
// weight(n) = 4^n gives eps, weight(n) = 2^{n+1} gives rho.
std::vector<Rational> inversion_coeffs(std::size_t count,
                                       const std::function<Rational(unsigned)>& weight) {
  std::vector<Rational> c;
  c.reserve(count);
  for (std::size_t k = 1; k <= count; ++k) {
    Rational value = parity(k + 1);
    for (std::size_t n = 1; n < k; ++n) value -= parity(k - n) * c[n - 1];
    for (std::size_t n = 2; n <= k + 1; ++n) {
      const std::size_t max_m = k + 1 - n;
      // A_{n,m} needs only c_1..c_m, all known since m <= k - 1.
      const auto powers = potential_poly_row(Rational(static_cast<long>(n)), max_m,
                                             std::span<const Rational>(c).first(max_m));
      Rational inner;
      for (std::size_t m = 0; m <= max_m; ++m) {
        inner += sigma_coeff(static_cast<unsigned>(n), static_cast<unsigned>(k - n - m + 1)) *
                 powers[m];
      }
      value -= weight(static_cast<unsigned>(n)) * inner;
    }
    c.push_back(std::move(value));
  }
  return c;
}

void require_positive_nu(const Rational& nu) {
  if (nu <= Rational(0)) throw DomainError("radius expansion requires nu > 0, got " + nu.to_string());
}

}  // namespace

std::string_view to_string(SeriesFamily family) {
  switch (family) {
    case SeriesFamily::Eps: return "eps";
    case SeriesFamily::Delta: return "delta";
    case SeriesFamily::Rho: return "rho";
    case SeriesFamily::Pi: return "pi";
  }
  return "?";
}

SeriesFamily parse_series_family(std::string_view name) {
  if (name == "eps") return SeriesFamily::Eps;
  if (name == "delta") return SeriesFamily::Delta;
  if (name == "rho") return SeriesFamily::Rho;
  if (name == "pi") return SeriesFamily::Pi;
  throw DomainError("unknown coefficient family '" + std::string(name) + "'");
}

Rational ExpansionSeries::partial_sum(const Rational& nu, std::size_t n) const {
  if (n > order()) throw DomainError("series holds only " + std::to_string(order()) + " coefficients");
  const Rational x = Rational(1) / nu;
  Rational acc;
  for (std::size_t k = n; k >= 1; --k) acc = (acc + coeffs_[k - 1]) * x;
  return acc + Rational(1);
}

ExpansionSeries eps_coeffs(std::size_t n) {
  return {SeriesFamily::Eps,
          inversion_coeffs(n, [](unsigned k) { return Rational(4).pow(static_cast<int>(k)); })};
}

ExpansionSeries rho_coeffs(std::size_t n) {
  return {SeriesFamily::Rho,
          inversion_coeffs(n, [](unsigned k) { return Rational(2).pow(static_cast<int>(k + 1)); })};
}

ExpansionSeries delta_coeffs(std::size_t n) {
  const auto eps = eps_coeffs(n);
  std::vector<Rational> d;
  d.reserve(n);
  for (std::size_t k = 1; k <= n; ++k) d.push_back(k == 1 ? Rational(-1) : eps[k] - d.back());
  return {SeriesFamily::Delta, std::move(d)};
}

ExpansionSeries pi_coeffs(std::size_t n) {
  const auto rho = rho_coeffs(n);
  std::vector<Rational> p;
  p.reserve(n);
  const Rational half(1, 2);
  for (std::size_t k = 1; k <= n; ++k) {
    Rational conv;
    for (std::size_t j = 1; j < k; ++j) conv += p[j - 1] * p[k - j - 1];
    p.push_back(half * (rho[k] - conv));
  }
  return {SeriesFamily::Pi, std::move(p)};
}

ExpansionSeries series_coeffs(SeriesFamily family, std::size_t n) {
  switch (family) {
    case SeriesFamily::Eps: return eps_coeffs(n);
    case SeriesFamily::Delta: return delta_coeffs(n);
    case SeriesFamily::Rho: return rho_coeffs(n);
    case SeriesFamily::Pi: return pi_coeffs(n);
  }
  throw DomainError("unknown coefficient family");
}

std::string_view to_string(RadiusFamily family) {
  switch (family) {
    case RadiusFamily::Phi: return "phi";
    case RadiusFamily::VarphiSq: return "varphi_sq";
    case RadiusFamily::Varphi: return "varphi";
  }
  return "?";
}

RadiusFamily parse_radius_family(std::string_view name) {
  if (name == "phi") return RadiusFamily::Phi;
  if (name == "varphi_sq") return RadiusFamily::VarphiSq;
  if (name == "varphi") return RadiusFamily::Varphi;
  throw DomainError("unknown radius family '" + std::string(name) + "'");
}

SeriesFamily series_family_of(RadiusFamily family) {
  switch (family) {
    case RadiusFamily::Phi: return SeriesFamily::Eps;
    case RadiusFamily::VarphiSq: return SeriesFamily::Rho;
    case RadiusFamily::Varphi: return SeriesFamily::Pi;
  }
  throw DomainError("unknown radius family");
}

HPReal TruncatedRadius::to_real(long precision_bits) const {
  if (const auto* q = std::get_if<Rational>(&value)) return HPReal(*q, precision_bits);
  return std::get<HPReal>(value).with_precision(precision_bits);
}

TruncatedRadius radius_phi_asymptotic(const Rational& nu, std::size_t order) {
  require_positive_nu(nu);
  const auto eps = eps_coeffs(order);
  return {RadiusFamily::Phi, nu, order, Rational(4) * nu * eps.partial_sum(nu, order), order + 1};
}

TruncatedRadius radius_varphi_sq_asymptotic(const Rational& nu, std::size_t order) {
  require_positive_nu(nu);
  const auto rho = rho_coeffs(order);
  return {RadiusFamily::VarphiSq, nu, order, Rational(2) * nu * rho.partial_sum(nu, order),
          order + 1};
}

TruncatedRadius radius_varphi_asymptotic(const Rational& nu, std::size_t order,
                                         long precision_bits) {
  require_positive_nu(nu);
  const auto pi = pi_coeffs(order);
  HPReal value = radius_leading_factor(RadiusFamily::Varphi, nu, precision_bits);
  value *= pi.partial_sum(nu, order);
  return {RadiusFamily::Varphi, nu, order, std::move(value), order + 1};
}

TruncatedRadius radius_asymptotic(RadiusFamily family, const Rational& nu, std::size_t order,
                                  long precision_bits) {
  switch (family) {
    case RadiusFamily::Phi: return radius_phi_asymptotic(nu, order);
    case RadiusFamily::VarphiSq: return radius_varphi_sq_asymptotic(nu, order);
    case RadiusFamily::Varphi: return radius_varphi_asymptotic(nu, order, precision_bits);
  }
  throw DomainError("unknown radius family");
}

HPReal radius_leading_factor(RadiusFamily family, const Rational& nu, long precision_bits) {
  switch (family) {
    case RadiusFamily::Phi: return HPReal(Rational(4) * nu, precision_bits);
    case RadiusFamily::VarphiSq: return HPReal(Rational(2) * nu, precision_bits);
    case RadiusFamily::Varphi: return sqrt(HPReal(Rational(2) * nu, precision_bits));
  }
  throw DomainError("unknown radius family");
}

}  // namespace rstar
