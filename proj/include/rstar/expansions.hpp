#pragma once

#include <string_view>
#include <variant>
#include <vector>

#include "rstar/hp_real.hpp"
#include "rstar/rational.hpp"

namespace rstar {

/// Coefficient families of the large-order expansions:
///   Eps   - r*(phi_nu)          ~ 4nu     (1 + sum eps_k   / nu^k)
///   Delta - r*(phi_nu)          ~ 4(nu+1) (1 + sum delta_k / nu^k)
///   Rho   - r*(varphi_nu)^2     ~ 2nu     (1 + sum rho_k   / nu^k)
///   Pi    - r*(varphi_nu)       ~ sqrt(2nu)(1 + sum pi_k   / nu^k)
enum class SeriesFamily { Eps, Delta, Rho, Pi };

std::string_view to_string(SeriesFamily family);
SeriesFamily parse_series_family(std::string_view name);

class ExpansionSeries {
 public:
  ExpansionSeries(SeriesFamily family, std::vector<Rational> coeffs)
      : family_(family), coeffs_(std::move(coeffs)) {}

  SeriesFamily family() const noexcept { return family_; }
  std::size_t order() const noexcept { return coeffs_.size(); }
  /// Coefficient with index k, 1 <= k <= order().
  const Rational& operator[](std::size_t k) const { return coeffs_.at(k - 1); }
  const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }

  /// 1 + sum_{k<=n} c_k x^k for x = 1/nu.
  Rational partial_sum(const Rational& nu, std::size_t n) const;

 private:
  SeriesFamily family_;
  std::vector<Rational> coeffs_;
};

ExpansionSeries eps_coeffs(std::size_t n);
ExpansionSeries delta_coeffs(std::size_t n);
ExpansionSeries rho_coeffs(std::size_t n);
ExpansionSeries pi_coeffs(std::size_t n);
ExpansionSeries series_coeffs(SeriesFamily family, std::size_t n);

/// Which radius a truncation approximates.
enum class RadiusFamily { Phi, VarphiSq, Varphi };

std::string_view to_string(RadiusFamily family);
RadiusFamily parse_radius_family(std::string_view name);
/// Coefficient family feeding a radius expansion (Eps, Rho, Pi).
SeriesFamily series_family_of(RadiusFamily family);

struct TruncatedRadius {
  RadiusFamily family;
  Rational nu;
  std::size_t order = 0;
  // Exact for Phi and VarphiSq; Varphi carries sqrt(2nu).
  std::variant<Rational, HPReal> value;
  // Relative remainder (truncation / leading factor - 1) is O(nu^{-expected_error_order}).
  std::size_t expected_error_order = 1;

  HPReal to_real(long precision_bits) const;
};

/// 4nu (1 + sum_{k<=order} eps_k nu^{-k}); order 0 gives the leading term.
TruncatedRadius radius_phi_asymptotic(const Rational& nu, std::size_t order);
/// 2nu (1 + sum_{k<=order} rho_k nu^{-k}).
TruncatedRadius radius_varphi_sq_asymptotic(const Rational& nu, std::size_t order);
/// sqrt(2nu) (1 + sum_{k<=order} pi_k nu^{-k}); only the square root is inexact.
TruncatedRadius radius_varphi_asymptotic(const Rational& nu, std::size_t order,
                                         long precision_bits = kDefaultPrecision);

TruncatedRadius radius_asymptotic(RadiusFamily family, const Rational& nu, std::size_t order,
                                  long precision_bits = kDefaultPrecision);

/// Leading factor 4nu, 2nu or sqrt(2nu) of a radius expansion.
HPReal radius_leading_factor(RadiusFamily family, const Rational& nu, long precision_bits);

}  // namespace rstar
