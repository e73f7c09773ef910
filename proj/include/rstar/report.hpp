#pragma once

#include <json.hpp>

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rstar/expansions.hpp"
#include "rstar/hp_real.hpp"
#include "rstar/rational.hpp"

namespace rstar {

using Json = nlohmann::ordered_json;

enum class OutputFormat { Json, Csv };
OutputFormat parse_output_format(std::string_view name);

/// Column-oriented result of a command. Cells are JSON scalars (string,
/// integer, bool or null); numbers are carried as decimal strings so both
/// encodings print identical digits.
struct Table {
  Json meta = Json::object();
  std::vector<std::string> columns;
  std::vector<std::vector<Json>> rows;
};

/// JSON: {"meta": {...}, "rows": [{column: cell, ...}, ...]}.
/// CSV: header plus one line per row, RFC 4180 quoting, CRLF line ends.
std::string render(const Table& table, OutputFormat format);
std::string csv_field(std::string_view text);

Table coeffs_table(SeriesFamily family, std::size_t count, long precision_bits);
Table sigma_coeff_table(unsigned k, unsigned m, long precision_bits);
Table sigma_sum_table(unsigned k, const Rational& nu, long precision_bits);
Table radius_table(RadiusFamily family, const Rational& nu, std::size_t order, bool numeric,
                   long precision_bits);
Table zeros_table(const Rational& nu, unsigned count, long precision_bits);

/// Decimal text of nu as given on the grid (exact, trailing zeros trimmed).
std::string nu_label(const Rational& nu);

struct VerificationRow {
  std::string nu;
  std::size_t order = 0;
  std::string asymptotic;
  std::string numeric;
  std::string abs_error;
  // abs_error * nu^{order+1} / leading factor
  std::string scaled_error;
  bool failed = false;
  std::string failure;
};

struct SlopeResult {
  std::size_t order = 0;
  double slope = 0.0;
  double theory = 0.0;
  bool pass = false;
  // The exact next coefficient is zero, so the slope is expected to be
  // steeper than theory; only a shallower slope counts as failure.
  bool next_coefficient_vanishes = false;
};

struct ReportConfig {
  RadiusFamily family = RadiusFamily::Phi;
  std::vector<Rational> nu_grid{Rational(10), Rational(20), Rational(40), Rational(80)};
  std::vector<std::size_t> orders{1, 2, 4, 6};
  long precision_bits = kDefaultPrecision;
  OutputFormat format = OutputFormat::Json;
  std::optional<std::string> output_path;

  /// Throws DomainError on an empty grid, nu <= 0 or precision < 53.
  void validate() const;
  /// Reads keys family, nu_grid, orders, precision_bits, format, output_path;
  /// absent keys keep their defaults.
  static ReportConfig from_json(const Json& j);
};

inline constexpr double kSlopeTolerance = 0.5;

struct VerificationReport {
  ReportConfig config;
  std::vector<VerificationRow> rows;
  std::vector<SlopeResult> slopes;
  int exit_code = 0;  // 0 ok, 4 oracle failure, 5 slope out of tolerance
};

/// Evaluates every (nu, order) pair, regresses log(abs_error / leading) on
/// log(nu) per order and compares against -(order + 1). Grid points are
/// evaluated concurrently; rows come back sorted by (nu, order).
VerificationReport run_verification(const ReportConfig& config);

std::string render(const VerificationReport& report, OutputFormat format);
/// Human-readable slope lines.
std::string slope_summary(const VerificationReport& report);

/// Ordinary least-squares slope of y on x.
double least_squares_slope(std::span<const double> x, std::span<const double> y);

}  // namespace rstar
