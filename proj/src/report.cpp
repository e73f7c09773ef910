#include "rstar/report.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

#include "rstar/bessel_oracle.hpp"
#include "rstar/errors.hpp"
#include "rstar/rayleigh.hpp"

namespace rstar {

namespace {

std::string cell_text(const Json& cell) {
  if (cell.is_null()) return "";
  if (cell.is_string()) return cell.get<std::string>();
  return cell.dump();
}

std::string decimal(const Rational& q, long precision_bits) {
  return format_decimal(q, decimal_digits_for(precision_bits));
}

void require_precision(long bits) {
  if (bits < 53) throw DomainError("precision must be at least 53 bits, got " + std::to_string(bits));
}

}  // namespace

OutputFormat parse_output_format(std::string_view name) {
  if (name == "json") return OutputFormat::Json;
  if (name == "csv") return OutputFormat::Csv;
  throw DomainError("unknown output format '" + std::string(name) + "'");
}

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string render(const Table& table, OutputFormat format) {
  if (format == OutputFormat::Json) {
    Json doc;
    doc["meta"] = table.meta;
    doc["rows"] = Json::array();
    for (const auto& row : table.rows) {
      Json obj = Json::object();
      for (std::size_t c = 0; c < table.columns.size(); ++c) obj[table.columns[c]] = row.at(c);
      doc["rows"].push_back(std::move(obj));
    }
    return doc.dump(2) + "\n";
  }
  std::string out;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out += ',';
    out += csv_field(table.columns[c]);
  }
  out += "\r\n";
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += csv_field(cell_text(row[c]));
    }
    out += "\r\n";
  }
  return out;
}

std::string nu_label(const Rational& nu) {
  if (nu.is_integer()) return nu.to_string();
  // Terminating decimals print exactly; others fall back to p/q.
  mpz_class den = nu.denominator();
  for (unsigned p : {2u, 5u}) {
    while (mpz_divisible_ui_p(den.get_mpz_t(), p)) den /= p;
  }
  if (den != 1) return nu.to_string();
  return format_decimal(nu, 4096);
}

Table coeffs_table(SeriesFamily family, std::size_t count, long precision_bits) {
  if (count == 0) throw DomainError("coefficient count must be >= 1");
  require_precision(precision_bits);
  const auto series = series_coeffs(family, count);
  Table t;
  t.meta = {{"family", std::string(to_string(family))}, {"count", count},
            {"precision_bits", precision_bits}};
  t.columns = {"k", "exact", "decimal"};
  for (std::size_t k = 1; k <= count; ++k) {
    t.rows.push_back({Json(k), Json(series[k].to_string()), Json(decimal(series[k], precision_bits))});
  }
  return t;
}

Table sigma_coeff_table(unsigned k, unsigned m, long precision_bits) {
  require_precision(precision_bits);
  const Rational value = sigma_coeff(k, m);
  Table t;
  t.meta = {{"quantity", "laurent_coefficient"}, {"precision_bits", precision_bits}};
  t.columns = {"k", "m", "exact", "decimal"};
  t.rows.push_back({Json(k), Json(m), Json(value.to_string()), Json(decimal(value, precision_bits))});
  return t;
}

Table sigma_sum_table(unsigned k, const Rational& nu, long precision_bits) {
  require_precision(precision_bits);
  const RayleighValue value = rayleigh_sum_exact(k, nu);
  Table t;
  t.meta = {{"quantity", "rayleigh_sum"}, {"precision_bits", precision_bits}};
  t.columns = {"k",     "nu",          "exact",           "decimal",
               "bound", "bound_decimal", "bound_satisfied", "zero_sum_valid"};
  std::vector<Json> row{Json(k), Json(nu.to_string()), Json(value.value.to_string()),
                        Json(decimal(value.value, precision_bits))};
  if (nu > Rational(0)) {
    const Rational bound = rayleigh_bound(k, nu);
    const bool satisfied = value.value.sign() > 0 && value.value <= bound &&
                           bound <= nu.pow(1 - 2 * static_cast<int>(k));
    row.insert(row.end(), {Json(bound.to_string()), Json(decimal(bound, precision_bits)), Json(satisfied)});
  } else {
    row.insert(row.end(), {Json(nullptr), Json(nullptr), Json(nullptr)});
  }
  row.emplace_back(!value.outside_zero_sum);
  t.rows.push_back(std::move(row));
  return t;
}

Table radius_table(RadiusFamily family, const Rational& nu, std::size_t order, bool numeric,
                   long precision_bits) {
  require_precision(precision_bits);
  const int digits = decimal_digits_for(precision_bits);
  const long work = precision_bits + 32;
  const TruncatedRadius asym = radius_asymptotic(family, nu, order, work);
  Table t;
  t.meta = {{"family", std::string(to_string(family))}, {"precision_bits", precision_bits}};
  t.columns = {"nu", "order", "asymptotic", "exact"};
  std::vector<Json> row{Json(nu_label(nu)), Json(order)};
  if (const auto* q = std::get_if<Rational>(&asym.value)) {
    row.emplace_back(format_decimal(*q, digits));
    row.emplace_back(q->to_string());
  } else {
    row.emplace_back(std::get<HPReal>(asym.value).to_string(digits));
    row.emplace_back(nullptr);
  }
  if (numeric) {
    t.columns.insert(t.columns.end(), {"numeric", "abs_error", "scaled_error"});
    const HPReal num = radius_numeric_value(family, nu, work);
    const HPReal err = abs(asym.to_real(work) - num);
    HPReal scaled = err * nu.pow(static_cast<int>(order + 1));
    scaled /= radius_leading_factor(family, nu, work);
    row.emplace_back(num.to_string(digits));
    row.emplace_back(err.to_string(digits));
    row.emplace_back(scaled.to_string(digits));
  }
  t.rows.push_back(std::move(row));
  return t;
}

Table zeros_table(const Rational& nu, unsigned count, long precision_bits) {
  require_precision(precision_bits);
  if (nu.sign() < 0) throw DomainError("Bessel zeros require nu >= 0");
  if (count == 0) throw DomainError("zero count must be >= 1");
  const auto zeros = bessel_zeros(HPReal(nu, precision_bits + 32), count, precision_bits);
  Table t;
  t.meta = {{"nu", nu_label(nu)}, {"precision_bits", precision_bits}};
  t.columns = {"n", "zero", "residual"};
  for (unsigned n = 1; n <= count; ++n) {
    const auto& z = zeros[n - 1];
    t.rows.push_back({Json(n), Json(z.root.to_string()), Json(z.residual.to_string(6))});
  }
  return t;
}

void ReportConfig::validate() const {
  if (nu_grid.empty()) throw DomainError("verification grid is empty");
  if (orders.empty()) throw DomainError("verification order list is empty");
  for (const auto& nu : nu_grid) {
    if (nu <= Rational(0)) throw DomainError("verification grid needs nu > 0, got " + nu.to_string());
  }
  require_precision(precision_bits);
}

ReportConfig ReportConfig::from_json(const Json& j) {
  ReportConfig c;
  if (!j.is_object()) throw DomainError("verification config must be a JSON object");
  try {
    if (j.contains("family")) c.family = parse_radius_family(j.at("family").get<std::string>());
    if (j.contains("nu_grid")) {
      c.nu_grid.clear();
      for (const auto& v : j.at("nu_grid")) {
        c.nu_grid.push_back(v.is_string() ? Rational::parse(v.get<std::string>())
                                          : Rational::parse(v.dump()));
      }
    }
    if (j.contains("orders")) c.orders = j.at("orders").get<std::vector<std::size_t>>();
    if (j.contains("precision_bits")) c.precision_bits = j.at("precision_bits").get<long>();
    if (j.contains("format")) c.format = parse_output_format(j.at("format").get<std::string>());
    if (j.contains("output_path")) c.output_path = j.at("output_path").get<std::string>();
  } catch (const Json::exception& e) {
    throw DomainError(std::string("bad verification config: ") + e.what());
  }
  return c;
}

double least_squares_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxx == 0.0 ? std::numeric_limits<double>::quiet_NaN() : sxy / sxx;
}

VerificationReport run_verification(const ReportConfig& config) {
  config.validate();
  VerificationReport report;
  report.config = config;

  std::vector<Rational> grid = config.nu_grid;
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  std::vector<std::size_t> orders = config.orders;
  std::sort(orders.begin(), orders.end());
  orders.erase(std::unique(orders.begin(), orders.end()), orders.end());

  const long prec = config.precision_bits;
  const long work = prec + 32;
  const int digits = decimal_digits_for(prec);
  const std::size_t max_order = orders.back();
  const auto coeffs = series_coeffs(series_family_of(config.family), max_order + 1);

  // One oracle root per nu, computed concurrently.
  struct Numeric {
    std::optional<HPReal> value;
    std::string failure;
  };
  std::vector<std::future<Numeric>> jobs;
  jobs.reserve(grid.size());
  for (const auto& nu : grid) {
    jobs.push_back(std::async(std::launch::async, [&config, nu, work]() {
      try {
        return Numeric{radius_numeric_value(config.family, nu, work), {}};
      } catch (const std::exception& e) {
        return Numeric{std::nullopt, e.what()};
      }
    }));
  }
  std::vector<Numeric> numerics;
  numerics.reserve(grid.size());
  for (auto& job : jobs) numerics.push_back(job.get());

  std::map<std::size_t, std::pair<std::vector<double>, std::vector<double>>> fits;
  bool any_failed = false;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Rational& nu = grid[i];
    const HPReal leading = radius_leading_factor(config.family, nu, work);
    for (std::size_t order : orders) {
      VerificationRow row;
      row.nu = nu_label(nu);
      row.order = order;
      const TruncatedRadius asym = radius_asymptotic(config.family, nu, order, work);
      if (const auto* q = std::get_if<Rational>(&asym.value)) {
        row.asymptotic = format_decimal(*q, digits);
      } else {
        row.asymptotic = std::get<HPReal>(asym.value).to_string(digits);
      }
      if (!numerics[i].value) {
        row.failed = true;
        row.failure = numerics[i].failure;
        any_failed = true;
        report.rows.push_back(std::move(row));
        continue;
      }
      const HPReal& num = *numerics[i].value;
      const HPReal err = abs(asym.to_real(work) - num);
      const HPReal relative = err / leading;
      HPReal scaled = relative * nu.pow(static_cast<int>(order + 1));
      row.numeric = num.to_string(digits);
      row.abs_error = err.to_string(digits);
      row.scaled_error = scaled.to_string(digits);
      if (relative.sign() > 0) {
        fits[order].first.push_back(std::log(nu.to_double()));
        fits[order].second.push_back(log(relative).to_double());
      }
      report.rows.push_back(std::move(row));
    }
  }

  bool slopes_ok = true;
  for (std::size_t order : orders) {
    SlopeResult s;
    s.order = order;
    s.theory = -static_cast<double>(order + 1);
    s.next_coefficient_vanishes = coeffs[order + 1].is_zero();
    const auto& fit = fits[order];
    s.slope = least_squares_slope(fit.first, fit.second);
    if (std::isnan(s.slope)) {
      s.pass = false;
    } else if (s.next_coefficient_vanishes) {
      s.pass = s.slope <= s.theory + kSlopeTolerance;
    } else {
      s.pass = std::fabs(s.slope - s.theory) <= kSlopeTolerance;
    }
    slopes_ok = slopes_ok && s.pass;
    report.slopes.push_back(s);
  }
  report.exit_code = any_failed ? 4 : (slopes_ok ? 0 : 5);
  return report;
}

namespace {

std::string slope_text(double slope) {
  if (std::isnan(slope)) return "nan";
  std::ostringstream os;
  os.precision(6);
  os << std::fixed << slope;
  return os.str();
}

}  // namespace

std::string render(const VerificationReport& report, OutputFormat format) {
  const ReportConfig& c = report.config;
  if (format == OutputFormat::Json) {
    Json doc;
    Json grid = Json::array();
    for (const auto& nu : c.nu_grid) grid.push_back(nu_label(nu));
    doc["meta"] = {{"family", std::string(to_string(c.family))},
                   {"precision_bits", c.precision_bits},
                   {"grid", grid},
                   {"orders", c.orders}};
    doc["rows"] = Json::array();
    for (const auto& r : report.rows) {
      Json row = {{"nu", r.nu},
                  {"order", r.order},
                  {"asymptotic", r.asymptotic},
                  {"numeric", r.numeric},
                  {"abs_error", r.abs_error},
                  {"scaled_error", r.scaled_error}};
      if (r.failed) row["failure"] = r.failure;
      doc["rows"].push_back(std::move(row));
    }
    doc["slopes"] = Json::array();
    for (const auto& s : report.slopes) {
      doc["slopes"].push_back({{"order", s.order},
                               {"slope", slope_text(s.slope)},
                               {"theory", s.theory},
                               {"pass", s.pass},
                               {"informational", s.next_coefficient_vanishes}});
    }
    return doc.dump(2) + "\n";
  }
  Table t;
  t.columns = {"nu", "order", "asymptotic", "numeric", "abs_error", "scaled_error"};
  for (const auto& r : report.rows) {
    t.rows.push_back({Json(r.nu), Json(r.order), Json(r.asymptotic), Json(r.numeric),
                      Json(r.abs_error), Json(r.scaled_error)});
  }
  return render(t, OutputFormat::Csv);
}

std::string slope_summary(const VerificationReport& report) {
  std::ostringstream os;
  for (const auto& s : report.slopes) {
    os << "order " << s.order << ": slope " << slope_text(s.slope) << " (theory " << s.theory
       << ") " << (s.pass ? "PASS" : "FAIL");
    if (s.next_coefficient_vanishes) os << " [next coefficient vanishes: informational]";
    os << '\n';
  }
  for (const auto& r : report.rows) {
    if (r.failed) os << "nu " << r.nu << " order " << r.order << ": oracle failed: " << r.failure << '\n';
  }
  return os.str();
}

}  // namespace rstar
