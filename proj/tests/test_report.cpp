#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "rstar/errors.hpp"
#include "rstar/report.hpp"

using rstar::Json;
using rstar::OutputFormat;
using rstar::Rational;

namespace {

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    const std::size_t end = text.find("\r\n", start);
    REQUIRE(end != std::string::npos);
    lines.push_back(text.substr(start, end - start));
    start = end + 2;
  }
  return lines;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out(1);
  for (char c : line) {
    if (c == ',') out.emplace_back();
    else out.back() += c;
  }
  return out;
}

const rstar::VerificationReport& phi_report() {
  static const rstar::VerificationReport report = rstar::run_verification(rstar::ReportConfig{});
  return report;
}

}  // namespace

TEST_CASE("csv quoting") {
  CHECK(rstar::csv_field("plain") == "plain");
  CHECK(rstar::csv_field("a,b") == "\"a,b\"");
  CHECK(rstar::csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(rstar::csv_field("two\nlines") == "\"two\nlines\"");
  CHECK(rstar::csv_field("") == "");
}

TEST_CASE("table rendering") {
  rstar::Table t;
  t.meta["family"] = "test";
  t.columns = {"k", "text", "flag", "missing"};
  t.rows.push_back({Json(1), Json("x,y"), Json(true), Json(nullptr)});
  t.rows.push_back({Json(2), Json("-1/2"), Json(false), Json("z")});

  const auto csv = split_lines(rstar::render(t, OutputFormat::Csv));
  REQUIRE(csv.size() == 3);
  CHECK(csv[0] == "k,text,flag,missing");
  CHECK(csv[1] == "1,\"x,y\",true,");
  CHECK(csv[2] == "2,-1/2,false,z");

  const Json j = Json::parse(rstar::render(t, OutputFormat::Json));
  CHECK(j["meta"]["family"] == "test");
  REQUIRE(j["rows"].size() == 2);
  CHECK(j["rows"][0]["text"] == "x,y");
  CHECK(j["rows"][0]["missing"].is_null());
  CHECK(j["rows"][1]["k"] == 2);
  // Column order is preserved in each row object.
  CHECK(j["rows"][0].begin().key() == "k");
}

TEST_CASE("output format names") {
  CHECK(rstar::parse_output_format("json") == OutputFormat::Json);
  CHECK(rstar::parse_output_format("csv") == OutputFormat::Csv);
  CHECK_THROWS_AS(rstar::parse_output_format("xml"), rstar::DomainError);
}

TEST_CASE("coefficient and sigma tables") {
  const auto eps = rstar::coeffs_table(rstar::SeriesFamily::Eps, 6, 128);
  REQUIRE(eps.rows.size() == 6);
  const std::vector<std::string> expected{"0", "1", "0", "-4", "2", "44"};
  for (std::size_t i = 0; i < 6; ++i) CHECK(eps.rows[i][1] == expected[i]);

  const auto pi = rstar::coeffs_table(rstar::SeriesFamily::Pi, 4, 128);
  CHECK(pi.rows[2][1] == "-39/128");
  CHECK(pi.rows[3][2] == "-0.19775390625");

  const auto s = rstar::sigma_coeff_table(2, 0, 128);
  CHECK(s.rows.at(0).at(2) == "1/16");

  const auto sum = rstar::sigma_sum_table(1, Rational(1), 128);
  const Json row = Json::parse(rstar::render(sum, OutputFormat::Json))["rows"][0];
  CHECK(row["exact"] == "1/8");
  CHECK(row["bound"] == "1/4");
  CHECK(row["bound_satisfied"] == true);

  const auto negative = Json::parse(rstar::render(rstar::sigma_sum_table(2, Rational(-5, 2), 128),
                                                  OutputFormat::Json))["rows"][0];
  CHECK(negative["exact"] == "-1/18");
  CHECK(negative["bound"].is_null());

  CHECK_THROWS_AS(rstar::sigma_sum_table(1, Rational(-1), 128), rstar::PoleError);
  CHECK_THROWS_AS(rstar::coeffs_table(rstar::SeriesFamily::Eps, 0, 128), rstar::DomainError);
}

TEST_CASE("radius and zero tables") {
  const auto phi = rstar::radius_table(rstar::RadiusFamily::Phi, Rational(10), 6, false, 128);
  CHECK(phi.rows.at(0).at(2) == "40.38656");
  const auto varphi = rstar::radius_table(rstar::RadiusFamily::Varphi, Rational(8), 2, false, 128);
  CHECK(varphi.rows.at(0).at(2) == "4.138671875");

  const auto zeros = rstar::zeros_table(Rational(0), 1, 128);
  const std::string z = zeros.rows.at(0).at(1).get<std::string>();
  CHECK(z.rfind("2.40482555769577", 0) == 0);
}

TEST_CASE("nu labels") {
  CHECK(rstar::nu_label(Rational(10)) == "10");
  CHECK(rstar::nu_label(Rational(3, 2)) == "1.5");
  CHECK(rstar::nu_label(Rational(1, 8)) == "0.125");
  CHECK(rstar::nu_label(Rational(1, 3)) == "1/3");
}

TEST_CASE("least squares slope") {
  const std::vector<double> x{0, 1, 2, 3};
  const std::vector<double> y{1, 3, 5, 7};
  CHECK(rstar::least_squares_slope(x, y) == doctest::Approx(2.0));
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-5, 5);
  for (int trial = 0; trial < 50; ++trial) {
    const double a = u(rng), b = u(rng);
    std::vector<double> xs, ys;
    for (int i = 0; i < 6; ++i) {
      xs.push_back(u(rng));
      ys.push_back(a * xs.back() + b);
    }
    CHECK(rstar::least_squares_slope(xs, ys) == doctest::Approx(a).epsilon(1e-9));
  }
  const std::vector<double> one{1.0};
  CHECK(std::isnan(rstar::least_squares_slope(one, one)));
}

TEST_CASE("phi verification slopes") {
  const auto& r = phi_report();
  CHECK(r.exit_code == 0);
  REQUIRE(r.rows.size() == 16);
  REQUIRE(r.slopes.size() == 4);
  for (const auto& s : r.slopes) {
    CHECK(s.theory == -static_cast<double>(s.order + 1));
    CHECK(s.pass);
    CHECK(s.slope <= s.theory + rstar::kSlopeTolerance);
  }
  // eps_3 = 0, so order 2 is informational and steeper than theory.
  CHECK(r.slopes[1].order == 2);
  CHECK(r.slopes[1].next_coefficient_vanishes);
  CHECK(r.slopes[1].slope < -3.0);
  CHECK_FALSE(r.slopes[0].next_coefficient_vanishes);
  CHECK(std::fabs(r.slopes[0].slope + 2.0) < 0.5);
}

TEST_CASE("varphi-squared verification at order 4") {
  rstar::ReportConfig config;
  config.family = rstar::RadiusFamily::VarphiSq;
  config.orders = {4};
  const auto r = rstar::run_verification(config);
  REQUIRE(r.slopes.size() == 1);
  CHECK(std::fabs(r.slopes[0].slope + 5.0) < 0.5);
  CHECK(r.exit_code == 0);
}

TEST_CASE("rows are self-consistent") {
  const auto& r = phi_report();
  for (std::size_t i = 1; i < r.rows.size(); ++i) {
    const auto& a = r.rows[i - 1];
    const auto& b = r.rows[i];
    const auto na = Rational::parse(a.nu), nb = Rational::parse(b.nu);
    CHECK((na < nb || (na == nb && a.order < b.order)));
  }
  for (const auto& row : r.rows) {
    CHECK_FALSE(row.failed);
    // abs_error recomputed from the printed asymptotic and numeric strings.
    const long prec = 128;
    const rstar::HPReal asym = rstar::HPReal::parse(row.asymptotic, 2 * prec);
    const rstar::HPReal num = rstar::HPReal::parse(row.numeric, 2 * prec);
    const rstar::HPReal err = rstar::HPReal::parse(row.abs_error, 2 * prec);
    const rstar::HPReal diff = rstar::abs(asym - num);
    CHECK(rstar::abs(diff - err) < num * rstar::pow2(-120, 2 * prec));
    // scaled_error = abs_error * nu^{N+1} / (4 nu)
    const double nu = Rational::parse(row.nu).to_double();
    const double scaled = err.to_double() * std::pow(nu, static_cast<double>(row.order + 1)) / (4 * nu);
    CHECK(std::stod(row.scaled_error) == doctest::Approx(scaled).epsilon(1e-12));
  }
}

TEST_CASE("scaled error approaches the next nonzero coefficient") {
  // At nu = 80 the order-1 error is dominated by eps_2 = 1, order 4 by eps_5 = 2.
  const auto& r = phi_report();
  for (const auto& row : r.rows) {
    if (row.nu != "80") continue;
    if (row.order == 1) CHECK(std::fabs(std::stod(row.scaled_error) - 1.0) < 0.05);
    if (row.order == 4) CHECK(std::fabs(std::stod(row.scaled_error) - 2.0) < 1.0);
  }
}

TEST_CASE("json and csv carry identical strings") {
  const auto& r = phi_report();
  const Json j = Json::parse(rstar::render(r, OutputFormat::Json));
  const auto lines = split_lines(rstar::render(r, OutputFormat::Csv));
  REQUIRE(lines.size() == r.rows.size() + 1);
  CHECK(lines[0] == "nu,order,asymptotic,numeric,abs_error,scaled_error");
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    const auto f = split_fields(lines[i + 1]);
    const Json& row = j["rows"][i];
    CHECK(f[0] == row["nu"].get<std::string>());
    CHECK(f[1] == std::to_string(row["order"].get<int>()));
    CHECK(f[2] == row["asymptotic"].get<std::string>());
    CHECK(f[3] == row["numeric"].get<std::string>());
    CHECK(f[4] == row["abs_error"].get<std::string>());
    CHECK(f[5] == row["scaled_error"].get<std::string>());
  }
  CHECK(j["meta"]["family"] == "phi");
  CHECK(j["meta"]["precision_bits"] == 128);
  CHECK(j["meta"]["grid"].size() == 4);
  CHECK(j["slopes"].size() == 4);
  CHECK(j["slopes"][1]["informational"] == true);
}

TEST_CASE("verification output is deterministic") {
  const std::string first = rstar::render(phi_report(), OutputFormat::Json);
  const std::string second = rstar::render(rstar::run_verification(rstar::ReportConfig{}), OutputFormat::Json);
  CHECK(first == second);
}

TEST_CASE("grid and orders are normalised") {
  rstar::ReportConfig config;
  config.nu_grid = {Rational(40), Rational(10), Rational(20), Rational(10)};
  config.orders = {2, 1, 2};
  const auto r = rstar::run_verification(config);
  CHECK(r.rows.size() == 6);
  CHECK(r.rows.front().nu == "10");
  CHECK(r.rows.front().order == 1);
  CHECK(r.slopes.size() == 2);
}

TEST_CASE("report config") {
  rstar::ReportConfig config;
  CHECK_NOTHROW(config.validate());
  config.nu_grid.clear();
  CHECK_THROWS_AS(config.validate(), rstar::DomainError);
  config = {};
  config.nu_grid.push_back(Rational(0));
  CHECK_THROWS_AS(config.validate(), rstar::DomainError);
  config = {};
  config.precision_bits = 40;
  CHECK_THROWS_AS(config.validate(), rstar::DomainError);
  config = {};
  config.orders.clear();
  CHECK_THROWS_AS(config.validate(), rstar::DomainError);

  const auto parsed = rstar::ReportConfig::from_json(Json::parse(
      R"({"family": "varphi_sq", "nu_grid": ["5/2", 10, "20.5"], "orders": [3], "precision_bits": 200,
          "format": "csv", "output_path": "r.csv"})"));
  CHECK(parsed.family == rstar::RadiusFamily::VarphiSq);
  REQUIRE(parsed.nu_grid.size() == 3);
  CHECK(parsed.nu_grid[0] == Rational(5, 2));
  CHECK(parsed.nu_grid[2] == Rational(41, 2));
  CHECK(parsed.orders == std::vector<std::size_t>{3});
  CHECK(parsed.precision_bits == 200);
  CHECK(parsed.format == OutputFormat::Csv);
  CHECK(parsed.output_path == "r.csv");

  const auto defaults = rstar::ReportConfig::from_json(Json::object());
  CHECK(defaults.orders == std::vector<std::size_t>{1, 2, 4, 6});
  CHECK_THROWS_AS(rstar::ReportConfig::from_json(Json::parse(R"({"family": "zeta"})")), rstar::DomainError);
  CHECK_THROWS_AS(rstar::ReportConfig::from_json(Json::parse(R"({"orders": "many"})")), rstar::DomainError);
}
