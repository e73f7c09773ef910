#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "cli.hpp"
#include "rstar/report.hpp"

using rstar::Json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = rstar::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

Json rows_of(const Run& r) {
  REQUIRE(r.code == 0);
  return Json::parse(r.out)["rows"];
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("rstar_cli_test_" + name);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("coeffs") {
  auto rows = rows_of(run({"coeffs", "--family", "eps", "--count", "6"}));
  const std::vector<std::string> eps{"0", "1", "0", "-4", "2", "44"};
  REQUIRE(rows.size() == 6);
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(rows[i]["k"] == i + 1);
    CHECK(rows[i]["exact"] == eps[i]);
  }
  rows = rows_of(run({"coeffs", "--family", "pi", "--count", "4"}));
  CHECK(rows[0]["exact"] == "1/4");
  CHECK(rows[1]["exact"] == "7/32");
  CHECK(rows[2]["exact"] == "-39/128");
  CHECK(rows[3]["exact"] == "-405/2048");
  CHECK(rows[3]["decimal"] == "-0.19775390625");
  rows = rows_of(run({"coeffs", "--family", "delta", "--count", "1"}));
  CHECK(rows[0]["exact"] == "-1");
  rows = rows_of(run({"coeffs", "--family", "rho", "--count", "2"}));
  CHECK(rows[1]["exact"] == "1/2");
}

TEST_CASE("coeffs usage errors") {
  CHECK(run({"coeffs", "--family", "zeta", "--count", "3"}).code == 2);
  CHECK(run({"coeffs", "--family", "eps", "--count", "0"}).code == 2);
  CHECK(run({"coeffs", "--family", "eps"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"--format", "xml", "coeffs", "--family", "eps", "--count", "1"}).code == 2);
  CHECK(run({"--prec", "20", "coeffs", "--family", "eps", "--count", "1"}).code == 2);
  const auto r = run({"coeffs", "--family", "zeta", "--count", "3"});
  CHECK(r.out.empty());
  CHECK_FALSE(r.err.empty());
}

TEST_CASE("help") {
  const auto r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("coeffs") != std::string::npos);
  CHECK(r.out.find("verify") != std::string::npos);
  CHECK(run({"radius", "--help"}).code == 0);
}

TEST_CASE("sigma") {
  auto rows = rows_of(run({"sigma", "--k", "2", "--m", "0"}));
  CHECK(rows[0]["exact"] == "1/16");
  rows = rows_of(run({"sigma", "--k", "1", "--nu", "1"}));
  CHECK(rows[0]["exact"] == "1/8");
  CHECK(rows[0]["bound"] == "1/4");
  CHECK(rows[0]["bound_satisfied"] == true);
  rows = rows_of(run({"sigma", "--k", "3", "--nu", "2"}));
  CHECK(rows[0]["exact"] == "1/17280");
  rows = rows_of(run({"sigma", "--k", "1", "--nu", "3/2"}));
  CHECK(rows[0]["exact"] == "1/10");
  rows = rows_of(run({"sigma", "--k", "1", "--nu", "0.5"}));
  CHECK(rows[0]["exact"] == "1/6");

  const auto pole = run({"sigma", "--k", "1", "--nu", "-1"});
  CHECK(pole.code == 3);
  CHECK(pole.err.find("pole") != std::string::npos);
  CHECK(run({"sigma", "--k", "3", "--nu", "-3"}).code == 3);
  CHECK(run({"sigma", "--k", "0", "--m", "1"}).code == 2);
  CHECK(run({"sigma", "--k", "1"}).code == 2);
  CHECK(run({"sigma", "--k", "1", "--m", "1", "--nu", "2"}).code == 2);
  CHECK(run({"sigma", "--k", "1", "--nu", "abc"}).code == 3);
}

TEST_CASE("radius") {
  auto rows = rows_of(run({"radius", "--family", "phi", "--nu", "10", "--order", "6"}));
  CHECK(rows[0]["asymptotic"] == "40.38656");
  CHECK(rows[0]["exact"] == "126208/3125");
  rows = rows_of(run({"radius", "--family", "varphi", "--nu", "8", "--order", "2"}));
  CHECK(rows[0]["asymptotic"] == "4.138671875");
  rows = rows_of(run({"radius", "--family", "phi", "--nu", "10", "--order", "2"}));
  CHECK(rows[0]["exact"] == "202/5");
  rows = rows_of(run({"radius", "--family", "varphi_sq", "--nu", "10", "--order", "4"}));
  CHECK(rows[0]["exact"] == "21089/1000");

  CHECK(run({"radius", "--family", "phi", "--nu", "0", "--order", "2"}).code == 3);
  CHECK(run({"radius", "--family", "phi", "--nu", "-3", "--order", "2"}).code == 3);
  CHECK(run({"radius", "--family", "theta", "--nu", "3", "--order", "2"}).code == 2);
}

TEST_CASE("radius with the numerical oracle") {
  const auto rows = rows_of(run({"radius", "--family", "phi", "--nu", "100", "--order", "0", "--numeric"}));
  const double numeric = std::stod(rows[0]["numeric"].get<std::string>());
  // Leading behaviour 4 nu; the ratio to 4 (nu + 1) is 1 - 1/(nu + 1) + O(nu^-2).
  CHECK(std::fabs(numeric / 400.0 - 1.0) < 1e-3);
  CHECK(std::fabs(numeric / 404.0 - 1.0) < 1.1 / 101.0);
  CHECK(rows[0]["asymptotic"] == "400");

  const auto r10 = rows_of(run({"radius", "--family", "varphi", "--nu", "10", "--order", "4", "--numeric"}));
  CHECK(std::stod(r10[0]["abs_error"].get<std::string>()) < 1e-3);
}

TEST_CASE("zeros") {
  auto rows = rows_of(run({"zeros", "--nu", "0.5", "--count", "3"}));
  REQUIRE(rows.size() == 3);
  for (int n = 1; n <= 3; ++n) {
    CHECK(std::fabs(std::stod(rows[n - 1]["zero"].get<std::string>()) - n * std::numbers::pi) < 1e-14);
  }
  CHECK(rows[0]["zero"].get<std::string>().rfind("3.14159265358979323846264338327950288", 0) == 0);
  rows = rows_of(run({"zeros", "--nu", "0", "--count", "1"}));
  CHECK(rows[0]["zero"].get<std::string>().rfind("2.40482555769577", 0) == 0);
  rows = rows_of(run({"zeros", "--nu", "10", "--count", "1"}));
  CHECK(std::stod(rows[0]["zero"].get<std::string>()) > 10.0);

  CHECK(run({"zeros", "--nu", "1", "--count", "0"}).code == 2);
  CHECK(run({"zeros", "--nu", "-1", "--count", "1"}).code == 3);
  // The series would need millions of bits: numerical failure.
  const auto huge = run({"--prec", "53", "zeros", "--nu", "100000", "--count", "1"});
  CHECK(huge.code == 4);
  CHECK(huge.err.find("numerical") != std::string::npos);
}

TEST_CASE("precision flag controls digit count") {
  const auto r53 = rows_of(run({"--prec", "53", "zeros", "--nu", "0.5", "--count", "1"}));
  const auto r256 = rows_of(run({"--prec", "256", "zeros", "--nu", "0.5", "--count", "1"}));
  CHECK(r53[0]["zero"].get<std::string>().size() < 20);
  CHECK(r256[0]["zero"].get<std::string>().size() > 70);
}

TEST_CASE("csv output") {
  const auto r = run({"--format", "csv", "coeffs", "--family", "pi", "--count", "2"});
  CHECK(r.code == 0);
  CHECK(r.out == "k,exact,decimal\r\n1,1/4,0.25\r\n2,7/32,0.21875\r\n");
}

TEST_CASE("out flag writes a file") {
  const auto path = temp_path("coeffs.json");
  std::filesystem::remove(path);
  const auto r = run({"--out", path.string(), "coeffs", "--family", "eps", "--count", "3"});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  const auto direct = run({"coeffs", "--family", "eps", "--count", "3"});
  CHECK(slurp(path) == direct.out);
  std::filesystem::remove(path);
  CHECK(run({"--out", "/nonexistent-dir/x.json", "coeffs", "--family", "eps", "--count", "1"}).code == 2);
}

TEST_CASE("verify") {
  const auto r = run({"verify", "--family", "phi", "--nu", "10,20,40,80", "--orders", "2"});
  CHECK(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["meta"]["orders"] == Json::array({2}));
  CHECK(j["slopes"][0]["informational"] == true);
  CHECK(r.err.find("order 2") != std::string::npos);

  const auto sq = run({"verify", "--family", "varphi_sq", "--nu", "10,20,40,80", "--orders", "4"});
  CHECK(sq.code == 0);
  const double slope = std::stod(Json::parse(sq.out)["slopes"][0]["slope"].get<std::string>());
  CHECK(std::fabs(slope + 5.0) < 0.5);

  // Pre-asymptotic grid: the order-6 slope misses theory by more than 0.5.
  CHECK(run({"verify", "--nu", "1,2", "--orders", "6"}).code == 5);
  CHECK(run({"verify", "--nu", "0,10"}).code == 3);
  CHECK(run({"verify", "--config", "/nonexistent/config.json"}).code == 2);
}

TEST_CASE("verify config file, with flags taking precedence") {
  const auto config = temp_path("config.json");
  const auto report = temp_path("report.csv");
  std::filesystem::remove(report);
  {
    std::ofstream out(config);
    out << R"({"family": "varphi_sq", "nu_grid": [10, 20, 40], "orders": [1, 2],
               "precision_bits": 96, "format": "csv", "output_path": ")"
        << report.generic_string() << "\"}";
  }
  auto r = run({"verify", "--config", config.string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  const std::string csv = slurp(report);
  CHECK(csv.rfind("nu,order,asymptotic,numeric,abs_error,scaled_error\r\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 7);

  r = run({"--format", "json", "verify", "--config", config.string(), "--orders", "1"});
  CHECK(r.code == 0);
  const Json j = Json::parse(slurp(report));
  CHECK(j["meta"]["family"] == "varphi_sq");
  CHECK(j["meta"]["precision_bits"] == 96);
  CHECK(j["meta"]["orders"] == Json::array({1}));
  CHECK(j["rows"].size() == 3);

  {
    std::ofstream out(config);
    out << "{not json";
  }
  CHECK(run({"verify", "--config", config.string()}).code == 2);
  std::filesystem::remove(config);
  std::filesystem::remove(report);
}

TEST_CASE("repeat invocations are byte-identical") {
  const std::vector<std::vector<std::string>> commands{
      {"coeffs", "--family", "rho", "--count", "12"},
      {"--format", "csv", "sigma", "--k", "4", "--nu", "7/3"},
      {"radius", "--family", "varphi", "--nu", "12.5", "--order", "3", "--numeric"},
      {"zeros", "--nu", "2", "--count", "4"},
      {"verify", "--nu", "10,20", "--orders", "1,4"},
  };
  for (const auto& cmd : commands) {
    const auto a = run(cmd);
    const auto b = run(cmd);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }
}
