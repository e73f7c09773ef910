#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <optional>

#include "rstar/errors.hpp"
#include "rstar/expansions.hpp"
#include "rstar/report.hpp"

namespace rstar {

namespace {

struct GlobalOptions {
  std::string format = "json";
  long precision = kDefaultPrecision;
  std::string out_path;
};

int emit(const std::string& text, const std::string& out_path, std::ostream& out, std::ostream& err) {
  if (out_path.empty()) {
    out << text;
    return kExitOk;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) {
    err << "error: cannot open output file '" << out_path << "'\n";
    return kExitUsage;
  }
  file << text;
  return kExitOk;
}

std::vector<Rational> parse_grid(const std::vector<std::string>& items) {
  std::vector<Rational> grid;
  for (const auto& item : items) grid.push_back(Rational::parse(item));
  return grid;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Large-order expansions of Bessel starlikeness radii, with a numerical oracle", "rstar"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions global;
  app.add_option("--format", global.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_option("--prec", global.precision, "Precision in bits for real-valued output")
      ->check(CLI::Range(53L, 1L << 20))
      ->capture_default_str();
  app.add_option("--out", global.out_path, "Write results to this file instead of stdout");

  // coeffs
  std::string coeff_family;
  std::size_t coeff_count = 0;
  auto* coeffs = app.add_subcommand("coeffs", "Exact expansion coefficients");
  coeffs->add_option("--family", coeff_family, "eps | delta | rho | pi")
      ->required()
      ->check(CLI::IsMember({"eps", "delta", "rho", "pi"}));
  coeffs->add_option("--count", coeff_count, "Number of coefficients")->required()->check(CLI::PositiveNumber);

  // sigma
  unsigned sigma_k = 0;
  unsigned sigma_m = 0;
  std::string sigma_nu;
  auto* sigma = app.add_subcommand("sigma", "Laurent coefficients or exact Rayleigh sums");
  sigma->add_option("--k", sigma_k, "Rayleigh index k >= 1")->required()->check(CLI::PositiveNumber);
  auto* m_opt = sigma->add_option("--m", sigma_m, "Laurent coefficient index m >= 0");
  auto* nu_opt = sigma->add_option("--nu", sigma_nu, "Order nu (decimal or p/q) for the exact sum");
  m_opt->excludes(nu_opt);

  // radius
  std::string radius_family = "phi";
  std::string radius_nu;
  std::size_t radius_order = 0;
  bool radius_numeric = false;
  auto* radius = app.add_subcommand("radius", "Truncated expansion of a starlikeness radius");
  radius->add_option("--family", radius_family, "phi | varphi | varphi_sq")
      ->check(CLI::IsMember({"phi", "varphi", "varphi_sq"}))
      ->capture_default_str();
  radius->add_option("--nu", radius_nu, "Order nu > 0")->required();
  radius->add_option("--order", radius_order, "Truncation order N >= 0")->required();
  radius->add_flag("--numeric", radius_numeric, "Also compute the root numerically");

  // verify
  std::string verify_config;
  std::string verify_family;
  std::vector<std::string> verify_grid;
  std::vector<std::size_t> verify_orders;
  auto* verify = app.add_subcommand("verify", "Error-order regression against the numerical oracle");
  verify->add_option("--config", verify_config, "JSON config file")->check(CLI::ExistingFile);
  auto* vfam = verify->add_option("--family", verify_family, "phi | varphi | varphi_sq")
                   ->check(CLI::IsMember({"phi", "varphi", "varphi_sq"}));
  auto* vgrid = verify->add_option("--nu", verify_grid, "Grid of nu values")->delimiter(',');
  auto* vorders = verify->add_option("--orders", verify_orders, "Truncation orders")->delimiter(',');

  // zeros
  std::string zeros_nu;
  unsigned zeros_count = 0;
  auto* zeros = app.add_subcommand("zeros", "Positive zeros of J_nu");
  zeros->add_option("--nu", zeros_nu, "Order nu >= 0")->required();
  zeros->add_option("--count", zeros_count, "Number of zeros")->required()->check(CLI::PositiveNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << "run with --help for usage\n";
    return kExitUsage;
  }

  try {
    const OutputFormat format = parse_output_format(global.format);
    const long prec = global.precision;

    if (*coeffs) {
      const auto table = coeffs_table(parse_series_family(coeff_family), coeff_count, prec);
      return emit(render(table, format), global.out_path, out, err);
    }
    if (*sigma) {
      if (nu_opt->count() > 0) {
        return emit(render(sigma_sum_table(sigma_k, Rational::parse(sigma_nu), prec), format),
                    global.out_path, out, err);
      }
      if (m_opt->count() == 0) {
        err << "error: sigma needs either --m or --nu\n";
        return kExitUsage;
      }
      return emit(render(sigma_coeff_table(sigma_k, sigma_m, prec), format), global.out_path, out, err);
    }
    if (*radius) {
      const auto table = radius_table(parse_radius_family(radius_family), Rational::parse(radius_nu),
                                      radius_order, radius_numeric, prec);
      return emit(render(table, format), global.out_path, out, err);
    }
    if (*verify) {
      ReportConfig config;
      if (!verify_config.empty()) {
        std::ifstream in(verify_config);
        Json j;
        try {
          j = Json::parse(in);
        } catch (const Json::exception& e) {
          err << "error: cannot parse config '" << verify_config << "': " << e.what() << "\n";
          return kExitUsage;
        }
        config = ReportConfig::from_json(j);
      }
      // Flags win over the config file.
      if (vfam->count() > 0) config.family = parse_radius_family(verify_family);
      if (vgrid->count() > 0) config.nu_grid = parse_grid(verify_grid);
      if (vorders->count() > 0) config.orders = verify_orders;
      if (app.get_option("--prec")->count() > 0 || verify_config.empty()) config.precision_bits = prec;
      if (app.get_option("--format")->count() > 0 || verify_config.empty()) config.format = format;
      if (!global.out_path.empty()) config.output_path = global.out_path;

      const VerificationReport report = run_verification(config);
      const int written = emit(render(report, config.format), config.output_path.value_or(""), out, err);
      err << slope_summary(report);
      return written != kExitOk ? written : report.exit_code;
    }
    if (*zeros) {
      return emit(render(zeros_table(Rational::parse(zeros_nu), zeros_count, prec), format),
                  global.out_path, out, err);
    }
  } catch (const PoleError& e) {
    err << "error: pole at nu = " << e.pole() << ": " << e.what() << "\n";
    return kExitDomain;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const NumericalError& e) {
    err << "error: numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitUsage;
}

}  // namespace rstar
