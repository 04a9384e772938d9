// kudla: coefficient tables, identity verification and the self-test suite.
//
// Exit codes: 0 success, 1 verification failure or I/O error, 2 usage error.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kudla/eisenstein.hpp"
#include "kudla/identity.hpp"
#include "kudla/report.hpp"
#include "kudla/specfun.hpp"
#include "selftest.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct RunConfig {
  kudla::Precision precision;
  kudla::QuadratureSpec quad;
  std::string format = "csv";
  std::string out;  // empty: standard output
};

int emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return std::cout.good() ? kExitOk : kExitFailure;
  }
  std::ofstream file(cfg.out, std::ios::binary);
  if (!file) {
    std::cerr << "kudla: cannot open '" << cfg.out << "' for writing\n";
    return kExitFailure;
  }
  file << text;
  if (!file.good()) {
    std::cerr << "kudla: failed writing '" << cfg.out << "'\n";
    return kExitFailure;
  }
  return kExitOk;
}

int cmd_coeffs(double v, std::int64_t m_max, const RunConfig& cfg) {
  const auto table = kudla::eisenstein::CoefficientTable::build(v, m_max);
  if (cfg.format == "json")
    return emit(cfg, kudla::report::coefficients_json(table, cfg.precision).dump(2) + "\n");
  return emit(cfg, kudla::report::coefficients_csv(table, cfg.precision));
}

bool row_passes(const kudla::identity::IdentityReport& r, double tol) {
  if (r.method == kudla::green::Method::closed) return r.rel_residual < tol;
  // numeric routes: the residual has to sit inside the Green error bar
  const double allowed =
      kudla::specfun::constants().c_vol * r.green_error.value_or(0.0) + tol * std::abs(r.rhs);
  return r.abs_residual <= allowed;
}

int cmd_verify(std::vector<std::int64_t> ms, std::vector<double> vs, kudla::green::Method method,
               const RunConfig& cfg) {
  std::sort(ms.begin(), ms.end());
  std::sort(vs.begin(), vs.end());
  std::vector<kudla::identity::IdentityReport> reports;
  bool ok = true;
  for (auto m : ms) {
    for (auto v : vs) {
      reports.push_back(kudla::identity::verify_main_identity(m, v, method, cfg.quad, cfg.precision));
      ok = ok && row_passes(reports.back(), cfg.quad.tol);
    }
  }
  std::string text;
  if (cfg.format == "json") {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : reports) rows.push_back(kudla::report::identity_json(r));
    nlohmann::json doc = {{"precision", kudla::report::precision_json(cfg.precision)},
                          {"spec", kudla::report::spec_json(cfg.quad)},
                          {"passed", ok},
                          {"reports", rows}};
    text = doc.dump(2) + "\n";
  } else {
    std::ostringstream os;
    os << kudla::report::kIdentityCsvHeader << '\n';
    for (const auto& r : reports) os << kudla::report::identity_csv_row(r) << '\n';
    os << "# precision working_digits=" << cfg.precision.working_digits
       << " arithmetic=binary64 method=" << kudla::green::to_string(method)
       << " tol=" << kudla::report::format_double(cfg.quad.tol);
    if (method == kudla::green::Method::mc)
      os << " samples=" << cfg.quad.mc_samples << " seed=" << cfg.quad.seed;
    if (method == kudla::green::Method::reduced)
      os << " r_max=" << kudla::report::format_double(cfg.quad.r_max);
    os << '\n';
    text = os.str();
  }
  const int written = emit(cfg, text);
  if (written != kExitOk) return written;
  return ok ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Eisenstein coefficients, Green integrals and the height identity for T(m)"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::optional<int> digits;
  try {
    cfg.precision = kudla::Precision::from_environment();
  } catch (const kudla::ConfigurationError& e) {
    std::cerr << "kudla: " << e.what() << '\n';
    return kExitUsage;
  }

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--precision", digits, "working digits (default 30, or KUDLA_PRECISION)");
    sub->add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    sub->add_option("--out", cfg.out, "output file (default: standard output)");
  };

  double v = 1.0;
  std::int64_t m_max = 4;
  auto* coeffs = app.add_subcommand("coeffs", "tabulate a, a', A, A' for |m| <= mmax");
  coeffs->add_option("--v", v, "imaginary part of tau")->check(CLI::PositiveNumber)->capture_default_str();
  coeffs->add_option("--mmax", m_max, "largest |m|")->check(CLI::Range(std::int64_t{1}, std::int64_t{1} << 20))
      ->capture_default_str();
  add_common(coeffs);

  std::vector<std::int64_t> ms;
  std::vector<double> vs{1.0};
  std::string method_name = "closed";
  auto* verify = app.add_subcommand("verify", "check ht(T(m)) + c I_m(v) = A'(v,1,m)");
  verify->add_option("--m", ms, "comma-separated nonzero m")->delimiter(',')->required();
  verify->add_option("--v", vs, "comma-separated v > 0")->delimiter(',')->capture_default_str();
  verify->add_option("--method", method_name, "Green integral route")
      ->check(CLI::IsMember({"closed", "reduced", "mc"}))
      ->capture_default_str();
  verify->add_option("--samples", cfg.quad.mc_samples, "Monte Carlo samples")->capture_default_str();
  verify->add_option("--seed", cfg.quad.seed, "Monte Carlo seed")->capture_default_str();
  verify->add_option("--radius", cfg.quad.radius, "lattice box radius")->capture_default_str();
  verify->add_option("--tol", cfg.quad.tol, "relative tolerance for a passing row")->capture_default_str();
  add_common(verify);

  bool quick = false;
  bool json = false;
  auto* selftest = app.add_subcommand("selftest", "run the invariant suite");
  selftest->add_flag("--quick", quick, "skip the Monte Carlo checks");
  selftest->add_flag("--json", json, "machine-readable result list");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (digits) cfg.precision.working_digits = *digits;
    cfg.precision.validate();
    cfg.quad.validate();

    if (coeffs->parsed()) return cmd_coeffs(v, m_max, cfg);

    if (verify->parsed()) {
      if (std::find(ms.begin(), ms.end(), 0) != ms.end()) {
        std::cerr << "kudla: m = 0 is not accepted; the constant term's geometric side is not "
                     "computed (the identity only predicts it, see `coeffs` row m=0)\n";
        return kExitUsage;
      }
      for (double x : vs) {
        if (!(x > 0.0)) {
          std::cerr << "kudla: every --v must be positive\n";
          return kExitUsage;
        }
      }
      const auto method = kudla::green::parse_method(method_name);
      if (method == kudla::green::Method::mc && cfg.quad.mc_samples < 10000) {
        std::cerr << "kudla: --samples must be at least 10000 for the Monte Carlo route\n";
        return kExitUsage;
      }
      return cmd_verify(ms, vs, method, cfg);
    }

    if (selftest->parsed()) return kudla_cli::run_selftest(quick, json, std::cout) ? kExitOk : kExitFailure;
  } catch (const kudla::ConfigurationError& e) {
    std::cerr << "kudla: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "kudla: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}
