#include "selftest.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include <json.hpp>

#include "kudla/arith.hpp"
#include "kudla/boundary.hpp"
#include "kudla/eisenstein.hpp"
#include "kudla/green.hpp"
#include "kudla/identity.hpp"
#include "kudla/quadrature.hpp"
#include "kudla/report.hpp"
#include "kudla/specfun.hpp"

namespace kudla_cli {

namespace {

using namespace kudla;
constexpr double pi = std::numbers::pi;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Check {
  std::string module;
  std::string name;
  std::function<Outcome()> run;
  bool slow = false;
};

double rel(double x, double y) { return std::abs(x - y) / std::max(std::abs(y), 1e-300); }

Outcome within(double worst, double tol) {
  return {worst < tol, "worst " + report::format_double(worst) + " vs " + report::format_double(tol)};
}

std::vector<Check> build_checks() {
  std::vector<Check> checks;

  checks.push_back({"specfun", "zeta'(-1) matches -0.1654211437", [] {
                      return within(std::abs(specfun::constants().zeta_prime_neg1 + 0.16542114370045092), 1e-10);
                    }});
  checks.push_back({"specfun", "E1 matches its defining integral", [] {
                      double worst = 0.0;
                      for (double x : {0.01, 0.5, 1.0, 3.0, 20.0}) {
                        auto q = quad::integrate_to_infinity([x](double t) { return std::exp(-x * t) / t; }, 1.0);
                        worst = std::max(worst, rel(specfun::exp_integral_e1(x), q.value));
                      }
                      return within(worst, 1e-10);
                    }});

  checks.push_back({"arith", "sigma(m) = sum_{n^2|m} psi(m/n^2), m <= 10^4", [] {
                      int bad = 0;
                      for (std::int64_t m = 1; m <= 10000; ++m) {
                        std::int64_t sum = 0;
                        for (std::int64_t n = 1; n * n <= m; ++n)
                          if (m % (n * n) == 0) sum += arith::psi_index(m / (n * n));
                        if (sum != arith::sigma(m)) ++bad;
                      }
                      return Outcome{bad == 0, std::to_string(bad) + " mismatches"};
                    }});
  checks.push_back({"arith", "coset count = sigma(m), m <= 200", [] {
                      int bad = 0;
                      for (std::int64_t m = 1; m <= 200; ++m)
                        if (static_cast<std::int64_t>(arith::enumerate_cosets(m).size()) != arith::sigma(m)) ++bad;
                      return Outcome{bad == 0, std::to_string(bad) + " mismatches"};
                    }});

  checks.push_back({"eisenstein", "lattice sum = Fourier series at s = 1.5", [] {
                      double worst = 0.0;
                      for (auto [u, v] : {std::pair{0.0, 1.0}, {0.1, 0.9}, {0.25, 1.5}, {-0.3, 1.2}, {0.5, 2.0}}) {
                        const TauPoint tau(u, v);
                        worst = std::max(worst, rel(eisenstein::e_star_lattice(tau, {1.5}, 500),
                                                    eisenstein::e_star_fourier(tau, {1.5}, 40)));
                      }
                      return within(worst, 1e-6);
                    }});
  checks.push_back({"eisenstein", "E*(tau, s) = E*(tau, 1 - s)", [] {
                      double worst = 0.0;
                      for (double s : {0.3, 0.45}) {
                        const TauPoint tau(0.2, 1.1);
                        worst = std::max(worst, rel(eisenstein::e_star_fourier(tau, {s}, 40),
                                                    eisenstein::e_star_fourier(tau, {1.0 - s}, 40)));
                      }
                      return within(worst, 1e-9);
                    }});
  checks.push_back({"eisenstein", "constant term at s = 1", [] {
                      double worst = 0.0;
                      for (double v : {0.5, 1.0, 2.0}) {
                        const auto ct = eisenstein::constant_term(v);
                        worst = std::max(worst, rel(ct.c0_check, eisenstein::c0_check(v, 1.0)));
                        const double h = 1e-4;
                        const double fd =
                            (eisenstein::c0_check(v, 1.0 + h) - eisenstein::c0_check(v, 1.0 - h)) / (2.0 * h);
                        worst = std::max(worst, 1e-7 * rel(ct.c0_check_prime, fd));
                      }
                      return within(worst, 1e-12);
                    }});
  checks.push_back({"eisenstein", "coefficient table A = 12 a", [] {
                      const bool ok = eisenstein::CoefficientTable::build(1.0, 12).consistent(1e-12);
                      return Outcome{ok, ok ? "consistent" : "inconsistent"};
                    }});

  checks.push_back({"green", "reduced integral = 1/(vm)", [] {
                      double worst = 0.0;
                      for (std::int64_t m : {1, 2, 5})
                        for (double v : {0.5, 1.0, 2.0})
                          worst = std::max(worst, rel(green::reduced_integral_quadrature(v, m, {}).value,
                                                      1.0 / (v * static_cast<double>(m))));
                      return within(worst, 1e-4);
                    }});
  checks.push_back({"green", "reduced integral, m < 0, assembles to the closed form", [] {
                      double worst = 0.0;
                      for (std::int64_t m : {-1, -2, -5}) {
                        const double r = green::reduced_integral_quadrature(1.0, m, {}).value;
                        worst = std::max(worst, rel(green::assemble_from_reduced(m, r), green::green_integral_closed(1.0, m)));
                      }
                      return within(worst, 1e-4);
                    }});
  checks.push_back({"green", "Xi invariant under z1 -> z1 + 1, -1/z1", [] {
                      const SurfacePoint z({0.1, 1.3}, {-0.2, 0.9});
                      const std::complex<double> z1 = z.z1();
                      QuadratureSpec spec;
                      spec.radius = 60;
                      const double base = green::big_xi(1.0, z, 2, spec).value;
                      const double shifted = green::big_xi(1.0, SurfacePoint(z1 + 1.0, z.z2()), 2, spec).value;
                      const double inverted = green::big_xi(1.0, SurfacePoint(-1.0 / z1, z.z2()), 2, spec).value;
                      return within(std::max(std::abs(shifted - base), std::abs(inverted - base)), 1e-3);
                    }});
  checks.push_back({"green", "Monte Carlo I_1(1) within 3 standard errors", [] {
                      QuadratureSpec spec;
                      const auto r = green::green_integral_monte_carlo(1.0, 1, spec);
                      const double dev = std::abs(r.estimate - pi / 6.0);
                      return Outcome{dev < 3.0 * r.std_error && dev < 0.1 * pi / 6.0,
                                     "estimate " + report::format_double(r.estimate) + " +- " +
                                         report::format_double(r.std_error)};
                    },
                    true});

  checks.push_back({"boundary", "sum int min(|b/s|,|cs|) ds/s = 4 tau(m) sqrt m, m <= 50", [] {
                      double worst = 0.0;
                      for (std::int64_t m = 1; m <= 50; ++m) {
                        const double expect = 4.0 * static_cast<double>(arith::tau(m)) * std::sqrt(static_cast<double>(m));
                        worst = std::max(worst, rel(boundary::lemma_min_integral(m, 1.0), expect));
                      }
                      return within(worst, 1e-8);
                    }});
  checks.push_back({"boundary", "B-integral bounds hold", [] {
                      int bad = 0;
                      for (std::int64_t m = -10; m <= 10; ++m) {
                        if (m == 0) continue;
                        for (double v : {0.25, 1.0, 4.0}) {
                          const auto b = boundary::lemma_b_bounds(m, v);
                          if (!(b.lhs > 0.0 && b.lhs <= b.rhs * (1.0 + 1e-9))) ++bad;
                        }
                      }
                      return Outcome{bad == 0, std::to_string(bad) + " violations"};
                    }});
  checks.push_back({"boundary", "log T cancellation converges", [] {
                      const auto steps = boundary::cusp_cancellation_check(1.0, 2.0, 2.0, {10.0, 100.0, 1000.0, 10000.0});
                      bool ok = true;
                      for (std::size_t i = 2; i < steps.size(); ++i) {
                        const double prev = std::abs(steps[i - 1].difference - steps[i - 2].difference);
                        const double cur = std::abs(steps[i].difference - steps[i - 1].difference);
                        ok = ok && cur <= 0.5 * prev;
                      }
                      return Outcome{ok, ok ? "differences halve" : "differences do not halve"};
                    }});
  checks.push_back({"boundary", "B closed form = quadrature", [] {
                      double worst = 0.0;
                      for (double s : {0.3, 1.0, 1.7})
                        for (int b = -3; b <= 3; ++b)
                          for (int c = -3; c <= 3; ++c) {
                            const boundary::BoundaryParams p(1.0, s, b, c);
                            worst = std::max(worst, std::abs(boundary::b_integral(p) - boundary::b_integral_closed(p)));
                          }
                      return within(worst, 1e-10);
                    }});

  checks.push_back({"identity", "ht(T(m)) + c I_m(v) = A'(v,1,m), closed", [] {
                      double worst = 0.0;
                      for (std::int64_t m = -12; m <= 12; ++m) {
                        if (m == 0) continue;
                        for (double v : {0.25, 0.5, 1.0, 2.0, 4.0})
                          worst = std::max(worst, identity::verify_main_identity(m, v, green::Method::closed).rel_residual);
                      }
                      return within(worst, 1e-10);
                    }});
  checks.push_back({"identity", "(18/pi^2)(pi/3)^2 = 2", [] {
                      return within(std::abs(identity::volume_constant_check() - 2.0), 1e-14);
                    }});
  checks.push_back({"identity", "predicted m = 0 term = A'(v,1,0)", [] {
                      double worst = 0.0;
                      for (double v : {0.5, 1.0, 2.0})
                        worst = std::max(worst, rel(identity::predicted_constant_term(v),
                                                    eisenstein::coeff_A_and_A_prime(v, 0).A_prime));
                      return within(worst, 1e-10);
                    }});
  return checks;
}

}  // namespace

bool run_selftest(bool quick, bool json, std::ostream& os) {
  bool all = true;
  nlohmann::json results = nlohmann::json::array();
  for (const auto& check : build_checks()) {
    if (quick && check.slow) continue;
    Outcome out;
    try {
      out = check.run();
    } catch (const std::exception& e) {
      out = {false, std::string("threw: ") + e.what()};
    }
    all = all && out.pass;
    if (json) {
      results.push_back({{"module", check.module}, {"check", check.name}, {"pass", out.pass}, {"detail", out.detail}});
    } else {
      os << (out.pass ? "PASS " : "FAIL ") << check.module << ": " << check.name << " (" << out.detail << ")\n";
    }
  }
  if (json) {
    os << nlohmann::json{{"passed", all}, {"results", results}}.dump(2) << '\n';
  } else {
    os << (all ? "selftest: all checks passed\n" : "selftest: FAILURES\n");
  }
  return all;
}

}  // namespace kudla_cli
