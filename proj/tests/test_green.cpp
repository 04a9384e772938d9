#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "kudla/arith.hpp"
#include "kudla/green.hpp"
#include "kudla/quadrature.hpp"
#include "kudla/specfun.hpp"

using namespace kudla;
using namespace kudla::green;
using doctest::Approx;

namespace {

constexpr double pi = std::numbers::pi;

double e1_by_quadrature(double x) {
  return quad::integrate_to_infinity([x](double u) { return std::exp(-x * u) / u; }, 1.0).value;
}

// sum of xi over every det-m matrix in the box, written without the library enumeration
double brute_box_sum(double v, const SurfacePoint& z, std::int64_t m, int radius) {
  double sum = 0.0;
  for (int a = -radius; a <= radius; ++a)
    for (int b = -radius; b <= radius; ++b)
      for (int c = -radius; c <= radius; ++c)
        for (int d = -radius; d <= radius; ++d) {
          if (static_cast<std::int64_t>(a) * d - static_cast<std::int64_t>(b) * c != m) continue;
          const std::complex<double> w = static_cast<double>(a) + static_cast<double>(c) * z.z1() +
                                         static_cast<double>(b) * z.z2() +
                                         static_cast<double>(d) * z.z1() * z.z2();
          sum += e1_by_quadrature(2.0 * pi * v * std::norm(w) / (2.0 * z.y1 * z.y2));
        }
  return sum;
}

}  // namespace

TEST_CASE("majorant R on the quoted special cases") {
  const SurfacePoint ii(0.0, 1.0, 0.0, 1.0);
  for (std::int64_t m : {1, 2, 5})
    CHECK(majorant_r(ii, make_matrix(m, 0, 0, 1)) ==
          Approx(0.5 * static_cast<double>((m - 1) * (m - 1))).epsilon(1e-15));
  CHECK(majorant_r(ii, make_matrix(1, 0, 0, 1)) == 0.0);
  const SurfacePoint z(0.0, 4.0, 0.0, 1.0);
  CHECK(z.s_ratio() == 2.0);
  CHECK(majorant_r(z, make_matrix(0, 1, 1, 0)) == Approx(25.0 / 8.0).epsilon(1e-15));
  const double s = z.s_ratio();
  CHECK(majorant_r(z, make_matrix(0, 1, 1, 0)) == Approx(0.5 * std::pow(1.0 / s + s, 2)).epsilon(1e-15));
  const SurfacePoint general(0.3, 1.2, -0.4, 0.7);
  CHECK(majorant_r(general, make_matrix(2, 1, 3, 2)) >= 0.0);
}

TEST_CASE("xi kernel is E1 of 2 pi v R") {
  const SurfacePoint ii(0.0, 1.0, 0.0, 1.0);
  CHECK(xi_kernel(1.0, ii, make_matrix(2, 0, 0, 1)) == Approx(e1_by_quadrature(pi)).epsilon(1e-12));
  CHECK(xi_kernel(1.0, ii, make_matrix(2, 0, 0, 1)) == Approx(-specfun::exp_integral_ei(-pi)).epsilon(1e-14));
  // R = 1/(2 pi v) gives xi = -Ei(-1)
  const double v = 1.0 / (2.0 * pi * 0.5);
  CHECK(xi_kernel(v, ii, make_matrix(2, 0, 0, 1)) == Approx(0.21938393439552027).epsilon(1e-13));
  double previous = xi_kernel(0.1, ii, make_matrix(3, 0, 0, 1));
  for (double w : {0.2, 0.5, 1.0, 2.0}) {
    const double current = xi_kernel(w, ii, make_matrix(3, 0, 0, 1));
    CHECK(current < previous);
    previous = current;
  }
  CHECK_THROWS_AS(xi_kernel(1.0, ii, make_matrix(1, 0, 0, 1)), SingularityError);
}

TEST_CASE("big Xi: box sum matches an independent brute force") {
  const SurfacePoint z(0.1, 1.3, -0.2, 0.9);
  QuadratureSpec spec;
  spec.radius = 4;
  const double brute = brute_box_sum(1.0, z, 2, 4);
  CHECK(big_xi(1.0, z, 2, spec, XiNormalization::all_matrices).value == Approx(0.5 * brute).epsilon(1e-10));
  CHECK(big_xi(1.0, z, 2, spec).value == Approx(0.25 * brute).epsilon(1e-10));
}

TEST_CASE("big Xi near (2i, 2i), m = 1") {
  // (2i, 2i) itself lies on the diagonal, the cycle of (0 -1; 1 0)
  const SurfacePoint on(0.0, 2.0, 0.0, 2.0);
  CHECK(majorant_r(on, make_matrix(1, 0, 0, 1)) == Approx(9.0 / 8.0).epsilon(1e-15));
  CHECK(majorant_r(on, make_matrix(0, -1, 1, 0)) == 0.0);
  QuadratureSpec spec;
  spec.radius = 20;
  CHECK_THROWS_AS(big_xi(1.0, on, 1, spec), SingularityError);
  const SurfacePoint off(0.0, 2.0, 0.3, 2.0);
  const double single = xi_kernel(1.0, off, make_matrix(1, 0, 0, 1));
  CHECK(big_xi(1.0, off, 1, spec, XiNormalization::all_matrices).value > single);
}

TEST_CASE("big Xi converges under radius doubling") {
  const SurfacePoint z(0.1, 1.3, -0.2, 0.9);
  QuadratureSpec spec;
  double previous_gap = 1e300;
  double previous = 0.0;
  for (int radius : {10, 20, 40, 80}) {
    spec.radius = radius;
    const double value = big_xi(1.0, z, 2, spec).value;
    if (radius > 10) {
      const double gap = value - previous;
      CHECK(gap >= 0.0);
      CHECK(gap <= previous_gap);
      previous_gap = gap;
    }
    previous = value;
  }
  CHECK(big_xi_windowed(1.0, z, 2).value == doctest::Approx(previous).epsilon(1e-9));
}

TEST_CASE("big Xi is invariant under the generators in each factor") {
  const SurfacePoint z(0.1, 1.3, -0.2, 0.9);
  QuadratureSpec spec;
  spec.radius = 60;
  const double base = big_xi(1.0, z, 2, spec).value;
  const std::complex<double> z1 = z.z1();
  const std::complex<double> z2 = z.z2();
  CHECK(std::abs(big_xi(1.0, SurfacePoint(z1 + 1.0, z2), 2, spec).value - base) < 1e-3);
  CHECK(std::abs(big_xi(1.0, SurfacePoint(-1.0 / z1, z2), 2, spec).value - base) < 1e-3);
  CHECK(std::abs(big_xi(1.0, SurfacePoint(z1, z2 + 1.0), 2, spec).value - base) < 1e-3);
  CHECK(std::abs(big_xi(1.0, SurfacePoint(z1, -1.0 / z2), 2, spec).value - base) < 1e-3);
  CHECK(big_xi_windowed(1.0, SurfacePoint(-1.0 / z1, z2), 2).value == Approx(big_xi_windowed(1.0, z, 2).value).epsilon(1e-12));
}

TEST_CASE("big Xi reports the offending matrix on a cycle") {
  const SurfacePoint ii(0.0, 1.0, 0.0, 1.0);
  QuadratureSpec spec;
  spec.radius = 3;
  CHECK_THROWS_AS(big_xi(1.0, ii, 1, spec), SingularityError);
}

TEST_CASE("closed Green integral") {
  CHECK(green_integral_closed(1.0, 1) == Approx(pi / 6.0).epsilon(1e-15));
  CHECK(green_integral_closed(1.0, 4) == Approx(7.0 * pi / 24.0).epsilon(1e-15));
  const double x = 4.0 * pi;
  CHECK(green_integral_closed(1.0, -1) ==
        Approx((pi / 6.0) * (std::exp(-x) + x * specfun::exp_integral_ei(-x))).epsilon(1e-9));
  for (std::int64_t m = -8; m <= -1; ++m)
    for (double v : {0.05, 0.25, 1.0, 3.0}) CHECK(green_integral_closed(v, m) > 0.0);
}

TEST_CASE("reduced integral: m > 0 gives 1/(vm)") {
  CHECK(reduced_integral_quadrature(1.0, 1, {}).value == Approx(1.0).epsilon(1e-4));
  CHECK(reduced_integral_quadrature(0.5, 2, {}).value == Approx(1.0).epsilon(1e-4));
  CHECK(reduced_integral_expected(2.0, 5) == Approx(0.1).epsilon(1e-15));
}

TEST_CASE("reduced integral: m < 0 against the closed form") {
  for (std::int64_t m : {-1, -3}) {
    const auto r = reduced_integral_quadrature(1.0, m, {});
    CHECK(assemble_from_reduced(m, r.value) == Approx(green_integral_closed(1.0, m)).epsilon(1e-4));
  }
}

TEST_CASE("reduced integral throws when r_max leaves too much tail") {
  QuadratureSpec spec;
  spec.r_max = 0.5;
  CHECK_THROWS_AS(reduced_integral_quadrature(1.0, 1, spec), std::runtime_error);
}

TEST_CASE("assembly from psi over square divisors equals sigma") {
  for (std::int64_t m = 1; m <= 100; ++m) {
    double psi_sum = 0.0;
    for (std::int64_t n = 1; n * n <= m; ++n)
      if (m % (n * n) == 0) psi_sum += static_cast<double>(arith::psi_index(m / (n * n)));
    const double via_psi = 0.5 * psi_sum * (pi / 3.0) / static_cast<double>(m);
    CHECK(via_psi == Approx(green_integral_closed(1.0, m)).epsilon(1e-14));
  }
}

TEST_CASE("Monte Carlo argument checks and determinism") {
  QuadratureSpec spec;
  spec.mc_samples = 100;
  CHECK_THROWS_AS(green_integral_monte_carlo(1.0, 1, spec), ConfigurationError);
  spec.mc_samples = 20000;
  spec.seed = 11;
  const auto first = green_integral_monte_carlo(1.0, 2, spec);
  const auto second = green_integral_monte_carlo(1.0, 2, spec);
  CHECK(first.estimate == second.estimate);
  CHECK(first.std_error == second.std_error);
  CHECK(first.samples == 20000);
  CHECK(std::abs(first.estimate - green_integral_closed(1.0, 2)) < 4.0 * first.std_error);
}

TEST_CASE("Monte Carlo: counting M and -M separately doubles the integral") {
  QuadratureSpec spec;
  spec.mc_samples = 40000;
  spec.seed = 5;
  const auto full = green_integral_monte_carlo(1.0, 1, spec, XiNormalization::all_matrices);
  const auto projective = green_integral_monte_carlo(1.0, 1, spec);
  CHECK(full.estimate == Approx(2.0 * projective.estimate).epsilon(1e-12));
  CHECK(std::abs(full.estimate - 2.0 * pi / 6.0) < 4.0 * full.std_error);
}

TEST_CASE("method dispatch and names") {
  CHECK(parse_method("closed") == Method::closed);
  CHECK(parse_method("reduced") == Method::reduced);
  CHECK(parse_method("mc") == Method::mc);
  CHECK(to_string(Method::mc) == "mc");
  CHECK_THROWS_AS(parse_method("simpson"), ConfigurationError);
  const auto r = green_integral(1.0, 1, Method::reduced, {});
  CHECK(r.value == Approx(pi / 6.0).epsilon(1e-4));
  CHECK(r.error_bound >= 0.0);
  CHECK(green_integral(1.0, 1, Method::closed, {}).error_bound == 0.0);
}
