#include <doctest.h>

#include <cmath>
#include <numeric>
#include <set>

#include "kudla/arith.hpp"

using namespace kudla;
using doctest::Approx;

namespace {

std::int64_t brute_sigma(std::int64_t n) {
  std::int64_t s = 0;
  for (std::int64_t d = 1; d <= n; ++d)
    if (n % d == 0) s += d;
  return s;
}

std::int64_t brute_psi(std::int64_t n) {
  // index of Gamma_0(n): number of points of P^1(Z/n)
  std::int64_t count = 0;
  for (std::int64_t c = 0; c < n; ++c)
    for (std::int64_t d = 0; d < n; ++d)
      if (std::gcd(std::gcd(c, d), n) == 1) ++count;
  std::int64_t units = 0;
  for (std::int64_t u = 1; u <= n; ++u)
    if (std::gcd(u, n) == 1) ++units;
  return count / units;
}

}  // namespace

TEST_CASE("divisor profile of small integers") {
  const auto p = arith::divisor_profile(12);
  CHECK(p.divisors == std::vector<std::int64_t>{1, 2, 3, 4, 6, 12});
  CHECK(p.sigma == 28);
  CHECK(p.tau == 6);
  CHECK(p.psi_index == 24);
  CHECK(arith::divisor_profile(-6).sigma == 12);
  CHECK(arith::psi_index(6) == 12);
  CHECK_THROWS_AS(arith::divisor_profile(0), std::domain_error);
}

TEST_CASE("sigma, tau and psi against brute force") {
  for (std::int64_t n = 1; n <= 120; ++n) {
    CAPTURE(n);
    CHECK(arith::sigma(n) == brute_sigma(n));
    CHECK(arith::psi_index(n) == brute_psi(n));
  }
}

TEST_CASE("sigma is the sum of psi over square divisors") {
  for (std::int64_t m = 1; m <= 2000; ++m) {
    std::int64_t sum = 0;
    for (std::int64_t n = 1; n * n <= m; ++n)
      if (m % (n * n) == 0) sum += arith::psi_index(m / (n * n));
    CHECK(sum == arith::sigma(m));
  }
}

TEST_CASE("sigma_star is symmetric in nu and reduces to sigma") {
  CHECK(arith::sigma_star(0.5, 6) == Approx(12.0 / std::sqrt(6.0)).epsilon(1e-15));
  CHECK(arith::sigma_star(0.3, 10) == Approx(arith::sigma_star(-0.3, 10)).epsilon(1e-14));
}

TEST_CASE("sigma_star_prime_half matches a finite difference") {
  for (std::int64_t m = 1; m <= 50; ++m) {
    CAPTURE(m);
    const double h = 1e-5;
    const double fd = (arith::sigma_star(0.5 + h, m) - arith::sigma_star(0.5 - h, m)) / (2.0 * h);
    CHECK(arith::sigma_star_prime_half(m) == Approx(fd).epsilon(1e-8).scale(1.0));
  }
  CHECK(arith::sigma_star_prime_half(1) == 0.0);
  CHECK_THROWS_AS(arith::sigma_star_prime_half(-2), std::domain_error);
}

TEST_CASE("coset representatives") {
  const auto cosets = arith::enumerate_cosets(4);
  CHECK(cosets.size() == 7);
  for (const auto& M : cosets) {
    CHECK(det(M) == 4);
    CHECK(M(1, 0) == 0);
    CHECK(M(0, 1) >= 0);
    CHECK(M(0, 1) < M(1, 1));
  }
  for (std::int64_t m = 1; m <= 60; ++m)
    CHECK(static_cast<std::int64_t>(arith::enumerate_cosets(m).size()) == arith::sigma(m));
}

TEST_CASE("lattice enumeration is exact on a small box") {
  // brute force over the 5^4 grid
  std::set<std::array<std::int64_t, 4>> expected;
  for (std::int64_t a = -2; a <= 2; ++a)
    for (std::int64_t b = -2; b <= 2; ++b)
      for (std::int64_t c = -2; c <= 2; ++c)
        for (std::int64_t d = -2; d <= 2; ++d)
          if (a * d - b * c == 2) expected.insert({a, b, c, d});
  const auto list = arith::enumerate_lattice(2, 2);
  std::set<std::array<std::int64_t, 4>> got;
  for (const auto& M : list) {
    CHECK(det(M) == 2);
    got.insert({M(0, 0), M(0, 1), M(1, 0), M(1, 1)});
  }
  CHECK(got.size() == list.size());
  CHECK(got == expected);
  for (const auto& M : arith::enumerate_cosets(2)) CHECK(got.count({M(0, 0), M(0, 1), M(1, 0), M(1, 1)}) == 1);
}
