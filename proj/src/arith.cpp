#include "kudla/arith.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace kudla::arith {

namespace {

std::int64_t checked_abs(std::int64_t m, const char* what) {
  if (m == 0) throw std::domain_error(std::string(what) + ": m must be nonzero");
  return m < 0 ? -m : m;
}

std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
  std::vector<std::pair<std::int64_t, int>> out;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

}  // namespace

DivisorProfile divisor_profile(std::int64_t m) {
  const std::int64_t n = checked_abs(m, "divisor_profile");
  DivisorProfile prof;
  prof.m = m;
  prof.factorization = factorize(n);
  prof.divisors = {1};
  prof.psi_index = n;
  for (const auto& [p, e] : prof.factorization) {
    const std::size_t count = prof.divisors.size();
    std::int64_t pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < count; ++i) prof.divisors.push_back(prof.divisors[i] * pk);
    }
    prof.psi_index = prof.psi_index / p * (p + 1);
  }
  std::sort(prof.divisors.begin(), prof.divisors.end());
  prof.tau = static_cast<std::int64_t>(prof.divisors.size());
  prof.sigma = 0;
  for (auto d : prof.divisors) prof.sigma += d;
  return prof;
}

std::int64_t sigma(std::int64_t m) { return divisor_profile(m).sigma; }
std::int64_t tau(std::int64_t m) { return divisor_profile(m).tau; }
std::int64_t psi_index(std::int64_t m) { return divisor_profile(m).psi_index; }

double sigma_star(double nu, std::int64_t n) {
  const auto prof = divisor_profile(n);
  const double abs_n = static_cast<double>(prof.divisors.back());
  double sum = 0.0;
  for (auto d : prof.divisors) sum += std::pow(static_cast<double>(d), -2.0 * nu);
  return std::pow(abs_n, nu) * sum;
}

double sum_d_log_d(std::int64_t m) {
  double sum = 0.0;
  for (auto d : divisor_profile(m).divisors) sum += static_cast<double>(d) * std::log(static_cast<double>(d));
  return sum;
}

double sigma_star_prime_half(std::int64_t m) {
  if (m <= 0) throw std::domain_error("sigma_star_prime_half: m must be positive");
  const auto prof = divisor_profile(m);
  double dlogd = 0.0;
  for (auto d : prof.divisors) dlogd += static_cast<double>(d) * std::log(static_cast<double>(d));
  const double md = static_cast<double>(m);
  return (2.0 * dlogd - static_cast<double>(prof.sigma) * std::log(md)) / std::sqrt(md);
}

std::vector<LatticeMatrix> enumerate_cosets(std::int64_t m) {
  const auto prof = divisor_profile(m);
  std::vector<LatticeMatrix> out;
  out.reserve(static_cast<std::size_t>(prof.sigma));
  for (auto d : prof.divisors) {
    const std::int64_t a = m / d;
    for (std::int64_t b = 0; b < d; ++b) out.push_back(make_matrix(a, b, 0, d));
  }
  return out;
}

std::vector<LatticeMatrix> enumerate_lattice(std::int64_t m, std::int64_t radius) {
  std::vector<LatticeMatrix> out;
  for_each_lattice_matrix(m, radius, [&](const LatticeMatrix& mat) { out.push_back(mat); });
  return out;
}

}  // namespace kudla::arith
