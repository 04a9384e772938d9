#pragma once

// Divisor functions and the determinant-m integer matrices.

#include <cstdint>
#include <utility>
#include <vector>

#include "kudla/types.hpp"

namespace kudla::arith {

struct DivisorProfile {
  std::int64_t m = 1;
  std::vector<std::pair<std::int64_t, int>> factorization;  // of |m|
  std::vector<std::int64_t> divisors;                       // sorted, of |m|
  std::int64_t sigma = 1;                                   // sum of divisors
  std::int64_t tau = 1;                                     // number of divisors
  std::int64_t psi_index = 1;                               // |m| prod_{p | m} (1 + 1/p)
};

/// Factorization, divisors, sigma, tau and psi of |m|. Throws for m = 0.
DivisorProfile divisor_profile(std::int64_t m);

std::int64_t sigma(std::int64_t m);
std::int64_t tau(std::int64_t m);
std::int64_t psi_index(std::int64_t m);

/// sigma*_nu(n) = |n|^nu sum_{d | n} d^{-2 nu}.
double sigma_star(double nu, std::int64_t n);

/// d/dnu sigma*_nu(m) at nu = 1/2, i.e. (2 sum_{d|m} d log d - sigma(m) log m)/sqrt(m).
double sigma_star_prime_half(std::int64_t m);

/// sum_{d | m} d log d.
double sum_d_log_d(std::int64_t m);

/// Upper-triangular coset representatives (a b; 0 d), ad = m, d > 0, 0 <= b < d.
std::vector<LatticeMatrix> enumerate_cosets(std::int64_t m);

/// All integer matrices of determinant m with entries bounded by `radius` in
/// absolute value, in lexicographic (a, b, c, d) order.
std::vector<LatticeMatrix> enumerate_lattice(std::int64_t m, std::int64_t radius);

/// Visit every M in the radius box with det M = m without materialising the list.
template <class Visitor>
void for_each_lattice_matrix(std::int64_t m, std::int64_t radius, Visitor&& visit) {
  for (std::int64_t a = -radius; a <= radius; ++a) {
    for (std::int64_t b = -radius; b <= radius; ++b) {
      for (std::int64_t c = -radius; c <= radius; ++c) {
        const std::int64_t rhs = m + b * c;  // a d = m + b c
        if (a == 0) {
          if (rhs != 0) continue;
          for (std::int64_t d = -radius; d <= radius; ++d) visit(make_matrix(a, b, c, d));
        } else if (rhs % a == 0) {
          const std::int64_t d = rhs / a;
          if (d >= -radius && d <= radius) visit(make_matrix(a, b, c, d));
        }
      }
    }
  }
}

}  // namespace kudla::arith
