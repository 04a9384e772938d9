#pragma once

// Boundary (cusp) part of the Green function on X(1) x X(1): the integrals
// B and I, the functions xi-check and Xi-check, the corrected zeroth mode,
// and the estimates that make its integral finite.

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "kudla/types.hpp"

namespace kudla::boundary {

struct BoundaryParams {
  double v = 1.0;
  double s_ratio = 1.0;
  std::int64_t b = 0;
  std::int64_t c = 0;

  BoundaryParams() = default;
  BoundaryParams(double v_, double s_, std::int64_t b_, std::int64_t c_) : v(v_), s_ratio(s_), b(b_), c(c_) {
    if (!(v_ > 0.0) || !(s_ > 0.0))
      throw std::domain_error("BoundaryParams: v and s_ratio must be positive");
  }

  /// beta = pi v (b/s + c s)^2
  [[nodiscard]] double beta() const;
};

/// B(v, s; b, c) = int_1^inf e^{-beta r} r^{-3/2} dr by adaptive quadrature.
double b_integral(const BoundaryParams& p, const Precision& prec = {});

/// Closed form 2 e^{-beta} - 2 sqrt(pi beta) erfc(sqrt beta), evaluated for
/// beta > 1 as the generalized exponential integral E_{3/2}(beta).
double b_integral_closed(const BoundaryParams& p);

/// I(v, s; b, c) = 4 pi sqrt(v) min(|b/s|, |c s|) if -bc > 0, else 0.
double i_term(const BoundaryParams& p);

/// (t / sqrt v) (B - I) at the point z.
double xi_check(double v, const SurfacePoint& z, std::int64_t b, std::int64_t c);

/// The 2 tau(|m|) pairs (b, c) with -bc = m.
std::vector<std::pair<std::int64_t, std::int64_t>> boundary_pairs(std::int64_t m);

/// (1/2) sum_{-bc = m} xi_check, m != 0.
double xi_check_sum(double v, const SurfacePoint& z, std::int64_t m);

/// (1/2) sum_{bc = 0} xi_check(v, z; b, c), summed directly over the two axes.
double xi_check_zero(double v, const SurfacePoint& z);

/// The same quantity after Poisson summation in b and c; equals
/// xi_check_zero_plus + t (s + 1/s) / (2v).
double xi_check_zero_theta(double v, const SurfacePoint& z);

/// Corrected zeroth mode: one half of
///   -2t/sqrt v + t(s + 1/s)(2/pi) zeta(2) - (2t/pi)((1/s) sum_b e^{-pi s^2 b^2/v}/b^2 + s sum_c e^{-pi c^2/(s^2 v)}/c^2).
double xi_check_zero_plus(double v, const SurfacePoint& z);

/// sum_{-bc = m} int_0^inf min(|b/s|, |c s|) ds/s by quadrature, m > 0.
double lemma_min_integral(std::int64_t m, double v);

struct BoundPair {
  double lhs = 0.0;
  double rhs = 0.0;
};

/// lhs = sum_{-bc = m} int_0^inf B(v, s; b, c) ds/s by quadrature, rhs the bound
///   m > 0: 2 tau(m) / (2 sqrt(m v))
///   m < 0: 2 tau(|m|) (e^{-4 pi |m| v}/(2 sqrt(|m| v)) + 2 pi sqrt(|m| v) Ei(-4 pi |m| v)).
BoundPair lemma_b_bounds(std::int64_t m, double v);

struct CuspStep {
  double T = 0.0;
  double i0 = 0.0;          // I_0(T), grows like log(T/K2)/K1
  double difference = 0.0;  // I_0(T)/b^2 - I_b(T), converges as T grows
  double i_prime = 0.0;     // I'(T) = int int t dy1 dy2/(y1 y2)^2, converges
};

/// Cancellation of the log T growth between the b = 0 and b = 1 terms over the
/// cusp region y1 > K1, K2 < y2 < T.
std::vector<CuspStep> cusp_cancellation_check(double v, double K1, double K2,
                                              const std::vector<double>& T_list);

/// Smooth cutoff in t = sqrt(y1 y2): 0 for t <= t0, 1 for t >= t1, C^inf in between.
struct Rho {
  double t0 = 1.5;
  double t1 = 2.0;

  [[nodiscard]] double operator()(double t) const;
};

/// int rho(t) Xi-check^+(v, z, m) dmu over the fundamental domain squared, where
/// the m = 0 mode uses the corrected function. Only finiteness is claimed.
double rho_boundary_integral(double v, std::int64_t m, const Rho& rho = {},
                             const Precision& prec = {});

}  // namespace kudla::boundary
