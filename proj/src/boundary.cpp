#include "kudla/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "kudla/arith.hpp"
#include "kudla/quadrature.hpp"
#include "kudla/specfun.hpp"

namespace kudla::boundary {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double eps = std::numeric_limits<double>::epsilon();

quad::Options options_for(const Precision& prec) {
  return {std::max(prec.effective_rel_tol(), 1e-13), prec.abs_tol, 4000};
}

// B as a function of beta alone.
double b_of_beta(double beta) {
  if (beta == 0.0) return 2.0;
  if (beta <= 1.0) {
    const double root = std::sqrt(beta);
    return 2.0 * std::exp(-beta) - 2.0 * std::sqrt(pi) * root * std::erfc(root);
  }
  // for large beta the two terms above cancel; B = E_{3/2}(beta)
  return specfun::exp_integral_en(1.5, beta);
}

// sum_{n >= 1} e^{-a n^2} / n^2, stopped once a term drops below 1e-3 eps of the total
double theta_tail(double a) {
  double total = 0.0;
  for (int n = 1; n < 1000000; ++n) {
    const double nn = static_cast<double>(n) * n;
    const double term = std::exp(-a * nn) / nn;
    total += term;
    if (term < 1e-3 * eps * total) break;
  }
  return total;
}

// int over the real line of f, split at the point where f has a kink
template <class F>
double integrate_split(const F& f, double kink, const quad::Options& opts) {
  const auto right = quad::integrate_to_infinity(f, kink, opts);
  const auto left = quad::integrate_to_infinity([&](double x) { return f(2.0 * kink - x); }, kink, opts);
  return right.value + left.value;
}

double smooth_zero(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }

}  // namespace

double BoundaryParams::beta() const {
  const double w = static_cast<double>(b) / s_ratio + static_cast<double>(c) * s_ratio;
  return pi * v * w * w;
}

double b_integral(const BoundaryParams& p, const Precision& prec) {
  const double beta = p.beta();
  // r = 1/u^2 turns the display into 2 int_0^1 e^{-beta/u^2} du
  const auto res = quad::integrate(
      [beta](double u) { return 2.0 * std::exp(-beta / (u * u)); }, 0.0, 1.0, options_for(prec));
  return res.value;
}

double b_integral_closed(const BoundaryParams& p) { return b_of_beta(p.beta()); }

double i_term(const BoundaryParams& p) {
  if (-p.b * p.c <= 0) return 0.0;
  const double left = std::abs(static_cast<double>(p.b) / p.s_ratio);
  const double right = std::abs(static_cast<double>(p.c) * p.s_ratio);
  return 4.0 * pi * std::sqrt(p.v) * std::min(left, right);
}

double xi_check(double v, const SurfacePoint& z, std::int64_t b, std::int64_t c) {
  const BoundaryParams p(v, z.s_ratio(), b, c);
  return z.t() / std::sqrt(v) * (b_integral_closed(p) - i_term(p));
}

std::vector<std::pair<std::int64_t, std::int64_t>> boundary_pairs(std::int64_t m) {
  const auto prof = arith::divisor_profile(m);
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  for (auto d : prof.divisors) {
    // -bc = m
    const std::int64_t c = -m / d;
    out.emplace_back(d, c);
    out.emplace_back(-d, -c);
  }
  return out;
}

double xi_check_sum(double v, const SurfacePoint& z, std::int64_t m) {
  if (m == 0) throw std::domain_error("xi_check_sum: m must be nonzero");
  double total = 0.0;
  for (const auto& [b, c] : boundary_pairs(m)) total += xi_check(v, z, b, c);
  return 0.5 * total;
}

double xi_check_zero(double v, const SurfacePoint& z) {
  const double s = z.s_ratio();
  double total = 2.0;  // b = c = 0
  for (std::int64_t n = 1; n < 1000000; ++n) {
    const double term = 2.0 * (b_of_beta(BoundaryParams(v, s, n, 0).beta()) +
                               b_of_beta(BoundaryParams(v, s, 0, n).beta()));
    total += term;
    if (term < 1e-3 * eps * total) break;
  }
  return 0.5 * z.t() / std::sqrt(v) * total;
}

double xi_check_zero_plus(double v, const SurfacePoint& z) {
  const double t = z.t();
  const double s = z.s_ratio();
  const double zeta2 = pi * pi / 6.0;
  const double sums = theta_tail(pi * s * s / v) / s + s * theta_tail(pi / (s * s * v));
  const double twice = -2.0 * t / std::sqrt(v) + t * (s + 1.0 / s) * (2.0 / pi) * zeta2 -
                       (2.0 * t / pi) * sums;
  return 0.5 * twice;
}

double xi_check_zero_theta(double v, const SurfacePoint& z) {
  const double t = z.t();
  const double s = z.s_ratio();
  return xi_check_zero_plus(v, z) + t * (s + 1.0 / s) / (2.0 * v);
}

double lemma_min_integral(std::int64_t m, double v) {
  if (m <= 0) throw std::domain_error("lemma_min_integral: m must be positive");
  if (!(v > 0.0)) throw std::domain_error("lemma_min_integral: v must be positive");
  const quad::Options opts{1e-13, 0.0, 4000};
  double total = 0.0;
  for (const auto& [b, c] : boundary_pairs(m)) {
    const double bb = std::abs(static_cast<double>(b));
    const double cc = std::abs(static_cast<double>(c));
    // s = e^phi, ds/s = dphi; the two branches cross at s^2 = |b/c|
    auto f = [bb, cc](double phi) { return std::min(bb * std::exp(-phi), cc * std::exp(phi)); };
    total += integrate_split(f, 0.5 * std::log(bb / cc), opts);
  }
  return total;
}

BoundPair lemma_b_bounds(std::int64_t m, double v) {
  if (m == 0) throw std::domain_error("lemma_b_bounds: m must be nonzero");
  if (!(v > 0.0)) throw std::domain_error("lemma_b_bounds: v must be positive");
  const quad::Options opts{1e-12, 0.0, 4000};
  BoundPair out;
  for (const auto& [b, c] : boundary_pairs(m)) {
    auto f = [&, b = b, c = c](double phi) {
      const double w = static_cast<double>(b) * std::exp(-phi) + static_cast<double>(c) * std::exp(phi);
      const double beta = pi * v * w * w;
      return std::isfinite(beta) && beta < 1e300 ? b_of_beta(beta) : 0.0;
    };
    // beta is smallest, and for -bc > 0 vanishes to second order, at s^2 = |b/c|
    const double kink = 0.5 * std::log(std::abs(static_cast<double>(b) / static_cast<double>(c)));
    out.lhs += integrate_split(f, kink, opts);
  }
  const double abs_m = static_cast<double>(m < 0 ? -m : m);
  const double pairs = 2.0 * static_cast<double>(arith::tau(m));
  const double root = std::sqrt(abs_m * v);
  if (m > 0) {
    out.rhs = pairs / (2.0 * root);
  } else {
    // e^{-x}/(2 root) + 2 pi root Ei(-x) = E_2(x) / (2 root), x = 4 pi |m| v
    out.rhs = pairs * specfun::exp_integral_en(2.0, 4.0 * pi * abs_m * v) / (2.0 * root);
  }
  return out;
}

std::vector<CuspStep> cusp_cancellation_check(double v, double K1, double K2,
                                              const std::vector<double>& T_list) {
  if (!(v > 0.0)) throw std::domain_error("cusp_cancellation_check: v must be positive");
  if (!(K1 > 1.0) || !(K2 > 1.0)) throw std::domain_error("cusp_cancellation_check: need K1, K2 > 1");
  if (!std::is_sorted(T_list.begin(), T_list.end()))
    throw std::domain_error("cusp_cancellation_check: T_list must be increasing");
  constexpr double b = 1.0;
  const quad::Options opts{1e-12, 0.0, 2000};

  // inner integrals over y1 > K1 at fixed y2, mapped to (0, 1] by y1 = K1/w
  // (y1 = K1/w^2 for the y1^{-3/2} integrand) so the integrands stay bounded
  auto inner_zero = [&](double) {
    return quad::integrate([K1](double) { return 1.0 / K1; }, 0.0, 1.0, opts).value;
  };
  auto inner_gap = [&](double y2) {
    const double k = pi * b * b / (v * y2);
    return quad::integrate([k, K1](double w) { return -std::expm1(-k * K1 / w) / K1; }, 0.0, 1.0, opts).value;
  };
  auto inner_prime = [&](double) {
    return quad::integrate([K1](double) { return 2.0 / std::sqrt(K1); }, 0.0, 1.0, opts).value;
  };
  // int_{K2}^{T} g(y2) dy2 in w = log y2
  auto outer = [&](auto&& g, double weight_power, double T) {
    return quad::integrate(
               [&](double w) {
                 const double y2 = std::exp(w);
                 return g(y2) * std::pow(y2, 1.0 - weight_power);
               },
               std::log(K2), std::log(T), opts)
        .value;
  };

  std::vector<CuspStep> out;
  for (double T : T_list) {
    if (!(T > K2)) throw std::domain_error("cusp_cancellation_check: every T must exceed K2");
    CuspStep step;
    step.T = T;
    step.i0 = outer(inner_zero, 1.0, T);
    // I_0/b^2 - I_b as one integral, so the two log T growths cancel pointwise
    step.difference = outer(inner_gap, 1.0, T) / (b * b);
    step.i_prime = outer(inner_prime, 1.5, T);
    out.push_back(step);
  }
  return out;
}

double Rho::operator()(double t) const {
  if (t <= t0) return 0.0;
  if (t >= t1) return 1.0;
  const double x = (t - t0) / (t1 - t0);
  const double up = smooth_zero(x);
  return up / (up + smooth_zero(1.0 - x));
}

double rho_boundary_integral(double v, std::int64_t m, const Rho& rho, const Precision& prec) {
  if (!(v > 0.0)) throw std::domain_error("rho_boundary_integral: v must be positive");
  if (!(rho.t0 >= 1.0) || !(rho.t1 > rho.t0))
    throw ConfigurationError("rho_boundary_integral: need 1 <= t0 < t1");
  const quad::Options opts{std::max(prec.effective_rel_tol(), 1e-9), prec.abs_tol, 2000};
  const double y_floor = std::sqrt(3.0) / 2.0;

  // x-width of the fundamental domain at height y
  auto width = [y_floor](double y) {
    if (y >= 1.0) return 1.0;
    if (y < y_floor) return 0.0;
    return 1.0 - 2.0 * std::sqrt(1.0 - y * y);
  };
  // the integrand is t times a function of s alone
  auto profile = [&](double s) {
    const SurfacePoint unit = SurfacePoint::from_ts(1.0, s);
    return m == 0 ? xi_check_zero_plus(v, unit) : xi_check_sum(v, unit, m);
  };
  // dmu = w(y1) w(y2) 2 dt ds / (s t^3), y1 = t s, y2 = t / s
  auto slice = [&](double t) {
    const double r = rho(t);
    if (r == 0.0) return 0.0;
    const double edge = std::log(t / y_floor);
    const double knee = std::log(t);
    auto f = [&](double phi) {
      const double s = std::exp(phi);
      return width(t * s) * width(t / s) * profile(s);
    };
    double inner = 0.0;
    for (auto [lo, hi] : {std::pair{-edge, -knee}, std::pair{-knee, knee}, std::pair{knee, edge}})
      inner += quad::integrate(f, lo, hi, opts).value;
    return r * 2.0 / (t * t) * inner;
  };
  return quad::integrate_to_infinity(slice, rho.t0, opts).value;
}

}  // namespace kudla::boundary
