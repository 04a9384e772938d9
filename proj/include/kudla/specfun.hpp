#pragma once

// Real-argument special functions: exponential integral, Macdonald K_nu,
// Gamma/digamma, Riemann zeta and its completion, and the numeric constants
// derived from them.

#include <algorithm>
#include <array>
#include <cmath>
#include <concepts>
#include <limits>
#include <numbers>
#include <type_traits>
#include <utility>

#include "kudla/types.hpp"

namespace kudla::specfun {

namespace detail {

// B_{2k}, k = 1..14.
inline constexpr std::array<double, 14> bernoulli_even = {
    1.0 / 6.0,         -1.0 / 30.0,          1.0 / 42.0,        -1.0 / 30.0,
    5.0 / 66.0,        -691.0 / 2730.0,      7.0 / 6.0,         -3617.0 / 510.0,
    43867.0 / 798.0,   -174611.0 / 330.0,    854513.0 / 138.0,  -236364091.0 / 2730.0,
    8553103.0 / 6.0,   -23749461029.0 / 870.0};

template <std::floating_point Real>
constexpr Real eps = std::numeric_limits<Real>::epsilon();

// E1(x) for x > 0 by the ascending series (x <= 1).
template <std::floating_point Real>
Real e1_series(Real x) {
  constexpr Real gamma = std::numbers::egamma_v<Real>;
  Real sum = 0;
  Real term = 1;
  for (int k = 1; k < 200; ++k) {
    term *= -x / k;
    const Real add = term / k;
    sum += add;
    if (std::abs(add) < eps<Real> * std::abs(sum)) break;
  }
  return -gamma - std::log(x) - sum;
}

// e^x E1(x) for x > 1 by the continued fraction (modified Lentz).
template <std::floating_point Real>
Real e1_scaled_fraction(Real x) {
  constexpr Real tiny = std::numeric_limits<Real>::min() / eps<Real>;
  Real b = x + 1;
  Real c = 1 / tiny;
  Real d = 1 / b;
  Real h = d;
  for (int i = 1; i < 1000; ++i) {
    const Real a = -Real(i) * Real(i);
    b += 2;
    d = 1 / (a * d + b);
    c = b + a / c;
    const Real delta = c * d;
    h *= delta;
    if (std::abs(delta - 1) < eps<Real>) break;
  }
  return h;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Exponential integral
// ---------------------------------------------------------------------------

/// E1(x) = int_1^inf e^{-xt} dt/t = -Ei(-x), x > 0.
template <std::floating_point Real>
Real exp_integral_e1(Real x) {
  if (!(x > 0)) throw std::domain_error("exp_integral_e1: argument must be positive");
  if (x <= 1) return detail::e1_series(x);
  return std::exp(-x) * detail::e1_scaled_fraction(x);
}

/// e^x E1(x), finite for arguments where E1 itself underflows.
template <std::floating_point Real>
Real exp_integral_e1_scaled(Real x) {
  if (!(x > 0)) throw std::domain_error("exp_integral_e1_scaled: argument must be positive");
  if (x <= 1) return std::exp(x) * detail::e1_series(x);
  return detail::e1_scaled_fraction(x);
}

/// Ei(x) on the negative axis.
template <std::floating_point Real>
Real exp_integral_ei(Real x) {
  if (!(x < 0)) throw std::domain_error("exp_integral_ei: only x < 0 is supported");
  return -exp_integral_e1(-x);
}

/// e^x E_n(x) where E_n(x) = int_1^inf e^{-xt} t^{-n} dt, real order n > 0, x > 0.
template <std::floating_point Real>
Real exp_integral_en_scaled(Real n, Real x) {
  if (!(x > 0) || !(n > 0)) throw std::domain_error("exp_integral_en: need n > 0 and x > 0");
  if (n == 1) return exp_integral_e1_scaled(x);
  if (x > 1) {
    // continued fraction, modified Lentz
    constexpr Real tiny = std::numeric_limits<Real>::min() / detail::eps<Real>;
    Real b = x + n;
    Real c = 1 / tiny;
    Real d = 1 / b;
    Real h = d;
    for (int i = 1; i < 1000; ++i) {
      const Real a = -Real(i) * (n - 1 + i);
      b += 2;
      d = 1 / (a * d + b);
      c = b + a / c;
      const Real delta = c * d;
      h *= delta;
      if (std::abs(delta - 1) < detail::eps<Real>) break;
    }
    return h;
  }
  // Upward recurrence E_{k+1}(x) = (e^{-x} - x E_k(x))/k from E_1 or E_{1/2}
  // (E_{1/2}(x) = sqrt(pi/x) erfc(sqrt x)) when n is an integer or half-integer.
  const Real two_n = 2 * n;
  if (two_n == std::floor(two_n)) {
    Real order = (n == std::floor(n)) ? Real(1) : Real(0.5);
    Real value = order == 1 ? exp_integral_e1(x)
                            : std::sqrt(std::numbers::pi_v<Real> / x) * std::erfc(std::sqrt(x));
    while (order < n) {
      value = (std::exp(-x) - x * value) / order;
      order += 1;
    }
    return std::exp(x) * value;
  }
  // general order: E_n(x) = x^{n-1} Gamma(1-n) - sum_k (-x)^k / (k! (k+1-n))
  Real sum = 0;
  Real term = 1;
  for (int k = 0; k < 200; ++k) {
    if (k > 0) term *= -x / k;
    const Real add = term / (k + 1 - n);
    sum += add;
    if (k > 2 && std::abs(add) < detail::eps<Real> * std::abs(sum)) break;
  }
  return std::exp(x) * (std::pow(x, n - 1) * std::tgamma(1 - n) - sum);
}

/// E_n(x) = int_1^inf e^{-xt} t^{-n} dt.
template <std::floating_point Real>
Real exp_integral_en(Real n, Real x) {
  return std::exp(-x) * exp_integral_en_scaled(n, x);
}

/// Entire part Ein(x) = E1(x) + gamma + log x = sum (-1)^{k+1} x^k / (k k!).
template <std::floating_point Real>
Real exp_integral_ein(Real x) {
  if (std::abs(x) <= 4) {
    Real sum = 0;
    Real term = -1;
    for (int k = 1; k < 200; ++k) {
      term *= -x / k;
      const Real add = term / k;
      sum += add;
      if (std::abs(add) <= detail::eps<Real> * std::abs(sum)) break;
    }
    return sum;
  }
  if (x < 0) throw std::domain_error("exp_integral_ein: x < -4 not supported");
  return exp_integral_e1(x) + std::numbers::egamma_v<Real> + std::log(x);
}

// ---------------------------------------------------------------------------
// Gamma and digamma
// ---------------------------------------------------------------------------

template <std::floating_point Real>
bool is_gamma_pole(Real x) {
  return x <= 0 && x == std::floor(x);
}

template <std::floating_point Real>
Real digamma(Real x) {
  if (is_gamma_pole(x)) throw PoleError("digamma: pole at a nonpositive integer");
  constexpr Real pi = std::numbers::pi_v<Real>;
  if (x < Real(0.5)) return digamma(1 - x) - pi / std::tan(pi * x);
  Real shift = 0;
  while (x < 12) {
    shift -= 1 / x;
    x += 1;
  }
  const Real inv2 = 1 / (x * x);
  Real series = 0;
  Real power = inv2;
  for (int k = 1; k <= 8; ++k) {
    series += Real(detail::bernoulli_even[k - 1]) / (2 * k) * power;
    power *= inv2;
  }
  return shift + std::log(x) - 1 / (2 * x) - series;
}

/// (Gamma(x), Gamma'(x)/Gamma(x)).
template <std::floating_point Real>
std::pair<Real, Real> gamma_and_digamma(Real x) {
  if (is_gamma_pole(x)) throw PoleError("gamma_and_digamma: pole at a nonpositive integer");
  return {std::tgamma(x), digamma(x)};
}

// ---------------------------------------------------------------------------
// Riemann zeta
// ---------------------------------------------------------------------------

namespace detail {

// Euler-Maclaurin evaluation of (zeta(s), zeta'(s)) for real s >= -1, s != 1.
template <std::floating_point Real>
std::pair<Real, Real> zeta_euler_maclaurin(Real s) {
  constexpr int n_cut = 20;
  Real value = 0;
  Real deriv = 0;
  for (int n = 1; n < n_cut; ++n) {
    const Real ln = std::log(Real(n));
    const Real p = std::exp(-s * ln);
    value += p;
    deriv -= ln * p;
  }
  const Real big_n = n_cut;
  const Real ln_n = std::log(big_n);
  const Real n_pow = std::exp((1 - s) * ln_n);  // N^{1-s}
  value += n_pow / (s - 1) + n_pow / big_n / 2;
  deriv += -ln_n * n_pow / (s - 1) - n_pow / ((s - 1) * (s - 1)) - ln_n * n_pow / big_n / 2;

  // Sum_k B_{2k}/(2k)! (s)_{2k-1} N^{1-s-2k}, with the s-derivative of each term.
  Real rising = s;        // (s)_{2k-1}
  Real rising_d = 1;      // d/ds (s)_{2k-1}
  Real factorial = 2;     // (2k)!
  Real n_power = n_pow / big_n;  // N^{-s}
  for (int k = 1; k <= 12; ++k) {
    n_power /= big_n;  // N^{-s-2k+1}
    const Real coef = Real(bernoulli_even[k - 1]) / factorial;
    const Real term = coef * rising * n_power;
    const Real term_d = coef * (rising_d - ln_n * rising) * n_power;
    value += term;
    deriv += term_d;
    // at non-positive integers (s)_{2k-1} vanishes while its derivative does not
    if (std::abs(term) <= eps<Real> * std::abs(value) && std::abs(term_d) <= eps<Real> * std::abs(deriv) && k > 2)
      break;
    // advance (s)_{2k-1} -> (s)_{2k+1}
    const Real f1 = s + 2 * k - 1;
    const Real f2 = s + 2 * k;
    rising_d = rising_d * f1 * f2 + rising * (f1 + f2);
    rising *= f1 * f2;
    factorial *= (2 * k + 1) * (2 * k + 2);
    n_power /= big_n;
  }
  return {value, deriv};
}

// The partial sums cancel against the N^{1-s} term for s < 0, so the
// expansion runs in the widest native type.
template <std::floating_point Real>
std::pair<Real, Real> zeta_wide(Real s) {
  using Wide = std::conditional_t<(sizeof(Real) < sizeof(long double)), long double, Real>;
  const auto [value, deriv] = zeta_euler_maclaurin<Wide>(static_cast<Wide>(s));
  return {static_cast<Real>(value), static_cast<Real>(deriv)};
}

}  // namespace detail

/// Riemann zeta function for real s != 1.
template <std::floating_point Real>
Real zeta(Real s) {
  if (s == 1) throw PoleError("zeta: pole at s = 1");
  if (s > 40) {
    Real sum = 1;
    for (int n = 2; n < 12; ++n) sum += std::pow(Real(n), -s);
    return sum;
  }
  if (s >= -1) return detail::zeta_wide(s).first;
  // Functional equation: zeta(s) = 2^s pi^{s-1} sin(pi s/2) Gamma(1-s) zeta(1-s).
  constexpr Real pi = std::numbers::pi_v<Real>;
  if (s == std::floor(s) && std::fmod(s, Real(2)) == 0) return 0;  // trivial zeros
  return std::pow(Real(2), s) * std::pow(pi, s - 1) * std::sin(pi * s / 2) * std::tgamma(1 - s) *
         zeta(1 - s);
}

/// zeta'(s) for real s >= -1, s != 1.
template <std::floating_point Real>
Real zeta_derivative(Real s) {
  if (s == 1) throw PoleError("zeta_derivative: pole at s = 1");
  if (s < -1) throw std::domain_error("zeta_derivative: only s >= -1 is supported");
  return detail::zeta_wide(s).second;
}

/// Completed zeta pi^{-s/2} Gamma(s/2) zeta(s); poles at s = 0 and s = 1.
template <std::floating_point Real>
Real zeta_star(Real s) {
  if (s == 0 || s == 1) throw PoleError("zeta_star: pole at s = 0 or s = 1");
  if (s < Real(0.5)) return zeta_star(1 - s);
  constexpr Real pi = std::numbers::pi_v<Real>;
  return std::pow(pi, -s / 2) * std::tgamma(s / 2) * zeta(s);
}

// ---------------------------------------------------------------------------
// Macdonald function
// ---------------------------------------------------------------------------

/// e^t K_nu(t), from int_0^inf e^{-t(cosh u - 1)} cosh(nu u) du by the
/// trapezoidal rule (exponentially convergent for this entire integrand).
template <std::floating_point Real>
Real bessel_k_scaled(Real nu, Real t) {
  if (!(t > 0)) throw std::domain_error("bessel_k: argument must be positive");
  const Real h = std::min(Real(0.125), Real(0.35) / std::sqrt(t));
  auto f = [&](Real u) {
    const Real sh = std::sinh(u / 2);
    return std::exp(-2 * t * sh * sh) * std::cosh(nu * u);
  };
  Real sum = f(0) / 2;
  Real peak = sum;
  for (int k = 1; k < 100000; ++k) {
    const Real u = k * h;
    const Real term = f(u);
    sum += term;
    peak = std::max(peak, term);
    // past the maximum of the integrand and negligible
    if (term < detail::eps<Real> * Real(1e-3) * sum && term < peak) break;
  }
  return h * sum;
}

/// K_nu(t) for real nu and t > 0.
template <std::floating_point Real>
Real bessel_k(Real nu, Real t) {
  const Real scaled = bessel_k_scaled(nu, t);
  return std::exp(-t) * scaled;
}

// ---------------------------------------------------------------------------
// Constants
// ---------------------------------------------------------------------------

struct Constants {
  double euler_gamma;
  double zeta_neg1;            // -1/12
  double zeta_prime_neg1;      // zeta'(-1)
  double zeta_log_deriv_neg1;  // zeta'(-1)/zeta(-1)
  double kappa;                // pi/3, hyperbolic volume of SL2(Z)\H
  double c_vol;                // 18/pi^2
};

/// Process-wide constants; zeta'(-1) is derived from zeta'(2) through the
/// functional equation at first use.
const Constants& constants();

/// zeta'(-1) = -(1/12)(log 2pi - 1 + gamma - zeta'(2)/zeta(2)).
double compute_zeta_prime_neg1();

}  // namespace kudla::specfun
