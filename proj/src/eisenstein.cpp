#include "kudla/eisenstein.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>

#include "kudla/arith.hpp"
#include "kudla/quadrature.hpp"
#include "kudla/specfun.hpp"

namespace kudla::eisenstein {

namespace {

constexpr double pi = std::numbers::pi;

// sum_{n >= N} ((n + shift)^2 + w^2)^{-s} by Euler-Maclaurin, N + shift > 0.
double half_line_tail(double s, double shift, double w, double big_n) {
  const double y = big_n + shift;
  const double f = std::pow(y * y + w * w, -s);
  const double fprime = -2.0 * s * y * std::pow(y * y + w * w, -s - 1.0);
  // int_y^inf (t^2 + w^2)^{-s} dt = y^{1-2s} int_0^1 (1 + k x^q)^{-s} dx / (p+1),
  // with t = y / x^{1/(p+1)}, p = 2s - 2, q = 2/(p+1), k = (w/y)^2.
  const double p = 2.0 * s - 2.0;
  const double q = 2.0 / (p + 1.0);
  const double k = (w / y) * (w / y);
  auto g = [&](double x) { return std::pow(1.0 + k * std::pow(x, q), -s); };
  const double integral = quad::integrate(g, 0.0, 1.0, {1e-11, 0.0, 200}).value / (p + 1.0) *
                          std::pow(y, 1.0 - 2.0 * s);
  return integral + 0.5 * f - fprime / 12.0;
}

// sum_{c >= N} c^{-q}, q > 1, by Euler-Maclaurin.
double power_tail(double q, double big_n) {
  return std::pow(big_n, 1.0 - q) / (q - 1.0) + 0.5 * std::pow(big_n, -q) +
         q * std::pow(big_n, -q - 1.0) / 12.0 -
         q * (q + 1.0) * (q + 2.0) * std::pow(big_n, -q - 3.0) / 720.0;
}

void require_not_pole(double s) {
  if (s == 0.0 || s == 0.5 || s == 1.0)
    throw PoleError("e_star_fourier: s lies on a pole of zeta*(2s) or zeta*(2s-1)");
}

}  // namespace

double e_star_lattice(const TauPoint& tau, SpectralParam sp, int radius, LatticeTail tail) {
  const double s = sp.s;
  if (!(s > 1.0)) throw std::domain_error("e_star_lattice: needs s > 1 (absolute convergence)");
  if (radius < 10) throw std::domain_error("e_star_lattice: radius must be >= 10");
  const double u = tau.u;
  const double v = tau.v;

  double lattice = specfun::zeta(2.0 * s);
  for (int c = 1; c <= radius; ++c) {
    // with tail corrections each row is centred on the nearest integer to -cu,
    // which makes the truncated sum exactly periodic in u
    const double centre = tail == LatticeTail::euler_maclaurin ? std::round(c * u) : 0.0;
    const double cu = c * u - centre;
    const double w2 = (c * v) * (c * v);
    double row = 0.0;
    for (int d = -radius; d <= radius; ++d) {
      const double x = cu + d;
      row += std::pow(x * x + w2, -s);
    }
    if (tail == LatticeTail::euler_maclaurin) {
      const double n0 = radius + 1.0;
      row += half_line_tail(s, cu, c * v, n0) + half_line_tail(s, -cu, c * v, n0);
    }
    lattice += row;
  }
  if (tail == LatticeTail::euler_maclaurin) {
    // rows c > radius: sum_d |c tau + d|^{-2s} = sqrt(pi) Gamma(s-1/2)/Gamma(s) (cv)^{1-2s}
    // up to terms of size e^{-2 pi c v}
    const double row_integral = std::sqrt(pi) * std::tgamma(s - 0.5) / std::tgamma(s) *
                                std::pow(v, 1.0 - 2.0 * s);
    lattice += row_integral * power_tail(2.0 * s - 1.0, radius + 1.0);
  }
  return std::pow(pi, -s) * std::tgamma(s) * std::pow(v, s) * lattice;
}

double e_star_fourier(const TauPoint& tau, SpectralParam sp, int n_terms) {
  const double s = sp.s;
  require_not_pole(s);
  const double v = tau.v;
  double value = c0(v, s);
  const double nu = s - 0.5;
  for (int n = 1; n <= n_terms; ++n) {
    const double bessel = specfun::bessel_k(nu, 2.0 * pi * n * v);
    if (bessel == 0.0) break;
    value += 4.0 * std::sqrt(v) * arith::sigma_star(nu, n) * bessel * std::cos(2.0 * pi * n * tau.u);
  }
  return value;
}

double c0(double v, double s) {
  require_not_pole(s);
  return std::pow(v, s) * specfun::zeta_star(2.0 * s) +
         std::pow(v, 1.0 - s) * specfun::zeta_star(2.0 * s - 1.0);
}

double c0_check(double v, double s) {
  const double first = s * std::pow(v, s - 1.0) * specfun::zeta_star(2.0 * s);
  if (s == 1.0) {
    // (1-s) zeta*(2s-1) -> -1/2, zeta* having residue 1 at 1
    return first - 0.5 / v;
  }
  if (s == 0.5) throw PoleError("c0_check: pole at s = 1/2");
  return first + (1.0 - s) * std::pow(v, -s) * specfun::zeta_star(2.0 * s - 1.0);
}

double cm(double v, double s, std::int64_t m) {
  const double abs_m = static_cast<double>(std::llabs(m));
  return 2.0 * arith::sigma_star(s - 0.5, m) * std::pow(v * abs_m * pi, s) /
         (std::tgamma(s) * std::sqrt(abs_m));
}

double i_m(double v, double s, std::int64_t m) {
  const double alpha = 2.0 * pi * static_cast<double>(std::llabs(m)) * v;
  const double nu = s - 0.5;
  return std::tgamma(s) * specfun::bessel_k(nu, alpha) / (std::sqrt(pi) * std::pow(alpha / 2.0, nu));
}

double j_m(double v, double s, std::int64_t m) {
  const double alpha = 2.0 * pi * static_cast<double>(std::llabs(m)) * v;
  const double nu = s - 0.5;
  return std::tgamma(s) * std::pow(2.0, nu) / std::sqrt(pi) * std::pow(alpha, -nu) *
         specfun::bessel_k(nu + 1.0, alpha);
}

AppendixIntegrals appendix_integrals(double v, std::int64_t m) {
  if (!(v > 0.0)) throw std::domain_error("appendix_integrals: v must be positive");
  if (m == 0) throw std::domain_error("appendix_integrals: m must be nonzero");
  const double alpha = 2.0 * pi * static_cast<double>(std::llabs(m)) * v;
  const double gamma = std::numbers::egamma;
  const double decay = std::exp(-alpha);
  // e^{alpha} E1(2 alpha) = e^{-alpha} (e^{2 alpha} E1(2 alpha))
  const double grow_e1 = decay * specfun::exp_integral_e1_scaled(2.0 * alpha);
  const double log_term = std::log(alpha / 2.0) + gamma;
  AppendixIntegrals out{};
  out.I_m1 = decay / alpha;
  out.J_m1 = decay * (1.0 / alpha + 1.0 / (alpha * alpha));
  out.I_m1_prime = grow_e1 / alpha - decay / alpha * log_term;
  out.J_m1_prime = -grow_e1 * (1.0 / alpha - 1.0 / (alpha * alpha)) +
                   decay / (alpha * alpha) * (2.0 - log_term * (1.0 + alpha));
  return out;
}

ConstantTerm constant_term(double v) {
  if (!(v > 0.0)) throw std::domain_error("constant_term: v must be positive");
  const auto& k = specfun::constants();
  const double log4piv = std::log(4.0 * pi * v);
  return {pi / 6.0 - 1.0 / (2.0 * v),
          pi / 6.0 * (24.0 * k.zeta_prime_neg1 + k.euler_gamma - 1.0 + log4piv) +
              1.0 / (2.0 * v) * (-k.euler_gamma + log4piv)};
}

double coeff_a(double v, std::int64_t m) {
  if (!(v > 0.0)) throw std::domain_error("coeff_a: v must be positive");
  if (m > 0) return static_cast<double>(arith::sigma(m));
  if (m < 0) return 0.0;
  return -1.0 / 24.0 + 1.0 / (8.0 * pi * v);
}

double coeff_a_prime(double v, std::int64_t m, SigmaPrimeSign sign) {
  if (!(v > 0.0)) throw std::domain_error("coeff_a_prime: v must be positive");
  if (m > 0) {
    const auto prof = arith::divisor_profile(m);
    const double sig = static_cast<double>(prof.sigma);
    double log_deriv = arith::sigma_star_prime_half(m) / arith::sigma_star(0.5, m);
    if (sign == SigmaPrimeSign::as_displayed) log_deriv = -log_deriv;
    return sig * (1.0 / (4.0 * pi * static_cast<double>(m) * v) + log_deriv);
  }
  if (m < 0) {
    const double x = 4.0 * pi * static_cast<double>(-m) * v;
    const double sig = static_cast<double>(arith::sigma(m));
    // Ei(-x) + e^{-x}/x = E_2(x)/x, free of cancellation for large x
    return sig * specfun::exp_integral_en(2.0, x) / x;
  }
  const auto& k = specfun::constants();
  const double log4piv = std::log(4.0 * pi * v);
  return -(1.0 / 24.0) * (24.0 * k.zeta_prime_neg1 + k.euler_gamma - 1.0 + log4piv) -
         (1.0 / (8.0 * pi * v)) * (-k.euler_gamma + log4piv);
}

ModifiedCoefficients coeff_A_and_A_prime(double v, std::int64_t m, SigmaPrimeSign sign) {
  const auto& k = specfun::constants();
  const double a = coeff_a(v, m);
  const double a_prime = coeff_a_prime(v, m, sign);
  return {12.0 * a, -48.0 * (k.zeta_log_deriv_neg1 + 0.5) * a + 12.0 * a_prime};
}

std::complex<double> e2_fourier(const TauPoint& tau, SpectralParam sp, int n_terms) {
  const double s = sp.s;
  const double v = tau.v;
  std::complex<double> sum = c0_check(v, s);
  for (int n = 1; n <= n_terms; ++n) {
    for (int m : {n, -n}) {
      const double c = cm(v, s, m);
      const double im = i_m(v, s, m);
      const double jm = j_m(v, s, m);
      if (c * (std::abs(im) + std::abs(jm)) == 0.0) continue;
      const double coefficient = (s / v - 2.0 * pi * m) * c * im - 2.0 * pi * std::abs(m) * c * jm;
      const double phase = 2.0 * pi * m * tau.u;
      sum += coefficient * std::complex<double>(std::cos(phase), std::sin(phase));
    }
  }
  return -sum / (4.0 * pi);
}

std::complex<double> e2_from_lattice(const TauPoint& tau, SpectralParam s, int radius, double h) {
  if (!(h > 0.0) || !(h < tau.v)) throw std::domain_error("e2_from_lattice: need 0 < h < v");
  auto e = [&](double u, double v) { return e_star_lattice(TauPoint(u, v), s, radius); };
  const double d_v = (e(tau.u, tau.v + h) - e(tau.u, tau.v - h)) / (2.0 * h);
  const double d_u = (e(tau.u + h, tau.v) - e(tau.u - h, tau.v)) / (2.0 * h);
  return std::complex<double>(d_v, d_u) * (-1.0 / (4.0 * pi));
}

CoefficientTable CoefficientTable::build(double v, std::int64_t m_max) {
  if (m_max < 1) throw std::domain_error("CoefficientTable: m_max must be >= 1");
  CoefficientTable table;
  table.v = v;
  for (std::int64_t m = -m_max; m <= m_max; ++m) {
    const auto [A, A_prime] = coeff_A_and_A_prime(v, m);
    table.entries[m] = {coeff_a(v, m), coeff_a_prime(v, m), A, A_prime};
  }
  return table;
}

bool CoefficientTable::consistent(double tol) const {
  const auto& k = specfun::constants();
  auto close = [tol](double x, double y) {
    return std::abs(x - y) <= tol * std::max({1.0, std::abs(x), std::abs(y)});
  };
  for (const auto& [m, e] : entries) {
    if (m < 0 && e.a != 0.0) return false;
    if (!close(e.A, 12.0 * e.a)) return false;
    if (!close(e.A_prime, -48.0 * (k.zeta_log_deriv_neg1 + 0.5) * e.a + 12.0 * e.a_prime)) return false;
  }
  return true;
}

}  // namespace kudla::eisenstein
