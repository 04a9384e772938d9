#include "kudla/identity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "kudla/arith.hpp"
#include "kudla/specfun.hpp"

namespace kudla::identity {

namespace {
constexpr double pi = std::numbers::pi;
}

double faltings_height(std::int64_t m) {
  if (m == 0)
    throw OutOfScopeError("faltings_height: T(0) is not a correspondence; m = 0 is not computed");
  if (m < 0) return 0.0;
  const auto& k = specfun::constants();
  const double sig = static_cast<double>(arith::sigma(m));
  return 576.0 * sig * (0.5 * k.zeta_neg1 + k.zeta_prime_neg1) + 24.0 * arith::sum_d_log_d(m) -
         12.0 * sig * std::log(static_cast<double>(m));
}

double volume_constant_check() {
  const auto& k = specfun::constants();
  return k.c_vol * k.kappa * k.kappa;
}

double gamma0_volume(std::int64_t m) {
  return static_cast<double>(arith::psi_index(m)) * pi / 3.0;
}

IdentityReport verify_main_identity(std::int64_t m, double v, green::Method method,
                                    const std::optional<QuadratureSpec>& spec,
                                    const Precision& prec, eisenstein::SigmaPrimeSign sign) {
  if (m == 0)
    throw OutOfScopeError("verify_main_identity: m = 0 is excluded; its geometric side is not computed");
  if (!(v > 0.0)) throw std::domain_error("verify_main_identity: v must be positive");
  if (method == green::Method::mc && !spec)
    throw ConfigurationError("verify_main_identity: the Monte Carlo route needs a QuadratureSpec");

  IdentityReport r;
  r.m = m;
  r.v = v;
  r.method = method;
  r.height = faltings_height(m);
  r.green_closed = green::green_integral_closed(v, m);
  if (method != green::Method::closed) {
    const auto g = green::green_integral(v, m, method, spec.value_or(QuadratureSpec{}), prec);
    r.green_numeric = g.value;
    r.green_error = g.error_bound;
  }
  r.lhs = r.height + specfun::constants().c_vol * r.green();
  r.rhs = eisenstein::coeff_A_and_A_prime(v, m, sign).A_prime;
  r.abs_residual = std::abs(r.lhs - r.rhs);
  r.rel_residual = r.abs_residual / std::max(std::abs(r.rhs), std::numeric_limits<double>::min());
  return r;
}

double predicted_constant_term(double v) {
  if (!(v > 0.0)) throw std::domain_error("predicted_constant_term: v must be positive");
  const auto& k = specfun::constants();
  const double log4piv = std::log(4.0 * pi * v);
  const double row = 3.0 * k.zeta_prime_neg1 - 1.0 / 8.0 + k.euler_gamma / 24.0 + log4piv / 24.0 +
                     (1.0 / (8.0 * pi * v)) * (-48.0 * k.zeta_prime_neg1 - k.euler_gamma + 2.0 + log4piv);
  // the tabulated row is A'(v,1,0) divided by -12
  return -12.0 * row;
}

}  // namespace kudla::identity
