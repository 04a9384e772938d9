#include "kudla/specfun.hpp"

#include <cstdlib>
#include <sstream>
#include <string>

namespace kudla {

void Precision::validate() const {
  if (working_digits < 15) throw ConfigurationError("Precision: working_digits must be >= 15");
  if (!std::isfinite(abs_tol) || abs_tol < 0.0)
    throw ConfigurationError("Precision: abs_tol must be finite and nonnegative");
  if (!std::isfinite(rel_tol) || rel_tol < 0.0)
    throw ConfigurationError("Precision: rel_tol must be finite and nonnegative");
}

double Precision::effective_rel_tol() const {
  if (rel_tol > 0.0) return rel_tol;
  constexpr double floor_tol = 64.0 * std::numeric_limits<double>::epsilon();
  return std::max(std::pow(10.0, -working_digits), floor_tol);
}

Precision Precision::from_environment() {
  Precision p;
  if (const char* env = std::getenv("KUDLA_PRECISION"); env != nullptr && *env != '\0') {
    try {
      p.working_digits = std::stoi(env);
    } catch (const std::exception&) {
      throw ConfigurationError(std::string("KUDLA_PRECISION is not an integer: ") + env);
    }
  }
  p.validate();
  return p;
}

void QuadratureSpec::validate() const {
  if (radius <= 0 || !(r_max > 0.0) || nodes <= 0 || mc_samples <= 0 || !(tol > 0.0))
    throw ConfigurationError("QuadratureSpec: all fields must be positive");
}

std::string to_string(const LatticeMatrix& m) {
  std::ostringstream os;
  os << "(" << m(0, 0) << " " << m(0, 1) << "; " << m(1, 0) << " " << m(1, 1) << ")";
  return os.str();
}

namespace specfun {

double compute_zeta_prime_neg1() {
  constexpr double pi = std::numbers::pi;
  const auto [z2, dz2] = detail::zeta_euler_maclaurin(2.0);
  // log-derivative of the functional equation at s = -1; cot(-pi/2) = 0 and
  // digamma(2) = 1 - gamma.
  const double log_deriv = std::log(2.0 * pi) - digamma(2.0) - dz2 / z2;
  return -log_deriv / 12.0;
}

const Constants& constants() {
  static const Constants c = [] {
    constexpr double pi = std::numbers::pi;
    Constants k{};
    k.euler_gamma = std::numbers::egamma;
    k.zeta_neg1 = -1.0 / 12.0;
    k.zeta_prime_neg1 = compute_zeta_prime_neg1();
    k.zeta_log_deriv_neg1 = -12.0 * k.zeta_prime_neg1;
    k.kappa = pi / 3.0;
    k.c_vol = 18.0 / (pi * pi);
    return k;
  }();
  return c;
}

}  // namespace specfun
}  // namespace kudla
