#pragma once

// Faltings heights of the Hecke correspondences and the identity
//   ht(T(m)) + (18/pi^2) I_m(v) = A'(v, 1, m),   m != 0.

#include <cstdint>
#include <optional>

#include "kudla/eisenstein.hpp"
#include "kudla/green.hpp"
#include "kudla/types.hpp"

namespace kudla::identity {

/// Height of T(m) with respect to the metrized bundle of modular forms:
///   576 sigma(m)(zeta(-1)/2 + zeta'(-1)) + 24 sum_{d|m} d log d - 12 sigma(m) log m   (m > 0)
/// and 0 for m < 0. Throws OutOfScopeError for m = 0.
double faltings_height(std::int64_t m);

/// (18/pi^2)(pi/3)^2, the self-intersection of T(1); equals 2.
double volume_constant_check();

/// Hyperbolic volume of Gamma_0(|m|)\H, psi(|m|) pi/3.
double gamma0_volume(std::int64_t m);

struct IdentityReport {
  std::int64_t m = 1;
  double v = 1.0;
  green::Method method = green::Method::closed;
  double height = 0.0;
  double green_closed = 0.0;
  std::optional<double> green_numeric;  // reduced or Monte Carlo value
  std::optional<double> green_error;    // its error bound
  double lhs = 0.0;                     // height + c green (numeric when present)
  double rhs = 0.0;                     // A'(v, 1, m)
  double abs_residual = 0.0;
  double rel_residual = 0.0;

  /// The Green value that entered lhs.
  [[nodiscard]] double green() const { return green_numeric.value_or(green_closed); }
};

/// Both sides of the identity at (m, v). `spec` is required for the Monte
/// Carlo route (ConfigurationError otherwise); the reduced route falls back to
/// default settings without it. `sign` only exists to demonstrate that the
/// opposite sign of sigma' breaks the identity.
IdentityReport verify_main_identity(
    std::int64_t m, double v, green::Method method,
    const std::optional<QuadratureSpec>& spec = std::nullopt, const Precision& prec = {},
    eisenstein::SigmaPrimeSign sign = eisenstein::SigmaPrimeSign::analytic);

/// A'(v, 1, 0) from its explicit display; the m = 0 intersection number the
/// identity predicts but which is not computed from the geometric side.
double predicted_constant_term(double v);

}  // namespace kudla::identity
