#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace kudla {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

/// Evaluation at a pole of a meromorphic function.
class PoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A point lies on a special cycle (majorant R = 0).
class SingularityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Inconsistent or missing run configuration.
class ConfigurationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Requested quantity that this library deliberately does not compute.
class OutOfScopeError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// ---------------------------------------------------------------------------
// Precision
// ---------------------------------------------------------------------------

/// Working precision request.
///
/// All arithmetic is IEEE binary64. `working_digits` above what binary64
/// carries is accepted but the derived quadrature tolerance is clamped at a
/// small multiple of machine epsilon.
struct Precision {
  int working_digits = 30;
  double abs_tol = 0.0;
  double rel_tol = 0.0;  // 0 => derived from working_digits

  void validate() const;

  /// Relative tolerance handed to adaptive routines.
  [[nodiscard]] double effective_rel_tol() const;

  /// Default precision, honouring the KUDLA_PRECISION environment variable.
  static Precision from_environment();
};

// ---------------------------------------------------------------------------
// Points
// ---------------------------------------------------------------------------

/// Modular variable tau = u + i v of the Eisenstein series.
struct TauPoint {
  double u = 0.0;
  double v = 1.0;

  TauPoint() = default;
  TauPoint(double u_, double v_) : u(u_), v(v_) {
    if (!(v_ > 0.0)) throw std::domain_error("TauPoint: v must be positive");
  }
  [[nodiscard]] std::complex<double> tau() const { return {u, v}; }
};

/// A point (z1, z2) of H x H.
struct SurfacePoint {
  double x1 = 0.0, y1 = 1.0, x2 = 0.0, y2 = 1.0;

  SurfacePoint() = default;
  SurfacePoint(double x1_, double y1_, double x2_, double y2_)
      : x1(x1_), y1(y1_), x2(x2_), y2(y2_) {
    if (!(y1_ > 0.0) || !(y2_ > 0.0))
      throw std::domain_error("SurfacePoint: imaginary parts must be positive");
  }
  SurfacePoint(std::complex<double> z1, std::complex<double> z2)
      : SurfacePoint(z1.real(), z1.imag(), z2.real(), z2.imag()) {}

  /// Build from (t, s_ratio) with y1 = t*s, y2 = t/s.
  static SurfacePoint from_ts(double t, double s_ratio, double x1 = 0.0, double x2 = 0.0) {
    return {x1, t * s_ratio, x2, t / s_ratio};
  }

  [[nodiscard]] std::complex<double> z1() const { return {x1, y1}; }
  [[nodiscard]] std::complex<double> z2() const { return {x2, y2}; }
  [[nodiscard]] double t() const { return std::sqrt(y1 * y2); }
  [[nodiscard]] double s_ratio() const { return std::sqrt(y1 / y2); }
};

// ---------------------------------------------------------------------------
// Lattice matrices
// ---------------------------------------------------------------------------

/// Integer matrix (a b; c d).
using LatticeMatrix = Eigen::Matrix<std::int64_t, 2, 2>;

inline LatticeMatrix make_matrix(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  LatticeMatrix m;
  m << a, b, c, d;
  return m;
}

inline std::int64_t det(const LatticeMatrix& m) { return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0); }

std::string to_string(const LatticeMatrix& m);

// ---------------------------------------------------------------------------
// Numerical integration settings for the Green-function routes
// ---------------------------------------------------------------------------

struct QuadratureSpec {
  int radius = 200;                   // lattice box truncation
  double r_max = 6.0;                 // hyperbolic radial cutoff
  int nodes = 256;                    // Fourier extraction nodes
  std::int64_t mc_samples = 1000000;  // Monte Carlo sample count
  std::uint64_t seed = 20240601;      // Monte Carlo seed
  double tol = 1e-8;                  // relative tolerance

  void validate() const;
};

}  // namespace kudla
