#pragma once

// Green function attached to the Hecke correspondences T(m) on X(1) x X(1)
// and its integral over the surface.

#include <cstdint>
#include <string>

#include "kudla/types.hpp"

namespace kudla::green {

/// R(z, M) = |a + c z1 + b z2 + d z1 z2|^2 / (2 y1 y2) for M = (a b; c d).
double majorant_r(const SurfacePoint& z, const LatticeMatrix& M);

/// xi(v, z, M) = int_1^inf e^{-2 pi v R u} du/u = E1(2 pi v R). Throws
/// SingularityError when R = 0.
double xi_kernel(double v, const SurfacePoint& z, const LatticeMatrix& M);

/// Weight of the matrix sum in Xi.
///   projective:   (1/2) sum over det-m matrices up to sign, i.e. 1/4 of the full
///                 sum; its surface integral is the closed form I_m (default)
///   all_matrices: (1/2) sum over every det-m matrix; integrates to 2 I_m
enum class XiNormalization { projective, all_matrices };

struct XiSum {
  double value = 0.0;
  double tail = 0.0;       // part of `value` from matrices with max entry > radius/2
  std::int64_t terms = 0;  // matrices visited
};

/// Xi(v, z, m) = (1/2) sum_{det M = m} xi(v, z, M) over the box |entries| <= spec.radius,
/// with M and -M identified unless `norm` says otherwise.
XiSum big_xi(double v, const SurfacePoint& z, std::int64_t m, const QuadratureSpec& spec,
             XiNormalization norm = XiNormalization::projective);

/// Same sum restricted to R <= cutoff / (2 pi v), enumerated directly from the
/// bound |a + c z1 + b z2 + d z1 z2| <= sqrt(2 y1 y2 R) instead of a box. Terms
/// left out are below E1(cutoff) each.
XiSum big_xi_windowed(double v, const SurfacePoint& z, std::int64_t m, double cutoff = 40.0,
                       XiNormalization norm = XiNormalization::projective);

/// I_m(v) = int Xi(v, z, m) dmu(z) in closed form.
double green_integral_closed(double v, std::int64_t m);

struct ReducedResult {
  double value = 0.0;
  double error_bound = 0.0;  // quadrature estimate plus the tail beyond r_max
};

/// The one-variable integral left after unfolding, in hyperbolic polar
/// coordinates around the fixed point:
///   m > 0: 2 pi int_0^{r_max} E1(2 pi v m (cosh r - 1)) sinh r dr   (exact value 1/(vm))
///   m < 0: 2 pi int_0^{r_max} E1(2 pi v |m| (cosh r + 1)) sinh r dr
/// Throws std::runtime_error if the tail beyond r_max exceeds spec.tol.
ReducedResult reduced_integral_quadrature(double v, std::int64_t m, const QuadratureSpec& spec,
                                          const Precision& prec = {});

/// Exact value of the reduced integral.
double reduced_integral_expected(double v, std::int64_t m);

/// I_m from the reduced integral: (1/2) sigma(|m|) (pi/3) times it.
double assemble_from_reduced(std::int64_t m, double reduced);

struct MonteCarloResult {
  double estimate = 0.0;
  double std_error = 0.0;
  std::int64_t samples = 0;
  std::int64_t resampled = 0;  // points that fell on a cycle
  std::int64_t beyond_cap = 0;  // points with y above the cusp cap, counted as zero
};

/// Number of independent shards of the Monte Carlo stream. Fixed, so the
/// estimate does not depend on the number of threads.
inline constexpr int kMonteCarloShards = 64;

/// Cusp cap on y1, y2 for the Monte Carlo route.
inline constexpr double kMonteCarloYCap = 1.0e5;

/// I_m(v) by sampling (z1, z2) from dmu x dmu on the fundamental domain squared.
MonteCarloResult green_integral_monte_carlo(double v, std::int64_t m, const QuadratureSpec& spec,
                                            XiNormalization norm = XiNormalization::projective);

enum class Method { closed, reduced, mc };

std::string to_string(Method method);
Method parse_method(const std::string& name);

/// Serializable outcome of one Green-integral evaluation.
struct GreenResult {
  std::int64_t m = 1;
  double v = 1.0;
  Method method = Method::closed;
  double value = 0.0;
  double error_bound = 0.0;
  QuadratureSpec spec;
};

/// I_m(v) through the chosen route.
GreenResult green_integral(double v, std::int64_t m, Method method, const QuadratureSpec& spec,
                           const Precision& prec = {});

}  // namespace kudla::green
