#pragma once

// The completed real-analytic Eisenstein series E*(tau, s), its weight-two
// descendant E_2(tau, s) = (1/2 pi i) d/dtau E*, and the Fourier coefficients
// of E_2 and of the modified series -12 psi(s) E_2 at s = 1.

#include <complex>
#include <cstdint>
#include <map>
#include <string>

#include "kudla/types.hpp"

namespace kudla::eisenstein {

/// Spectral parameter of the Eisenstein series (real s only).
struct SpectralParam {
  double s = 1.5;
};

enum class LatticeTail {
  none,             // bare box truncation, error O(radius^{2-2s})
  euler_maclaurin,  // rows centred on -cu, plus integral estimates of the omitted tails
};

/// E*(tau, s) from the defining lattice sum over |c|, |d| <= radius. Needs s > 1.
double e_star_lattice(const TauPoint& tau, SpectralParam s, int radius,
                      LatticeTail tail = LatticeTail::euler_maclaurin);

/// E*(tau, s) from its Fourier development, |n| <= n_terms.
double e_star_fourier(const TauPoint& tau, SpectralParam s, int n_terms);

/// c_0(v, s) = v^s zeta*(2s) + v^{1-s} zeta*(2s-1).
double c0(double v, double s);

/// d/dv c_0(v, s) = s v^{s-1} zeta*(2s) + (1-s) v^{-s} zeta*(2s-1); the
/// removable singularity at s = 1 is evaluated as its limit.
double c0_check(double v, double s);

/// c_m(v, s) = 2 sigma*_{s-1/2}(|m|) (v|m|pi)^s / (Gamma(s) sqrt|m|).
double cm(double v, double s, std::int64_t m);

/// I_m(v, s) = int_1^inf e^{-alpha r}(r^2-1)^{s-1} dr and J_m(v, s) (extra factor r),
/// alpha = 2 pi |m| v, through K-Bessel closed forms.
double i_m(double v, double s, std::int64_t m);
double j_m(double v, double s, std::int64_t m);

struct AppendixIntegrals {
  double I_m1;        // I_m(v, 1)
  double J_m1;        // J_m(v, 1)
  double I_m1_prime;  // d/ds I_m(v, s) at s = 1
  double J_m1_prime;  // d/ds J_m(v, s) at s = 1
};

/// The four s = 1 closed forms.
AppendixIntegrals appendix_integrals(double v, std::int64_t m);

struct ConstantTerm {
  double c0_check;        // value at s = 1
  double c0_check_prime;  // s-derivative at s = 1
};

/// Closed forms of c0_check and its s-derivative at s = 1.
ConstantTerm constant_term(double v);

/// Sign convention for sigma'(m)/sigma(m) in a'(v, 1, m), m > 0.
enum class SigmaPrimeSign {
  analytic,      // true nu-derivative of sigma*_nu at nu = 1/2
  as_displayed,  // opposite sign; kept only to demonstrate it breaks the identity
};

/// a(v, 1, m).
double coeff_a(double v, std::int64_t m);

/// a'(v, 1, m).
double coeff_a_prime(double v, std::int64_t m, SigmaPrimeSign sign = SigmaPrimeSign::analytic);

struct ModifiedCoefficients {
  double A;
  double A_prime;
};

/// A(v,1,m) = 12 a and A'(v,1,m) = -48(zeta'(-1)/zeta(-1) + 1/2) a + 12 a'.
ModifiedCoefficients coeff_A_and_A_prime(double v, std::int64_t m,
                                         SigmaPrimeSign sign = SigmaPrimeSign::analytic);

/// Closed Fourier form of E_2(tau, s) assembled from c0_check, c_m, I_m, J_m.
std::complex<double> e2_fourier(const TauPoint& tau, SpectralParam s, int n_terms);

/// E_2(tau, s) = (-1/4 pi)(d_v + i d_u) E*(tau, s) by central differences of
/// the lattice sum (step h in both directions).
std::complex<double> e2_from_lattice(const TauPoint& tau, SpectralParam s, int radius, double h);

/// m-th Fourier coefficient a(v, s, m) of a 1-periodic function of u, normalised
/// so that f = sum a(v, s, m) q^m, by the trapezoidal rule with `nodes` points.
template <class F>
std::complex<double> extract_coefficient(const F& f, double v, std::int64_t m, int nodes);

// ---------------------------------------------------------------------------
// Coefficient table
// ---------------------------------------------------------------------------

struct CoefficientEntry {
  double a = 0.0;
  double a_prime = 0.0;
  double A = 0.0;
  double A_prime = 0.0;
};

struct CoefficientTable {
  double v = 1.0;
  std::map<std::int64_t, CoefficientEntry> entries;

  /// Rows for m in [-m_max, m_max].
  static CoefficientTable build(double v, std::int64_t m_max);

  /// A = 12 a and A' = -48(...)a + 12 a' for every entry, to `tol` relative.
  [[nodiscard]] bool consistent(double tol = 1e-12) const;
};

}  // namespace kudla::eisenstein

#include "kudla/eisenstein_impl.hpp"
