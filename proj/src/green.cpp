#include "kudla/green.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <thread>
#include <vector>

#include "kudla/arith.hpp"
#include "kudla/quadrature.hpp"
#include "kudla/specfun.hpp"

namespace kudla::green {

namespace {

constexpr double pi = std::numbers::pi;

// E1 underflows to zero past this argument.
constexpr double kUnderflowArgument = 745.0;

void require_nonzero(std::int64_t m, const char* what) {
  if (m == 0) throw std::domain_error(std::string(what) + ": m must be nonzero");
}

void require_positive_v(double v, const char* what) {
  if (!(v > 0.0)) throw std::domain_error(std::string(what) + ": v must be positive");
}

double majorant(const SurfacePoint& z, std::int64_t a, std::int64_t b, std::int64_t c,
                std::int64_t d) {
  const std::complex<double> z1 = z.z1();
  const std::complex<double> z2 = z.z2();
  const std::complex<double> w = static_cast<double>(a) + static_cast<double>(c) * z1 +
                                 static_cast<double>(b) * z2 + static_cast<double>(d) * z1 * z2;
  return std::norm(w) / (2.0 * z.y1 * z.y2);
}

double kernel_from_r(double v, double r, std::int64_t a, std::int64_t b, std::int64_t c,
                     std::int64_t d) {
  if (r == 0.0)
    throw SingularityError("point lies on the cycle of M = " + kudla::to_string(make_matrix(a, b, c, d)));
  const double x = 2.0 * pi * v * r;
  return x > kUnderflowArgument ? 0.0 : specfun::exp_integral_e1(x);
}

double weight(XiNormalization norm) { return norm == XiNormalization::projective ? 0.25 : 0.5; }

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

double majorant_r(const SurfacePoint& z, const LatticeMatrix& M) {
  return majorant(z, M(0, 0), M(0, 1), M(1, 0), M(1, 1));
}

double xi_kernel(double v, const SurfacePoint& z, const LatticeMatrix& M) {
  require_positive_v(v, "xi_kernel");
  return kernel_from_r(v, majorant_r(z, M), M(0, 0), M(0, 1), M(1, 0), M(1, 1));
}

XiSum big_xi(double v, const SurfacePoint& z, std::int64_t m, const QuadratureSpec& spec,
             XiNormalization norm) {
  require_positive_v(v, "big_xi");
  require_nonzero(m, "big_xi");
  spec.validate();
  const std::int64_t radius = spec.radius;
  const std::int64_t inner = radius / 2;
  const double w = weight(norm);
  XiSum out;
  arith::for_each_lattice_matrix(m, radius, [&](const LatticeMatrix& M) {
    ++out.terms;
    const double term = w * xi_kernel(v, z, M);
    out.value += term;
    if (M.cwiseAbs().maxCoeff() > inner) out.tail += term;
  });
  return out;
}

XiSum big_xi_windowed(double v, const SurfacePoint& z, std::int64_t m, double cutoff,
                       XiNormalization norm) {
  require_positive_v(v, "big_xi_windowed");
  require_nonzero(m, "big_xi_windowed");
  if (!(cutoff > 0.0)) throw std::domain_error("big_xi_windowed: cutoff must be positive");
  const double w = weight(norm);
  XiSum out;
  const double r_cut = cutoff / (2.0 * pi * v);
  const double md = static_cast<double>(m);
  if (r_cut + 2.0 * md < 0.0) return out;

  // |A + B z2|^2 = 2 y1 y2 R and |A + B conj(z2)|^2 = 2 y1 y2 (R + 2m) with
  // A = a + c z1, B = b + d z1; their difference bounds |B|.
  const double p = 2.0 * z.y1 * z.y2;
  const double rho1 = std::sqrt(p * r_cut);
  const double rho2 = std::sqrt(p * (r_cut + 2.0 * md));
  const double beta = (rho1 + rho2) / (2.0 * z.y2);
  constexpr double pad = 1e-9;
  const std::complex<double> z1 = z.z1();
  const std::complex<double> z2 = z.z2();

  auto visit = [&](std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
    const double r = majorant(z, a, b, c, d);
    if (r > r_cut) return;
    ++out.terms;
    out.value += w * kernel_from_r(v, r, a, b, c, d);
  };

  const auto d_max = static_cast<std::int64_t>(std::floor(beta / z.y1 + pad));
  for (std::int64_t d = -d_max; d <= d_max; ++d) {
    const double dd = static_cast<double>(d);
    const double width = std::sqrt(std::max(0.0, beta * beta - dd * dd * z.y1 * z.y1));
    const auto b_lo = static_cast<std::int64_t>(std::ceil(-dd * z.x1 - width - pad));
    const auto b_hi = static_cast<std::int64_t>(std::floor(-dd * z.x1 + width + pad));
    for (std::int64_t b = b_lo; b <= b_hi; ++b) {
      const std::complex<double> bz2 = (static_cast<double>(b) + dd * z1) * z2;
      const auto c_lo = static_cast<std::int64_t>(std::ceil((-rho1 - bz2.imag()) / z.y1 - pad));
      const auto c_hi = static_cast<std::int64_t>(std::floor((rho1 - bz2.imag()) / z.y1 + pad));
      for (std::int64_t c = c_lo; c <= c_hi; ++c) {
        if (d != 0) {
          const std::int64_t num = m + b * c;
          if (num % d != 0) continue;
          visit(num / d, b, c, d);
          continue;
        }
        if (b * c != -m) continue;
        const double im = static_cast<double>(c) * z.y1 + bz2.imag();
        const double re_width = std::sqrt(std::max(0.0, rho1 * rho1 - im * im));
        const double shift = static_cast<double>(c) * z.x1 + bz2.real();
        const auto a_lo = static_cast<std::int64_t>(std::ceil(-shift - re_width - pad));
        const auto a_hi = static_cast<std::int64_t>(std::floor(-shift + re_width + pad));
        for (std::int64_t a = a_lo; a <= a_hi; ++a) visit(a, b, c, 0);
      }
    }
  }
  return out;
}

double green_integral_closed(double v, std::int64_t m) {
  require_positive_v(v, "green_integral_closed");
  require_nonzero(m, "green_integral_closed");
  const double abs_m = static_cast<double>(m < 0 ? -m : m);
  const double base = static_cast<double>(arith::sigma(m)) * (pi / 3.0) / (2.0 * v * abs_m);
  if (m > 0) return base;
  // e^{-x} + x Ei(-x) = E_2(x)
  return base * specfun::exp_integral_en(2.0, 4.0 * pi * v * abs_m);
}

ReducedResult reduced_integral_quadrature(double v, std::int64_t m, const QuadratureSpec& spec,
                                          const Precision& prec) {
  require_positive_v(v, "reduced_integral_quadrature");
  require_nonzero(m, "reduced_integral_quadrature");
  spec.validate();
  prec.validate();
  const double a = 2.0 * pi * v * static_cast<double>(m < 0 ? -m : m);
  const quad::Options opts{std::max(prec.effective_rel_tol(), 1e-13), prec.abs_tol, 4000};
  // cosh r - 1 without cancellation
  auto cosh_minus_one = [](double r) {
    const double h = std::sinh(0.5 * r);
    return 2.0 * h * h;
  };
  const double t_max = cosh_minus_one(spec.r_max);

  ReducedResult out;
  double tail = 0.0;
  if (m > 0) {
    constexpr double r0 = 1e-2;
    const double t0 = cosh_minus_one(r0);
    const double gamma = std::numbers::egamma;
    // E1(x) = -gamma - log x + Ein(x); the logarithm integrates in closed form
    // in t = cosh r - 1, dt = sinh r dr.
    const double log_part = t0 * (1.0 - gamma - std::log(a * t0));
    const auto ein_part = quad::integrate(
        [&](double t) { return specfun::exp_integral_ein(a * t); }, 0.0, t0, opts);
    const auto outer = quad::integrate(
        [&](double r) {
          const double x = a * cosh_minus_one(r);
          return x > kUnderflowArgument ? 0.0 : specfun::exp_integral_e1(x) * std::sinh(r);
        },
        r0, spec.r_max, opts);
    out.value = 2.0 * pi * (log_part + ein_part.value + outer.value);
    out.error_bound = 2.0 * pi * (ein_part.error + outer.error);
    tail = 2.0 * pi * specfun::exp_integral_en(2.0, a * t_max) / a;
  } else {
    const auto body = quad::integrate(
        [&](double r) {
          const double x = a * (cosh_minus_one(r) + 2.0);
          return x > kUnderflowArgument ? 0.0 : specfun::exp_integral_e1(x) * std::sinh(r);
        },
        0.0, spec.r_max, opts);
    out.value = 2.0 * pi * body.value;
    out.error_bound = 2.0 * pi * body.error;
    tail = 2.0 * pi * specfun::exp_integral_en(2.0, a * (t_max + 2.0)) / a;
  }
  if (tail > spec.tol * std::abs(out.value))
    throw std::runtime_error("reduced_integral_quadrature: tail beyond r_max = " +
                             std::to_string(spec.r_max) + " is " + std::to_string(tail) +
                             ", above the requested tolerance");
  out.error_bound += tail;
  return out;
}

double reduced_integral_expected(double v, std::int64_t m) {
  require_positive_v(v, "reduced_integral_expected");
  require_nonzero(m, "reduced_integral_expected");
  const double abs_m = static_cast<double>(m < 0 ? -m : m);
  if (m > 0) return 1.0 / (v * abs_m);
  return specfun::exp_integral_en(2.0, 4.0 * pi * v * abs_m) / (v * abs_m);
}

double assemble_from_reduced(std::int64_t m, double reduced) {
  // the psi(m/n^2) copies of Gamma_0(m/n^2)\H add up to sigma(|m|) copies of
  // the volume pi/3
  return 0.5 * static_cast<double>(arith::sigma(m)) * (pi / 3.0) * reduced;
}

MonteCarloResult green_integral_monte_carlo(double v, std::int64_t m, const QuadratureSpec& spec,
                                            XiNormalization norm) {
  require_positive_v(v, "green_integral_monte_carlo");
  require_nonzero(m, "green_integral_monte_carlo");
  spec.validate();
  if (spec.mc_samples < 10000)
    throw ConfigurationError("green_integral_monte_carlo: needs at least 10^4 samples");

  struct Shard {
    double sum = 0.0;
    double sum_sq = 0.0;
    std::int64_t count = 0;
    std::int64_t resampled = 0;
    std::int64_t beyond_cap = 0;
  };
  std::vector<Shard> shards(kMonteCarloShards);

  auto run_shard = [&](int index) {
    std::uint64_t state = spec.seed ^ (0xd1b54a32d192ed03ULL * static_cast<std::uint64_t>(index + 1));
    std::mt19937_64 engine(splitmix64(state));
    auto uniform = [&engine] { return static_cast<double>(engine() >> 11) * 0x1.0p-53; };
    // point of the fundamental domain distributed as dmu / (pi/3)
    auto sample = [&](double& x, double& y) {
      const double theta = pi / 3.0 * (uniform() - 0.5);
      x = std::sin(theta);
      y = std::cos(theta) / (1.0 - uniform());
    };
    Shard& out = shards[static_cast<std::size_t>(index)];
    const std::int64_t n = spec.mc_samples / kMonteCarloShards +
                           (index < spec.mc_samples % kMonteCarloShards ? 1 : 0);
    for (std::int64_t k = 0; k < n; ++k) {
      double value = 0.0;
      for (;;) {
        double x1, y1, x2, y2;
        sample(x1, y1);
        sample(x2, y2);
        if (y1 > kMonteCarloYCap || y2 > kMonteCarloYCap) {
          ++out.beyond_cap;
          value = 0.0;
          break;
        }
        try {
          value = big_xi_windowed(v, SurfacePoint(x1, y1, x2, y2), m, 40.0, norm).value;
          break;
        } catch (const SingularityError&) {
          ++out.resampled;
        }
      }
      out.sum += value;
      out.sum_sq += value * value;
      ++out.count;
    }
  };

  const unsigned workers = std::max(1U, std::min<unsigned>(std::thread::hardware_concurrency(),
                                                           kMonteCarloShards));
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (int i = static_cast<int>(w); i < kMonteCarloShards; i += static_cast<int>(workers))
        run_shard(i);
    });
  }
  for (auto& t : pool) t.join();

  MonteCarloResult res;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (const auto& s : shards) {
    sum += s.sum;
    sum_sq += s.sum_sq;
    res.samples += s.count;
    res.resampled += s.resampled;
    res.beyond_cap += s.beyond_cap;
  }
  const double n = static_cast<double>(res.samples);
  const double mean = sum / n;
  const double variance = std::max(0.0, (sum_sq / n - mean * mean) * n / (n - 1.0));
  const double volume_sq = (pi / 3.0) * (pi / 3.0);
  res.estimate = volume_sq * mean;
  res.std_error = volume_sq * std::sqrt(variance / n);
  return res;
}

std::string to_string(Method method) {
  switch (method) {
    case Method::closed: return "closed";
    case Method::reduced: return "reduced";
    case Method::mc: return "mc";
  }
  return "closed";
}

Method parse_method(const std::string& name) {
  if (name == "closed") return Method::closed;
  if (name == "reduced") return Method::reduced;
  if (name == "mc") return Method::mc;
  throw ConfigurationError("unknown method '" + name + "' (expected closed, reduced or mc)");
}

GreenResult green_integral(double v, std::int64_t m, Method method, const QuadratureSpec& spec,
                           const Precision& prec) {
  GreenResult out;
  out.m = m;
  out.v = v;
  out.method = method;
  out.spec = spec;
  switch (method) {
    case Method::closed:
      out.value = green_integral_closed(v, m);
      out.error_bound = 0.0;
      break;
    case Method::reduced: {
      const auto r = reduced_integral_quadrature(v, m, spec, prec);
      out.value = assemble_from_reduced(m, r.value);
      out.error_bound = assemble_from_reduced(m, r.error_bound);
      break;
    }
    case Method::mc: {
      const auto r = green_integral_monte_carlo(v, m, spec);
      out.value = r.estimate;
      out.error_bound = 3.0 * r.std_error;
      break;
    }
  }
  return out;
}

}  // namespace kudla::green
