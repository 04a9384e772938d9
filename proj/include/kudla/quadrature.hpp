#pragma once

// Adaptive Gauss-Kronrod (7,15) integration and fixed Gauss-Legendre rules.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include <Eigen/Dense>

namespace kudla::quad {

struct Options {
  double rel_tol = 1e-12;
  double abs_tol = 0.0;
  int max_intervals = 4000;
};

struct Result {
  double value = 0.0;
  double error = 0.0;
  int intervals = 0;
  bool converged = false;
};

namespace detail {

inline constexpr std::array<double, 8> kronrod_nodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

inline constexpr std::array<double, 8> kronrod_weights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

// Gauss weights for the odd-indexed Kronrod nodes (and the centre).
inline constexpr std::array<double, 4> gauss_weights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& other) const { return error < other.error; }
};

template <class F>
Segment gk15(const F& f, double a, double b) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(centre);
  double kronrod = fc * kronrod_weights[7];
  double gauss = fc * gauss_weights[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kronrod_nodes[j];
    const double pair = f(centre - dx) + f(centre + dx);
    kronrod += kronrod_weights[j] * pair;
    if (j % 2 == 1) gauss += gauss_weights[j / 2] * pair;
  }
  kronrod *= half;
  gauss *= half;
  return {a, b, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace detail

/// Adaptive integration of f over the finite interval [a, b]. Integrable
/// endpoint singularities are fine: nodes never touch the endpoints.
template <class F>
Result integrate(const F& f, double a, double b, const Options& opts = {}) {
  if (a == b) return {0.0, 0.0, 0, true};
  if (a > b) {
    Result r = integrate(f, b, a, opts);
    r.value = -r.value;
    return r;
  }
  constexpr double eps = std::numeric_limits<double>::epsilon();
  std::priority_queue<detail::Segment> heap;
  auto first = detail::gk15(f, a, b);
  heap.push(first);
  double total = first.value;
  double error = first.error;
  int intervals = 1;
  auto done = [&] {
    const double target = std::max(opts.abs_tol, opts.rel_tol * std::abs(total));
    return error <= target || error <= 50.0 * eps * std::abs(total);
  };
  while (!done() && intervals < opts.max_intervals) {
    auto worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) break;  // interval exhausted
    heap.pop();
    auto left = detail::gk15(f, worst.a, mid);
    auto right = detail::gk15(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++intervals;
  }
  // Re-sum to shed accumulated cancellation in the running totals.
  total = 0.0;
  error = 0.0;
  while (!heap.empty()) {
    total += heap.top().value;
    error += heap.top().error;
    heap.pop();
  }
  const double target = std::max(opts.abs_tol, opts.rel_tol * std::abs(total));
  return {total, error, intervals, error <= target || error <= 50.0 * eps * std::abs(total)};
}

/// Integral over [a, inf) through x = a + t/(1-t).
template <class F>
Result integrate_to_infinity(const F& f, double a, const Options& opts = {}) {
  auto g = [&](double t) {
    const double one_minus = 1.0 - t;
    const double x = a + t / one_minus;
    const double fx = f(x);
    return fx == 0.0 ? 0.0 : fx / (one_minus * one_minus);
  };
  return integrate(g, 0.0, 1.0, opts);
}

/// Integral over the whole real line through x = t/(1-t^2).
template <class F>
Result integrate_real_line(const F& f, const Options& opts = {}) {
  auto g = [&](double t) {
    const double d = 1.0 - t * t;
    const double x = t / d;
    const double fx = f(x);
    return fx == 0.0 ? 0.0 : fx * (1.0 + t * t) / (d * d);
  };
  return integrate(g, -1.0, 1.0, opts);
}

/// n-point Gauss-Legendre rule on [-1, 1] by the Golub-Welsch eigenproblem.
struct GaussLegendre {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;

  explicit GaussLegendre(int n) {
    Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k < n; ++k) {
      const double beta = k / std::sqrt(4.0 * k * k - 1.0);
      jacobi(k, k - 1) = beta;
      jacobi(k - 1, k) = beta;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
    nodes = solver.eigenvalues();
    weights = 2.0 * solver.eigenvectors().row(0).transpose().array().square();
  }

  template <class F>
  double operator()(const F& f, double a, double b) const {
    const double half = 0.5 * (b - a);
    const double centre = 0.5 * (a + b);
    double sum = 0.0;
    for (Eigen::Index k = 0; k < nodes.size(); ++k) sum += weights[k] * f(centre + half * nodes[k]);
    return half * sum;
  }
};

}  // namespace kudla::quad
