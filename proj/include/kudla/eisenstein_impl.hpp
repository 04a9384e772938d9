#pragma once

#include <numbers>

namespace kudla::eisenstein {

template <class F>
std::complex<double> extract_coefficient(const F& f, double v, std::int64_t m, int nodes) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  std::complex<double> sum{0.0, 0.0};
  for (int k = 0; k < nodes; ++k) {
    const double u = static_cast<double>(k) / nodes;
    const double phase = -two_pi * static_cast<double>(m) * u;
    sum += std::complex<double>(f(u)) * std::complex<double>(std::cos(phase), std::sin(phase));
  }
  // coefficient of e(mu) is a(v, s, m) e^{-2 pi m v}
  return sum / static_cast<double>(nodes) * std::exp(two_pi * static_cast<double>(m) * v);
}

}  // namespace kudla::eisenstein
