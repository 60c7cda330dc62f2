#pragma once

// Reference computations used by the tests. Each one is built from elementary
// formulas and does not call into the library under test.

#include <array>
#include <cmath>
#include <complex>
#include <numbers>

namespace oracle {

using Complex = std::complex<double>;

/// Composite 10-point Gauss-Legendre over `panels` equal panels of [a, b].
template <typename F>
Complex gauss10(F&& f, double a, double b, int panels) {
  static constexpr std::array<double, 5> x = {0.1488743389816312, 0.4333953941292472, 0.6794095682990244,
                                              0.8650633666889845, 0.9739065285171717};
  static constexpr std::array<double, 5> w = {0.2955242247147529, 0.2692667193099963, 0.2190863625159820,
                                              0.1494513491505806, 0.0666713443086881};
  const double h = (b - a) / panels;
  Complex total(0.0);
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h, half = 0.5 * h;
    Complex s(0.0);
    for (std::size_t k = 0; k < 5; ++k) s += w[k] * (Complex(f(mid - half * x[k])) + Complex(f(mid + half * x[k])));
    total += half * s;
  }
  return total;
}

/// erf(z) = 2z/sqrt(pi) * integral_0^1 exp(-z^2 t^2) dt along the straight segment.
inline Complex erf_straight_path(Complex z) {
  const Complex z2 = z * z;
  const int panels = 40 + static_cast<int>(2.0 * std::norm(z));
  const Complex I = gauss10([&](double t) { return std::exp(-z2 * t * t); }, 0.0, 1.0, panels);
  return 2.0 * z / std::sqrt(std::numbers::pi) * I;
}

/// Physicists' Hermite polynomials from their monomial expansions, n <= 5.
inline Complex hermite_monomial(int n, Complex x) {
  switch (n) {
    case 0: return 1.0;
    case 1: return 2.0 * x;
    case 2: return 4.0 * x * x - 2.0;
    case 3: return 8.0 * x * x * x - 12.0 * x;
    case 4: return 16.0 * std::pow(x, 4) - 48.0 * x * x + 12.0;
    case 5: return 32.0 * std::pow(x, 5) - 160.0 * std::pow(x, 3) + 120.0 * x;
    default: return std::nan("");
  }
}

/// Normalized harmonic-oscillator eigenfunction (m = hbar = omega = 1), n <= 5.
inline double ho_state(int n, double x) {
  const double fact = std::tgamma(n + 1.0);
  const double norm = 1.0 / std::sqrt(std::pow(2.0, n) * fact * std::sqrt(std::numbers::pi));
  return norm * hermite_monomial(n, x).real() * std::exp(-0.5 * x * x);
}

/// Fourth-order central difference of a scalar function.
template <typename F>
auto central_diff(F&& f, double x, double h) {
  return (f(x - 2 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2 * h)) / (12.0 * h);
}

}  // namespace oracle
