#pragma once

// Complex special functions: Hermite polynomials, the complex error function
// and the [0, 2pi) branch convention used for every square root of lambda.

#include <complex>
#include <vector>

#include "pdm/errors.hpp"

namespace pdm {

/// Polar angle of a nonzero complex number, taken in [0, 2pi).
struct PolarAngle {
  double value = 0.0;
};

/// Throws DomainError for z == 0.
PolarAngle polar_angle(std::complex<double> z);

/// sqrt(|z|) * exp(i*theta/2) with theta in [0, 2pi). This is not the
/// principal branch when theta lies in (pi, 2pi).
std::complex<double> sqrt_conventional(std::complex<double> z, PolarAngle theta);
std::complex<double> sqrt_conventional(std::complex<double> z);

inline constexpr int kHermiteMaxDegree = 200;

/// Physicists' Hermite polynomials H_0..H_n at xi by forward recurrence.
template <typename Scalar>
std::vector<Scalar> hermite_all(int n, Scalar xi) {
  if (n < 0 || n > kHermiteMaxDegree) throw DomainError("hermite degree must lie in [0, 200]");
  std::vector<Scalar> h(static_cast<std::size_t>(n) + 1);
  h[0] = Scalar(1);
  if (n >= 1) h[1] = Scalar(2) * xi;
  for (int k = 1; k < n; ++k) {
    h[k + 1] = Scalar(2) * xi * h[k] - Scalar(2.0 * k) * h[k - 1];
  }
  return h;
}

template <typename Scalar>
Scalar hermite(int n, Scalar xi) {
  if (n < 0 || n > kHermiteMaxDegree) throw DomainError("hermite degree must lie in [0, 200]");
  Scalar prev(1);
  if (n == 0) return prev;
  Scalar cur = Scalar(2) * xi;
  for (int k = 1; k < n; ++k) {
    Scalar next = Scalar(2) * xi * cur - Scalar(2.0 * k) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

/// Half-width of the square window |Re z|, |Im z| <= kErfWindow on which
/// erf_complex is validated.
inline constexpr double kErfWindow = 27.0;

/// erf(z) = 2/sqrt(pi) * integral_0^z exp(-t^2) dt. Taylor series near the
/// origin, Faddeeva rational approximation elsewhere. Throws DomainError outside
/// the window or when the value overflows double precision.
std::complex<double> erf_complex(std::complex<double> z);

/// Faddeeva function w(z) = exp(-z^2) erfc(-iz) for Im z >= 0.
std::complex<double> faddeeva_w(std::complex<double> z);

}  // namespace pdm
