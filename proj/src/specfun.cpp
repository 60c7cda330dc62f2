#include "pdm/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace pdm {

namespace {

using cd = std::complex<double>;

constexpr int kWeidemanN = 40;

// Coefficients of Weideman's rational approximation to w(z), built once by a
// direct DFT of the sampled kernel.
struct WeidemanTable {
  double L;
  std::array<double, kWeidemanN> c;

  WeidemanTable() {
    constexpr int M = 2 * kWeidemanN;
    constexpr int M2 = 2 * M;
    L = std::sqrt(kWeidemanN / std::sqrt(2.0));
    std::array<double, M2> f{};
    f[0] = 0.0;
    for (int k = -M + 1; k <= M - 1; ++k) {
      const double t = L * std::tan(k * std::numbers::pi / (2.0 * M));
      f[static_cast<std::size_t>(k + M)] = std::exp(-t * t) * (L * L + t * t);
    }
    std::array<double, M2> shifted{};
    for (int i = 0; i < M2; ++i) shifted[i] = f[(i + M) % M2];
    for (int j = 1; j <= kWeidemanN; ++j) {
      double re = 0.0;
      for (int i = 0; i < M2; ++i) {
        re += shifted[i] * std::cos(2.0 * std::numbers::pi * i * j / M2);
      }
      c[j - 1] = re / M2;
    }
  }
};

const WeidemanTable& weideman() {
  static const WeidemanTable table;
  return table;
}

cd w_upper(cd z) {
  const auto& t = weideman();
  const cd iz(-z.imag(), z.real());
  const cd denom = t.L - iz;
  const cd Z = (t.L + iz) / denom;
  cd p(0.0);
  for (int j = kWeidemanN - 1; j >= 0; --j) p = p * Z + t.c[j];
  return 2.0 * p / (denom * denom) + 1.0 / (std::sqrt(std::numbers::pi) * denom);
}

cd erf_series(cd z) {
  const cd z2 = z * z;
  cd term = z;
  cd sum = z;
  for (int n = 1; n < 200; ++n) {
    term *= -z2 / static_cast<double>(n);
    const cd add = term / static_cast<double>(2 * n + 1);
    sum += add;
    if (std::abs(add) <= 1e-17 * std::abs(sum)) break;
  }
  return 2.0 / std::sqrt(std::numbers::pi) * sum;
}

// First quadrant only.
cd erf_first_quadrant(cd z) {
  if (std::abs(z) < 2.0) return erf_series(z);
  const cd iz(-z.imag(), z.real());
  return 1.0 - std::exp(-z * z) * w_upper(iz);
}

}  // namespace

PolarAngle polar_angle(std::complex<double> z) {
  if (z == std::complex<double>(0.0)) throw DomainError("polar angle of zero is undefined");
  double t = std::atan2(z.imag(), z.real());
  if (t < 0.0) t += 2.0 * std::numbers::pi;
  if (t >= 2.0 * std::numbers::pi) t = 0.0;
  return {t};
}

std::complex<double> sqrt_conventional(std::complex<double> z, PolarAngle theta) {
  return std::sqrt(std::abs(z)) * std::polar(1.0, 0.5 * theta.value);
}

std::complex<double> sqrt_conventional(std::complex<double> z) {
  if (z == std::complex<double>(0.0)) return 0.0;
  return sqrt_conventional(z, polar_angle(z));
}

std::complex<double> faddeeva_w(std::complex<double> z) {
  if (z.imag() >= 0.0) return w_upper(z);
  return 2.0 * std::exp(-z * z) - w_upper(-z);
}

std::complex<double> erf_complex(std::complex<double> z) {
  const double x = z.real(), y = z.imag();
  if (!(std::abs(x) <= kErfWindow) || !(std::abs(y) <= kErfWindow)) {
    throw DomainError("erf_complex argument outside the validated window");
  }
  const cd r = erf_first_quadrant(cd(std::abs(x), std::abs(y)));
  if (!std::isfinite(r.real()) || !std::isfinite(r.imag())) {
    throw DomainError("erf_complex value overflows double precision");
  }
  const bool upper = !std::signbit(y);
  if (!std::signbit(x)) return upper ? r : std::conj(r);
  return upper ? -std::conj(r) : -r;
}

}  // namespace pdm
