#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "pdm/specfun.hpp"

using namespace pdm;
using Complex = std::complex<double>;
using std::numbers::pi;

TEST_CASE("hermite values") {
  CHECK(hermite(0, Complex(3.0, -2.0)) == Complex(1.0));
  CHECK(std::abs(hermite(2, Complex(0.0, 1.0)) - Complex(-6.0)) < 1e-15);
  for (int n = 0; n <= 5; ++n) {
    CHECK(hermite(n, 1.3) == doctest::Approx(oracle::hermite_monomial(n, 1.3).real()).epsilon(1e-14));
    const Complex xi(0.7, -1.1);
    CHECK(std::abs(hermite(n, xi) - oracle::hermite_monomial(n, xi)) < 1e-12 * (1.0 + std::abs(hermite(n, xi))));
  }
  const auto all = hermite_all(7, Complex(0.4, 0.2));
  CHECK(std::abs(all[7] - hermite(7, Complex(0.4, 0.2))) == 0.0);
  CHECK_THROWS_AS(hermite(201, 1.0), DomainError);
  CHECK_THROWS_AS(hermite(-1, 1.0), DomainError);
  CHECK_NOTHROW(hermite(200, 0.5));
}

TEST_CASE("hermite derivative identity H_n' = 2n H_(n-1)") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int k = 0; k < 20; ++k) {
    const Complex xi(u(rng), u(rng));
    for (int n = 1; n <= 20; ++n) {
      // Complex-step style: H_n is analytic, so a real-direction difference suffices.
      const double h = 1e-3;
      auto H = [&](double t) { return hermite(n, xi + t); };
      const Complex d = oracle::central_diff(H, 0.0, h);
      const Complex expect = 2.0 * n * hermite(n - 1, xi);
      CHECK(std::abs(d - expect) < 1e-6 * (1.0 + std::abs(expect)));
    }
  }
}

TEST_CASE("hermite generating function") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int k = 0; k < 50; ++k) {
    Complex t(1.5 * u(rng), 1.5 * u(rng)), xi(3 * u(rng), 3 * u(rng));
    if (std::abs(t) > 1.5) t *= 1.5 / std::abs(t);
    if (std::abs(xi) > 3.0) xi *= 3.0 / std::abs(xi);
    const auto h = hermite_all(60, xi);
    Complex sum(0.0), tn(1.0);
    double fact = 1.0;
    for (int n = 0; n <= 60; ++n) {
      sum += h[static_cast<std::size_t>(n)] * tn / fact;
      tn *= t;
      fact *= n + 1;
    }
    CHECK(std::abs(sum - std::exp(2.0 * xi * t - t * t)) < 1e-9);
  }
}

TEST_CASE("erf reference values") {
  CHECK(erf_complex(0.0) == Complex(0.0));
  CHECK(std::abs(erf_complex(1.0) - 0.842700792949715) < 1e-10);
  CHECK(std::abs(erf_complex(Complex(0.0, 1.0)) - Complex(0.0, 1.650425758797543)) < 1e-9);
  // Independent quadrature oracle on both sides of the series/Faddeeva switch.
  for (Complex z : {Complex(1.9, 0.3), Complex(2.1, -0.4), Complex(-3.0, 2.5), Complex(0.5, 4.0), Complex(10.0, 10.0),
                    Complex(26.0, -3.0), Complex(-0.01, 26.5)}) {
    const Complex ref = oracle::erf_straight_path(z);
    CHECK(std::abs(erf_complex(z) - ref) <= 1e-10 * std::max(1.0, std::abs(ref)));
  }
  for (double x : {-3.0, -0.5, 0.2, 1.0, 2.5, 6.0}) {
    CHECK(erf_complex(x).real() == doctest::Approx(std::erf(x)).epsilon(1e-14));
  }
}

TEST_CASE("erf symmetries and derivative") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int k = 0; k < 200; ++k) {
    const Complex z(u(rng), u(rng));
    CHECK(erf_complex(-z) == -erf_complex(z));
    CHECK(erf_complex(std::conj(z)) == std::conj(erf_complex(z)));
    auto e = [&](double t) { return erf_complex(z + t); };
    const Complex d = oracle::central_diff(e, 0.0, 1e-4);
    const Complex expect = 2.0 / std::sqrt(pi) * std::exp(-z * z);
    CHECK(std::abs(d - expect) < 1e-9 * std::max(1.0, std::abs(erf_complex(z))));
  }
}

TEST_CASE("erf window and overflow") {
  CHECK_THROWS_AS(erf_complex(Complex(27.5, 0.0)), DomainError);
  CHECK_THROWS_AS(erf_complex(Complex(0.0, -28.0)), DomainError);
  CHECK_THROWS_AS(erf_complex(Complex(1.0, 27.0)), DomainError);  // |erf| ~ e^728 overflows
  CHECK(std::abs(erf_complex(Complex(27.0, 0.0)) - 1.0) < 1e-15);
}

TEST_CASE("faddeeva function") {
  // w(iy) = e^{y^2} erfc(y) for real y.
  for (double y : {0.1, 1.0, 3.0, 10.0}) {
    CHECK(faddeeva_w(Complex(0.0, y)).real() == doctest::Approx(std::exp(y * y) * std::erfc(y)).epsilon(1e-12));
  }
  CHECK(std::abs(faddeeva_w(0.0) - 1.0) < 1e-14);
}

TEST_CASE("polar angle and conventional square root") {
  CHECK(polar_angle(-2.0).value == doctest::Approx(pi));
  CHECK(polar_angle(3.0).value == 0.0);
  CHECK(polar_angle(Complex(0.0, -1.0)).value == doctest::Approx(1.5 * pi));
  CHECK_THROWS_AS(polar_angle(0.0), DomainError);
  CHECK(std::abs(sqrt_conventional(Complex(0.0, 1.0)) - Complex(1.0, 1.0) / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(sqrt_conventional(4.0, PolarAngle{0.0}) - 2.0) < 1e-15);
  CHECK(std::abs(sqrt_conventional(-1.0) - Complex(0.0, 1.0)) < 1e-15);
  // Off the principal branch in the lower half plane.
  CHECK(sqrt_conventional(Complex(0.0, -1.0)).real() < 0.0);

  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int k = 0; k < 200; ++k) {
    const Complex z(u(rng), u(rng));
    const PolarAngle t = polar_angle(z);
    CHECK(t.value >= 0.0);
    CHECK(t.value < 2.0 * pi);
    CHECK(std::abs(std::polar(std::abs(z), t.value) - z) <= 1e-14 * std::abs(z));
    const Complex s = sqrt_conventional(z);
    CHECK(std::abs(s * s - z) <= 1e-14 * std::abs(z));
  }
}
