#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "pdm/altspectral.hpp"
#include "pdm/errors.hpp"

using namespace pdm;
using std::numbers::pi;

namespace {

SystemParams make(const char* mass, Complex lambda, Complex gamma, double hbar = 1.0, double m0 = 1.0) {
  return SystemParams(lambda, gamma, hbar, MassModel::from_name(mass, m0));
}

}  // namespace

TEST_CASE("rotated coordinate") {
  const SystemParams ho = make("constant", -1.0, 0.0);
  CHECK(std::abs(y_of_x(ho, 1.5) - 1.5) < 1e-15);
  const SystemParams g = make("gaussian", -2.0, 1.0);
  CHECK(std::abs(y_of_x(g, 0.0) - 0.5) < 1e-15);
  const SystemParams c = make("constant", Complex(-1.0, 1.0), Complex(0.0, 1.0), 2.0);
  const Complex expect = 0.3 - 4.0 * Complex(0.0, 1.0) / Complex(-1.0, 1.0);
  CHECK(std::abs(y_of_x(c, 0.3) - expect) < 1e-14);
  const RotatedOscillator r = RotatedOscillator::from(make("constant", Complex(0.0, -2.0), 0.0, 2.0));
  CHECK(r.omega == doctest::Approx(1.0));
  CHECK(r.theta == doctest::Approx(0.5 * pi));
}

TEST_CASE("rotated oscillator eigenpairs") {
  const RotatedOscillator plain{1.0, 0.0, 1.0};
  for (int n = 0; n <= 4; ++n) {
    CHECK(std::abs(htheta_eigenvalue(plain, n) - (n + 0.5)) < 1e-15);
    for (double y : {-1.2, 0.0, 0.9}) {
      CHECK(std::abs(htheta_eigenstate(plain, n, y) - oracle::ho_state(n, y)) < 1e-14);
    }
  }
  const RotatedOscillator rot{1.5, 0.4, 0.8};
  CHECK(std::abs(htheta_eigenvalue(rot, 2) - 0.8 * 1.5 * std::polar(1.0, 0.4) * 2.5) < 1e-14);
  const Grid y(-8.0, 8.0, 3201);
  for (int n = 0; n <= 5; ++n) {
    CHECK(htheta_residual(plain, n, y) < 1e-6);
    CHECK(htheta_residual(rot, n, y) < 1e-6);
  }
  CHECK_THROWS_AS(htheta_eigenstate(rot, -1, 0.0), DomainError);
}

TEST_CASE("rotated eigenstates are orthonormal under the bilinear product") {
  for (double theta : {0.0, 0.4, -0.9}) {
    const RotatedOscillator rot{1.2, theta, 1.0};
    for (int m = 0; m <= 3; ++m) {
      for (int n = 0; n <= 3; ++n) {
        const Complex g = oracle::gauss10(
            [&](double yy) { return htheta_eigenstate(rot, m, yy) * htheta_eigenstate(rot, n, yy); }, -12.0, 12.0, 200);
        CHECK(std::abs(g - (m == n ? 1.0 : 0.0)) < 1e-12);
      }
    }
  }
}

TEST_CASE("alternative construction is proportional to the closed form") {
  const Grid grid(-3.0, 3.0, 601);
  for (const auto& s : {make("constant", -1.0, 0.0), make("gaussian", Complex(-2.0, 1.0), Complex(1.0, 2.0)),
                        make("lorentzian", Complex(-1.0, -0.7), 0.5), make("exp-up", -1.0, 1.0)}) {
    for (int n = 0; n <= 4; ++n) {
      CHECK(ratio_deviation(s, Side::Phi, n, grid) < 1e-10);
      CHECK(ratio_deviation(s, Side::Psi, n, grid) < 1e-10);
    }
  }
}

TEST_CASE("alternative eigenstates solve the original eigenproblem") {
  const SystemParams s = make("lorentzian", Complex(-2.0, 1.0), Complex(1.0, 2.0));
  const Grid grid = grid_for(operator_window(s), 0.005);
  for (int n = 0; n <= 3; ++n) {
    const SampledFunction f = sample(grid, [&](double x) { return phi_n_alt(s, n, x); });
    const SampledFunction Hf = apply_H(s, f);
    const SampledFunction diff(grid, Hf.values - eigen_En(s, n) * f.values, Hf.boundary_band);
    CHECK(relative_interior(diff, f) < 1e-5);
  }
  // psi_n_alt is the conjugate system's construction.
  const SystemParams c = conjugate(s);
  CHECK(std::abs(psi_n_alt(s, 2, 0.4) - phi_n_alt(c, 2, 0.4)) == 0.0);
}
