#include "pdm/altspectral.hpp"

#include <cmath>
#include <numbers>

#include "pdm/errors.hpp"

namespace pdm {

RotatedOscillator RotatedOscillator::from(const SystemParams& sys) {
  return {std::abs(sys.lambda) / sys.hbar, sys.theta.value - std::numbers::pi, sys.hbar};
}

Complex y_of_x(const SystemParams& sys, double x) {
  return sys.mass.F(x) - sys.hbar * sys.hbar * sys.gamma / sys.lambda;
}

Complex htheta_eigenstate(const RotatedOscillator& rot, int n, Complex y) {
  if (n < 0 || n > kHermiteMaxDegree) throw DomainError("eigenstate index must lie in [0, 200]");
  const Complex arg = std::polar(1.0, 0.5 * rot.theta) * std::sqrt(rot.omega / rot.hbar) * y;
  // u_k = H_k(arg) / sqrt(2^k k!)
  Complex prev(1.0), cur = std::numbers::sqrt2 * arg;
  if (n == 0) cur = prev;
  for (int k = 1; k < n; ++k) {
    const Complex next = (std::numbers::sqrt2 * arg * cur - std::sqrt(static_cast<double>(k)) * prev) /
                         std::sqrt(k + 1.0);
    prev = cur;
    cur = next;
  }
  const Complex N = std::pow(rot.omega / (rot.hbar * std::numbers::pi), 0.25) * std::polar(1.0, 0.25 * rot.theta);
  return N * cur * std::exp(-rot.omega * std::polar(1.0, rot.theta) * y * y / (2.0 * rot.hbar));
}

Complex htheta_eigenvalue(const RotatedOscillator& rot, int n) {
  return rot.hbar * rot.omega * std::polar(1.0, rot.theta) * (n + 0.5);
}

double htheta_residual(const RotatedOscillator& rot, int n, const Grid& y_grid) {
  const SampledFunction f = sample(y_grid, [&](double y) { return htheta_eigenstate(rot, n, y); });
  const SampledFunction d2 = fd_derivative(f, 2);
  const Complex E = htheta_eigenvalue(rot, n);
  const Complex k = std::polar(1.0, 2.0 * rot.theta) * rot.omega * rot.omega / 2.0;
  ComplexVector r(f.size());
  for (Eigen::Index i = 0; i < f.size(); ++i) {
    const double y = y_grid.x(i);
    r[i] = -rot.hbar * rot.hbar / 2.0 * d2.values[i] + k * y * y * f.values[i] - E * f.values[i];
  }
  return relative_interior(SampledFunction(y_grid, std::move(r), d2.boundary_band), f);
}

Complex phi_n_alt(const SystemParams& sys, int n, double x) {
  const Complex c = Complex(0.0, 1.0) * sys.hbar * std::sqrt(std::abs(sys.lambda)) / std::numbers::sqrt2 *
                    std::polar(1.0, 0.5 * sys.theta.value);
  return std::pow(c, n) * std::pow(sys.mass.m(x), 0.25) *
         htheta_eigenstate(RotatedOscillator::from(sys), n, y_of_x(sys, x));
}

Complex psi_n_alt(const SystemParams& sys, int n, double x) { return phi_n_alt(conjugate(sys), n, x); }

double ratio_deviation(const SystemParams& sys, Side side, int n, const Grid& grid) {
  const EigenFamily fam(sys, side, true);
  const auto closed = fam.sample(n, grid);
  ComplexVector alt(grid.size());
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    alt[i] = side == Side::Phi ? phi_n_alt(sys, n, grid.x(i)) : psi_n_alt(sys, n, grid.x(i));
  }
  Eigen::Index peak;
  const double top = closed.values.cwiseAbs().maxCoeff(&peak);
  const Complex ref = alt[peak] / closed.values[peak];
  double worst = 0.0;
  for (Eigen::Index i = 2; i < grid.size() - 2; ++i) {
    if (std::abs(closed.values[i]) < 1e-6 * top) continue;
    worst = std::max(worst, std::abs(alt[i] / closed.values[i] / ref - 1.0));
  }
  return worst;
}

}  // namespace pdm
