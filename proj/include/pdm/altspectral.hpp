#pragma once

// Eigenstates through the complex variable y = F(x) - hbar^2 gamma/lambda and
// the rotated oscillator H_theta = (p^2 + e^{2i theta} Omega^2 y^2)/2.

#include "pdm/spectrum.hpp"

namespace pdm {

struct RotatedOscillator {
  double omega;  // |lambda| / hbar
  double theta;  // theta_lambda - pi
  double hbar;

  static RotatedOscillator from(const SystemParams& sys);
};

Complex y_of_x(const SystemParams& sys, double x);

/// N/sqrt(2^n n!) H_n(e^{i theta/2} sqrt(Omega/hbar) y) exp(-Omega e^{i theta} y^2/(2 hbar)),
/// N = (Omega/(hbar pi))^{1/4} e^{i theta/4}.
Complex htheta_eigenstate(const RotatedOscillator& rot, int n, Complex y);
Complex htheta_eigenvalue(const RotatedOscillator& rot, int n);

/// ||(H_theta - E_n) phi_n|| / ||phi_n|| on a real-y grid.
double htheta_residual(const RotatedOscillator& rot, int n, const Grid& y_grid);

/// (i hbar sqrt|lambda|/sqrt2 e^{i theta_lambda/2})^n m^{1/4}(x) phi_n^theta(y(x)).
Complex phi_n_alt(const SystemParams& sys, int n, double x);
/// The same construction for H^dagger (conjugated lambda, gamma).
Complex psi_n_alt(const SystemParams& sys, int n, double x);

/// max |r(x)/r(x_peak) - 1| for r = alt / closed form, over interior points
/// where the closed form exceeds 1e-6 of its peak modulus.
double ratio_deviation(const SystemParams& sys, Side side, int n, const Grid& grid);

}  // namespace pdm
