#pragma once

// Bi-coherent states phi(z; x), psi(z; x): closed forms, truncated series,
// eigenvalue residuals, the real-parameter shift relation and a quadrature of
// the resolution of the identity.

#include <utility>
#include <vector>

#include "pdm/spectrum.hpp"

namespace pdm {

struct CoherentNormalizers {
  Complex M_phi;
  Complex M_psi;
  Complex alpha_shift;
};

CoherentNormalizers coherent_normalizers(const SystemParams& sys, Complex z);

/// M_phi exp(-z lambda sqrt(2) F) phi_0 and M_psi exp(z sqrt(2) F / hbar^2) psi_0.
/// Non-integrable families are evaluated with unit vacuum normalization.
Complex coherent_phi(const SystemParams& sys, Complex z, double x);
Complex coherent_psi(const SystemParams& sys, Complex z, double x);
Complex coherent_state(const SystemParams& sys, Side side, Complex z, double x);
SampledFunction sample_coherent(const SystemParams& sys, Side side, Complex z, const Grid& grid);

struct SeriesValue {
  Complex value;
  double last_term;  // modulus of the final retained term
};

/// exp(-|z|^2/2) * sum_{n < n_terms} z^n / sqrt(n!) * phi_n(x) (or psi_n).
SeriesValue coherent_series(const SystemParams& sys, Side side, Complex z, double x, int n_terms = 60);

struct CoherentResiduals {
  double phi;  // a phi(z) = z phi(z)
  double psi;  // b^dagger psi(z) = z psi(z)
  double max() const { return phi > psi ? phi : psi; }
};

CoherentResiduals coherent_eigen_residual(const SystemParams& sys, Complex z, const Grid& grid);

/// max_x |psi(z;x) - alpha phi(-z/(hbar^2 lambda); x)| / max_x |psi(z;x)|.
/// Throws PreconditionError unless lambda and gamma are real.
double shift_relation_residual(const SystemParams& sys, Complex z, const Grid& grid);

enum class SurfaceKind { PsiSq, AlphaPhiSq };

/// |psi(z;x)|^2 or |alpha phi(z1;x)|^2 with z1 = -z/(hbar^2 lambda).
double surface_value(const SystemParams& sys, SurfaceKind which, Complex z, double x);

/// A finite combination sum_k c_k phi_k (or psi_k).
struct StateSpec {
  Side side = Side::Phi;
  std::vector<std::pair<int, Complex>> terms;
};

struct IdentityResult {
  Complex value;     // at the requested radius
  Complex doubled;   // same node counts at twice the radius
  bool converged;    // |doubled - value| <= 10 * tol
};

/// (1/pi) * integral over |z| <= radius of <f, phi(z)> <psi(z), g> d^2z, using
/// Gauss-Legendre in r and the trapezoid rule in the angle.
IdentityResult resolution_of_identity(const SystemParams& sys, const StateSpec& f, const StateSpec& g,
                                      double radius, int n_r = 80, int n_theta = 80, double tol = 1e-4);

}  // namespace pdm
