#pragma once

// Vacua, normalization, the biorthogonal eigenfamilies phi_n / psi_n, their
// eigenvalues, the square-integrability classifier and grid-based checks.

#include <string>
#include <vector>

#include "pdm/system.hpp"

namespace pdm {

enum class Side { Phi, Psi };
enum class Verdict { Integrable, NotIntegrable, Inconclusive };
enum class IntegrabilityCase {
  FiniteRange,
  LambdaRNegative,
  LambdaRPositiveInfiniteRange,
  LambdaRZeroLeftFinite,
  LambdaRZeroRightFinite,
  LambdaRZeroBothInfinite,
};

struct Classification {
  Verdict verdict;
  IntegrabilityCase reason;
};

std::string to_string(Verdict v);
std::string to_string(IntegrabilityCase c);
std::string to_string(Side s);

/// Decision table on (Re lambda, Re gamma, finiteness of F(+-inf)). Custom
/// masses whose limits could not be decided come back Inconclusive.
Classification classify(Complex lambda, Complex gamma, const FRange& range);
/// The psi family uses the same table: conjugation keeps the real parts.
Classification classify(const SystemParams& sys, Side side = Side::Phi);

/// The integral of sqrt(m) exp(lambda F^2/hbar^2 - 2 gamma F) over the real
/// line, in closed form through erf. Requires an Integrable verdict.
Complex vacuum_overlap_integral(const SystemParams& sys);

/// N_phi with N_phi^2 times the integral above equal to 1, on the [0, 2pi)
/// branch. N_psi = conj(N_phi). Throws NotIntegrableError unless Integrable.
Complex norm_constant(const SystemParams& sys);

Complex eigen_E0(const SystemParams& sys);
Complex eigen_En(const SystemParams& sys, int n);

/// One biorthogonal family. In unit mode the vacuum normalization is 1, which
/// allows pointwise evaluation of non-normalizable families.
class EigenFamily {
 public:
  /// Throws NotIntegrableError for non-integrable families unless `allow_unit`.
  EigenFamily(const SystemParams& sys, Side side, bool allow_unit = false);

  Side side() const { return side_; }
  const SystemParams& system() const { return sys_; }
  Complex normalization() const { return norm_; }
  bool unit_mode() const { return unit_; }

  Complex vacuum(double x) const;
  /// Vacuum with the normalization left out, from precomputed m and F.
  Complex vacuum_unnormalized(double m, double F) const;
  Complex value(int n, double x) const;
  /// Entries 0..n_max at x, built by the normalized three-term recurrence.
  std::vector<Complex> values_upto(int n_max, double x) const;
  std::vector<Complex> values_upto(int n_max, double m, double F) const;

  SampledFunction sample(int n, const Grid& grid) const;
  std::vector<SampledFunction> sample_upto(int n_max, const Grid& grid) const;

 private:
  SystemParams sys_;
  Side side_;
  Complex norm_;
  bool unit_;
  Complex step_;   // c (phi) or d (psi)
};

Complex vacuum_phi0(const SystemParams& sys, double x);
Complex vacuum_psi0(const SystemParams& sys, double x);
Complex phi_n(const SystemParams& sys, int n, double x);
Complex psi_n(const SystemParams& sys, int n, double x);

/// sqrt(n!) phi_n for n = 0..n_max from phi_{n+1} = 2 Gamma phi_n - 2 n k phi_{n-1}
/// with Gamma = (hbar^2 gamma - lambda F)/sqrt(2), k = -lambda hbar^2/2.
std::vector<Complex> phi_tilde_recurrence(const SystemParams& sys, int n_max, double x);

struct Window {
  double lo;
  double hi;
};

/// Interval outside which |phi_0| drops below 1e-12 of its peak (capped at
/// |x| <= 40, or 60 for the Lorentzian mass).
Window quadrature_window(const SystemParams& sys);
/// The quadrature window further restricted to where the mass stays within
/// 1e4 of its value at the vacuum peak; this keeps 1/m-sized coefficients from
/// swamping finite-difference round-off.
Window operator_window(const SystemParams& sys);
/// Uniform grid over `w` with spacing close to h (point count clamped to [401, 60001]).
Grid grid_for(const Window& w, double h);

struct BiorthoReport {
  Eigen::MatrixXcd gram;          // gram(m, n) = <psi_m, phi_n>
  double max_deviation;           // max |gram - I|
  double coarse_delta;            // max |gram - gram on a half-resolution grid|
};

/// Needs both families Integrable (NotIntegrableError otherwise). With no grid
/// the quadrature window is used with at least 4001 points and spacing <= 0.01.
BiorthoReport biorthonormality_matrix(const SystemParams& sys, int n_max);
BiorthoReport biorthonormality_matrix(const SystemParams& sys, int n_max, const Grid& grid);

struct LadderEntry {
  std::string relation;
  int n;
  double residual;
};

struct LadderReport {
  std::vector<LadderEntry> entries;
  double max_residual = 0.0;
};

/// b phi_n = sqrt(n+1) phi_{n+1}, a phi_n = sqrt(n) phi_{n-1},
/// a^dagger psi_n = sqrt(n+1) psi_{n+1}, b^dagger psi_n = sqrt(n) psi_{n-1}.
/// Zero targets are measured against the input.
LadderReport ladder_residuals(const SystemParams& sys, int n_max);
LadderReport ladder_residuals(const SystemParams& sys, int n_max, const Grid& grid);

/// ||(H - E_n) phi_n|| / ||phi_n|| (or H^dagger and conj(E_n) on the psi side).
double eigen_residual(const SystemParams& sys, Side side, int n);
double eigen_residual(const SystemParams& sys, Side side, int n, const Grid& grid);

/// log of the integral of |phi_0|^2 (unit normalization) over [-L, L].
double log_truncated_norm(const SystemParams& sys, double L);

}  // namespace pdm
