#pragma once

// One Hamiltonian instance (lambda, gamma, hbar, mass), its potential, the
// first-order ladder operators and numerical checks of their algebra.

#include <functional>
#include <vector>

#include "pdm/massmodel.hpp"
#include "pdm/numerics.hpp"
#include "pdm/specfun.hpp"

namespace pdm {

struct SystemParams {
  Complex lambda;
  Complex gamma;
  double hbar;
  MassModel mass;
  PolarAngle theta;  // polar angle of lambda

  /// Throws DomainError for lambda == 0 or hbar <= 0.
  SystemParams(Complex lambda, Complex gamma, double hbar, MassModel mass);

  bool real_parameters() const { return lambda.imag() == 0.0 && gamma.imag() == 0.0; }
};

/// The same system with lambda and gamma conjugated; H of the result is H^dagger.
SystemParams conjugate(const SystemParams& sys);

/// f -> scale * (alpha f' + beta f) / sqrt(2).
struct FirstOrderOp {
  std::function<Complex(double)> alpha;
  std::function<Complex(double)> beta;
  Complex scale{1.0};

  /// The coefficient pair multiplied by scale/sqrt(2), at x.
  std::pair<Complex, Complex> effective(double x) const;
};

/// Mass jet and F tabulated on a grid so repeated operator applications do not
/// re-evaluate the model.
struct MassSamples {
  Grid grid;
  RealVector m, dm, d2m, d3m, F;

  static MassSamples build(const MassModel& mass, const Grid& grid);
};

Complex potential(const SystemParams& sys, double x);

SampledFunction apply_H(const SystemParams& sys, const SampledFunction& f);
SampledFunction apply_H(const SystemParams& sys, const MassSamples& ms, const SampledFunction& f);

FirstOrderOp op_A(const SystemParams& sys);
FirstOrderOp op_B(const SystemParams& sys);
FirstOrderOp op_A_dagger(const SystemParams& sys);
FirstOrderOp op_B_dagger(const SystemParams& sys);
FirstOrderOp op_a(const SystemParams& sys);
FirstOrderOp op_b(const SystemParams& sys);
FirstOrderOp op_a_dagger(const SystemParams& sys);
FirstOrderOp op_b_dagger(const SystemParams& sys);

SampledFunction apply_first_order(const FirstOrderOp& op, const SampledFunction& f);

/// Which ladder operator a grid application refers to; used with MassSamples
/// to avoid re-evaluating coefficient closures.
enum class Ladder { A, B, A_dagger, B_dagger, a, b, a_dagger, b_dagger };
FirstOrderOp ladder_op(const SystemParams& sys, Ladder which);
SampledFunction apply_ladder(const SystemParams& sys, const MassSamples& ms, Ladder which,
                             const SampledFunction& f);

enum class CommutatorPair { H_A, A_B };

/// max over probes of ||[X,Y]f - rhs f|| / ||f|| on the interior, where
/// rhs f = lambda*A f for [H,A] and -lambda*f for [A,B]. Products such as HA
/// are composed from the closed-form coefficients and their exact derivatives,
/// so only the probe is differentiated numerically.
double commutator_residual(const SystemParams& sys, CommutatorPair pair,
                           const std::vector<SampledFunction>& probes);

/// max over probes of ||(H - E0) f - B A f|| / ||f||, with BA composed as above.
double factorization_residual(const SystemParams& sys, const std::vector<SampledFunction>& probes);

/// Gaussian bumps spread over the middle half of the grid.
std::vector<SampledFunction> bump_probes(const Grid& grid, int count = 3);

/// ||v|| over the interior of the widest band, divided by ||ref|| over the same band.
double relative_interior(const SampledFunction& v, const SampledFunction& ref);

}  // namespace pdm
