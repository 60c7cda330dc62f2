#include "pdm/system.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "pdm/errors.hpp"

namespace pdm {

namespace {

// alpha = sa/sqrt(m), beta = -sa*m'/(4 m^{3/2}) - lam*F/hbar^2 + gam, times scale.
struct LadderShape {
  Complex scale;
  double sa;
  Complex lam;
  Complex gam;
};

LadderShape shape(const SystemParams& s, Ladder which) {
  const Complex l = s.lambda, g = s.gamma;
  const Complex lc = std::conj(l), gc = std::conj(g);
  const double h2 = s.hbar * s.hbar;
  switch (which) {
    case Ladder::A: return {1.0, 1.0, l, g};
    case Ladder::B: return {h2, -1.0, l, g};
    case Ladder::A_dagger: return {1.0, -1.0, lc, gc};
    case Ladder::B_dagger: return {h2, 1.0, lc, gc};
    case Ladder::a: return {-1.0 / l, 1.0, l, g};
    case Ladder::b: return {h2, -1.0, l, g};
    case Ladder::a_dagger: return {-1.0 / lc, -1.0, lc, gc};
    case Ladder::b_dagger: return {h2, 1.0, lc, gc};
  }
  return {};
}

int widest_band(const SampledFunction& a, const SampledFunction& b) {
  return std::max({2, a.boundary_band, b.boundary_band});
}

}  // namespace

SystemParams::SystemParams(Complex lambda_, Complex gamma_, double hbar_, MassModel mass_)
    : lambda(lambda_), gamma(gamma_), hbar(hbar_), mass(std::move(mass_)) {
  if (lambda == Complex(0.0)) throw DomainError("lambda must be nonzero");
  if (!(hbar > 0.0) || !std::isfinite(hbar)) throw DomainError("hbar must be positive");
  if (!std::isfinite(std::abs(lambda)) || !std::isfinite(std::abs(gamma))) {
    throw DomainError("lambda and gamma must be finite");
  }
  theta = polar_angle(lambda);
}

SystemParams conjugate(const SystemParams& sys) {
  return SystemParams(std::conj(sys.lambda), std::conj(sys.gamma), sys.hbar, sys.mass);
}

std::pair<Complex, Complex> FirstOrderOp::effective(double x) const {
  const Complex s = scale / std::numbers::sqrt2;
  return {s * alpha(x), s * beta(x)};
}

MassSamples MassSamples::build(const MassModel& mass, const Grid& grid) {
  const Eigen::Index n = grid.size();
  MassSamples ms{grid, RealVector(n), RealVector(n), RealVector(n), RealVector(n), RealVector(n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto j = mass.jet(grid.x(i));
    ms.m[i] = j[0];
    ms.dm[i] = j[1];
    ms.d2m[i] = j[2];
    ms.d3m[i] = j[3];
  }
  if (mass.kind() != MassKind::Custom) {
    for (Eigen::Index i = 0; i < n; ++i) ms.F[i] = mass.F(grid.x(i));
  } else {
    // Cumulative 3-point Gauss panels between grid nodes, anchored at the first node.
    static const double g = std::sqrt(0.6);
    const double h = grid.spacing();
    ms.F[0] = mass.F(grid.x(0));
    for (Eigen::Index i = 1; i < n; ++i) {
      const double mid = grid.x(i - 1) + 0.5 * h;
      const double r = 0.5 * h;
      const double s = (5.0 * std::sqrt(mass.m(mid - g * r)) + 8.0 * std::sqrt(mass.m(mid)) +
                        5.0 * std::sqrt(mass.m(mid + g * r))) /
                       9.0;
      ms.F[i] = ms.F[i - 1] + r * s;
    }
  }
  return ms;
}

Complex potential(const SystemParams& sys, double x) {
  const auto j = sys.mass.jet(x);
  const double m = j[0], m1 = j[1], m2 = j[2];
  const double h2 = sys.hbar * sys.hbar;
  const double F = sys.mass.F(x);
  const Complex l = sys.lambda, g = sys.gamma;
  return h2 / 8.0 * (m2 / (m * m) - 7.0 * m1 * m1 / (4.0 * m * m * m)) + l * l * F * F / (2.0 * h2) -
         l * g * F;
}

SampledFunction apply_H(const SystemParams& sys, const SampledFunction& f) {
  return apply_H(sys, MassSamples::build(sys.mass, f.grid), f);
}

SampledFunction apply_H(const SystemParams& sys, const MassSamples& ms, const SampledFunction& f) {
  if (!(ms.grid == f.grid)) throw GridMismatchError("mass samples and function use different grids");
  const SampledFunction d1 = fd_derivative(f, 1);
  const SampledFunction d2 = fd_derivative(f, 2);
  const double h2 = sys.hbar * sys.hbar;
  const Complex l = sys.lambda, g = sys.gamma;
  ComplexVector out(f.size());
  for (Eigen::Index i = 0; i < f.size(); ++i) {
    const double m = ms.m[i], m1 = ms.dm[i], m2 = ms.d2m[i], F = ms.F[i];
    const Complex V = h2 / 8.0 * (m2 / (m * m) - 7.0 * m1 * m1 / (4.0 * m * m * m)) +
                      l * l * F * F / (2.0 * h2) - l * g * F;
    out[i] = -h2 / (2.0 * m) * d2.values[i] + h2 * m1 / (2.0 * m * m) * d1.values[i] + V * f.values[i];
  }
  return SampledFunction(f.grid, std::move(out), d2.boundary_band);
}

FirstOrderOp ladder_op(const SystemParams& sys, Ladder which) {
  const LadderShape s = shape(sys, which);
  const MassModel mass = sys.mass;
  const double h2 = sys.hbar * sys.hbar;
  FirstOrderOp op;
  op.scale = s.scale;
  op.alpha = [mass, s](double x) -> Complex { return s.sa / std::sqrt(mass.m(x)); };
  op.beta = [mass, s, h2](double x) -> Complex {
    const auto j = mass.jet(x);
    return -s.sa * j[1] / (4.0 * std::pow(j[0], 1.5)) - s.lam * mass.F(x) / h2 + s.gam;
  };
  return op;
}

FirstOrderOp op_A(const SystemParams& sys) { return ladder_op(sys, Ladder::A); }
FirstOrderOp op_B(const SystemParams& sys) { return ladder_op(sys, Ladder::B); }
FirstOrderOp op_A_dagger(const SystemParams& sys) { return ladder_op(sys, Ladder::A_dagger); }
FirstOrderOp op_B_dagger(const SystemParams& sys) { return ladder_op(sys, Ladder::B_dagger); }
FirstOrderOp op_a(const SystemParams& sys) { return ladder_op(sys, Ladder::a); }
FirstOrderOp op_b(const SystemParams& sys) { return ladder_op(sys, Ladder::b); }
FirstOrderOp op_a_dagger(const SystemParams& sys) { return ladder_op(sys, Ladder::a_dagger); }
FirstOrderOp op_b_dagger(const SystemParams& sys) { return ladder_op(sys, Ladder::b_dagger); }

SampledFunction apply_first_order(const FirstOrderOp& op, const SampledFunction& f) {
  const SampledFunction d1 = fd_derivative(f, 1);
  ComplexVector out(f.size());
  for (Eigen::Index i = 0; i < f.size(); ++i) {
    const auto [a, b] = op.effective(f.grid.x(i));
    out[i] = a * d1.values[i] + b * f.values[i];
  }
  return SampledFunction(f.grid, std::move(out), d1.boundary_band);
}

SampledFunction apply_ladder(const SystemParams& sys, const MassSamples& ms, Ladder which,
                             const SampledFunction& f) {
  if (!(ms.grid == f.grid)) throw GridMismatchError("mass samples and function use different grids");
  const LadderShape s = shape(sys, which);
  const double h2 = sys.hbar * sys.hbar;
  const Complex pre = s.scale / std::numbers::sqrt2;
  const SampledFunction d1 = fd_derivative(f, 1);
  ComplexVector out(f.size());
  for (Eigen::Index i = 0; i < f.size(); ++i) {
    const double m = ms.m[i];
    const double rs = 1.0 / std::sqrt(m);
    const Complex alpha = s.sa * rs;
    const Complex beta = -s.sa * ms.dm[i] * rs / (4.0 * m) - s.lam * ms.F[i] / h2 + s.gam;
    out[i] = pre * (alpha * d1.values[i] + beta * f.values[i]);
  }
  return SampledFunction(f.grid, std::move(out), d1.boundary_band);
}

double relative_interior(const SampledFunction& v, const SampledFunction& ref) {
  if (!(v.grid == ref.grid)) throw GridMismatchError("residual operands use different grids");
  const int band = widest_band(v, ref);
  const double h = v.grid.spacing();
  return interior_norm(v.values, h, band) / std::max(interior_norm(ref.values, h, band), 1e-300);
}

namespace {

using CJet = Jet3<Complex>;

// Coefficients c_k of sum_k c_k(x) d^k/dx^k, k = 0..3, sampled on a grid.
struct DiffOp {
  std::array<ComplexVector, 4> c;
};

CJet cjet(double v0, double v1, double v2, double v3) { return CJet(v0, v1, v2, v3); }

// Jets of p, q, V in H = p d^2 + q d + V. Entries beyond the first derivative are unused.
struct HJets {
  CJet p, q, V;
};

HJets h_jets(const SystemParams& sys, const MassSamples& ms, Eigen::Index i) {
  const double h2 = sys.hbar * sys.hbar;
  const double m = ms.m[i], m1 = ms.dm[i], m2 = ms.d2m[i], m3 = ms.d3m[i];
  const CJet mj = cjet(m, m1, m2, m3), m1j = cjet(m1, m2, m3, 0.0), m2j = cjet(m2, m3, 0.0, 0.0);
  const double rs = std::sqrt(m);
  const CJet F = cjet(ms.F[i], rs, 0.5 * m1 / rs, 0.0);
  const CJet inv = reciprocal(mj);
  const Complex l = sys.lambda, g = sys.gamma;
  HJets j;
  j.p = Complex(-0.5 * h2) * inv;
  j.q = Complex(0.5 * h2) * m1j * inv * inv;
  j.V = Complex(h2 / 8.0) * (m2j * inv * inv - Complex(1.75) * m1j * m1j * inv * inv * inv) +
        (l * l / (2.0 * h2)) * F * F - (l * g) * F;
  return j;
}

// Jets of alpha, beta (already multiplied by scale/sqrt(2)), valid to second order.
std::pair<CJet, CJet> ladder_jets(const SystemParams& sys, const MassSamples& ms, Eigen::Index i, Ladder which) {
  const LadderShape s = shape(sys, which);
  const double h2 = sys.hbar * sys.hbar;
  const double m = ms.m[i], m1 = ms.dm[i], m2 = ms.d2m[i], m3 = ms.d3m[i];
  const CJet mj = cjet(m, m1, m2, m3), m1j = cjet(m1, m2, m3, 0.0);
  const double rs = std::sqrt(m);
  const CJet F = cjet(ms.F[i], rs, 0.5 * m1 / rs, 0.0);
  const CJet irs = pow(mj, -0.5);
  const Complex pre = s.scale / std::numbers::sqrt2;
  const CJet alpha = (pre * s.sa) * irs;
  const CJet beta = pre * (Complex(-0.25 * s.sa) * m1j * irs * reciprocal(mj) - (s.lam / h2) * F + s.gam);
  return {alpha, beta};
}

DiffOp zero_op(Eigen::Index n) {
  DiffOp d;
  for (auto& v : d.c) v = ComplexVector::Zero(n);
  return d;
}

// H composed with a first-order operator on either side.
DiffOp compose_H_ladder(const SystemParams& sys, const MassSamples& ms, Ladder which, bool h_first) {
  const Eigen::Index n = ms.grid.size();
  DiffOp d = zero_op(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const HJets h = h_jets(sys, ms, i);
    const auto [a, b] = ladder_jets(sys, ms, i, which);
    const Complex p = h.p[0], q = h.q[0], V = h.V[0];
    if (h_first) {
      // H (a f' + b f)
      d.c[3][i] = p * a[0];
      d.c[2][i] = p * (2.0 * a[1] + b[0]) + q * a[0];
      d.c[1][i] = p * (a[2] + 2.0 * b[1]) + q * (a[1] + b[0]) + V * a[0];
      d.c[0][i] = p * b[2] + q * b[1] + V * b[0];
    } else {
      // a (H f)' + b H f
      d.c[3][i] = a[0] * p;
      d.c[2][i] = a[0] * (h.p[1] + q) + b[0] * p;
      d.c[1][i] = a[0] * (h.q[1] + V) + b[0] * q;
      d.c[0][i] = a[0] * h.V[1] + b[0] * V;
    }
  }
  return d;
}

// Product of two first-order ladder operators, `outer` applied last.
DiffOp compose_ladders(const SystemParams& sys, const MassSamples& ms, Ladder outer, Ladder inner) {
  const Eigen::Index n = ms.grid.size();
  DiffOp d = zero_op(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto [a1, b1] = ladder_jets(sys, ms, i, outer);
    const auto [a2, b2] = ladder_jets(sys, ms, i, inner);
    d.c[2][i] = a1[0] * a2[0];
    d.c[1][i] = a1[0] * (a2[1] + b2[0]) + b1[0] * a2[0];
    d.c[0][i] = a1[0] * b2[1] + b1[0] * b2[0];
  }
  return d;
}

DiffOp ladder_as_op(const SystemParams& sys, const MassSamples& ms, Ladder which) {
  const Eigen::Index n = ms.grid.size();
  DiffOp d = zero_op(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto [a, b] = ladder_jets(sys, ms, i, which);
    d.c[1][i] = a[0];
    d.c[0][i] = b[0];
  }
  return d;
}

DiffOp H_as_op(const SystemParams& sys, const MassSamples& ms) {
  const Eigen::Index n = ms.grid.size();
  DiffOp d = zero_op(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const HJets h = h_jets(sys, ms, i);
    d.c[2][i] = h.p[0];
    d.c[1][i] = h.q[0];
    d.c[0][i] = h.V[0];
  }
  return d;
}

// Residual of sum_k (lhs_k - rhs_k) f^(k) relative to ||f||.
double op_difference(const DiffOp& lhs, const DiffOp& rhs, const SampledFunction& f) {
  ComplexVector r = ComplexVector::Zero(f.size());
  int band = 2;
  for (int k = 0; k < 4; ++k) {
    const ComplexVector c = lhs.c[static_cast<std::size_t>(k)] - rhs.c[static_cast<std::size_t>(k)];
    if (c.isZero(0.0)) continue;
    if (k == 0) {
      r += c.cwiseProduct(f.values);
    } else {
      const SampledFunction dk = fd_derivative(f, k);
      r += c.cwiseProduct(dk.values);
      band = std::max(band, dk.boundary_band);
    }
  }
  return relative_interior(SampledFunction(f.grid, std::move(r), band), f);
}

DiffOp scaled(DiffOp d, Complex s) {
  for (auto& v : d.c) v *= s;
  return d;
}

DiffOp sum(DiffOp a, const DiffOp& b) {
  for (std::size_t k = 0; k < 4; ++k) a.c[k] += b.c[k];
  return a;
}

}  // namespace

double commutator_residual(const SystemParams& sys, CommutatorPair pair,
                           const std::vector<SampledFunction>& probes) {
  double worst = 0.0;
  for (const auto& f : probes) {
    const MassSamples ms = MassSamples::build(sys.mass, f.grid);
    double r;
    if (pair == CommutatorPair::H_A) {
      // H A  versus  A H + lambda A
      const DiffOp HA = compose_H_ladder(sys, ms, Ladder::A, true);
      const DiffOp AH = compose_H_ladder(sys, ms, Ladder::A, false);
      r = op_difference(HA, sum(AH, scaled(ladder_as_op(sys, ms, Ladder::A), sys.lambda)), f);
    } else {
      // A B  versus  B A - lambda
      const DiffOp AB = compose_ladders(sys, ms, Ladder::A, Ladder::B);
      DiffOp rhs = compose_ladders(sys, ms, Ladder::B, Ladder::A);
      rhs.c[0].array() -= sys.lambda;
      r = op_difference(AB, rhs, f);
    }
    worst = std::max(worst, r);
  }
  return worst;
}

double factorization_residual(const SystemParams& sys, const std::vector<SampledFunction>& probes) {
  const double h2 = sys.hbar * sys.hbar;
  const Complex E0 = -0.5 * (sys.gamma * sys.gamma * h2 + sys.lambda);
  double worst = 0.0;
  for (const auto& f : probes) {
    const MassSamples ms = MassSamples::build(sys.mass, f.grid);
    DiffOp lhs = H_as_op(sys, ms);
    lhs.c[0].array() -= E0;
    worst = std::max(worst, op_difference(lhs, compose_ladders(sys, ms, Ladder::B, Ladder::A), f));
  }
  return worst;
}

std::vector<SampledFunction> bump_probes(const Grid& grid, int count) {
  const double a = grid.x_min(), b = grid.x_max();
  const double w = b - a;
  const double c0 = a + 0.25 * w, c1 = a + 0.75 * w;
  const double s = std::min(1.0, w / 12.0);
  std::vector<SampledFunction> out;
  for (int k = 0; k < count; ++k) {
    const double c = count == 1 ? 0.5 * (a + b) : c0 + (c1 - c0) * k / (count - 1);
    out.push_back(sample(grid, [c, s](double x) {
      const double u = (x - c) / s;
      return Complex(std::exp(-0.5 * u * u), 0.3 * u * std::exp(-0.5 * u * u));
    }));
  }
  return out;
}

}  // namespace pdm
