#include "pdm/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pdm/errors.hpp"

namespace pdm {

namespace {

constexpr double kTailRatio = 1e-12;
constexpr double kMassSpread = 1e4;

double window_cap(const SystemParams& sys) {
  return sys.mass.kind() == MassKind::Lorentzian ? 60.0 : 40.0;
}

// log|phi_0| up to the normalization.
double log_vacuum(const SystemParams& sys, double x) {
  try {
    const double m = sys.mass.m(x);
    const double F = sys.mass.F(x);
    const double h2 = sys.hbar * sys.hbar;
    const Complex e = sys.lambda * F * F / (2.0 * h2) - sys.gamma * F;
    const double g = 0.25 * std::log(m) + e.real();
    return std::isnan(g) ? -kInf : g;
  } catch (const Error&) {
    return -kInf;
  }
}

struct Peak {
  double x;
  double log_value;
};

Peak vacuum_peak(const SystemParams& sys) {
  const double cap = window_cap(sys);
  Peak best{0.0, -kInf};
  for (double x = -cap; x <= cap + 1e-9; x += 0.05) {
    const double g = log_vacuum(sys, x);
    if (g > best.log_value) best = {x, g};
  }
  return best;
}

std::vector<SampledFunction> sample_family(const EigenFamily& fam, int n_max, const Grid& grid,
                                           const MassSamples& ms) {
  std::vector<ComplexVector> cols(static_cast<std::size_t>(n_max) + 1, ComplexVector(grid.size()));
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    const auto v = fam.values_upto(n_max, ms.m[i], ms.F[i]);
    for (int n = 0; n <= n_max; ++n) cols[static_cast<std::size_t>(n)][i] = v[static_cast<std::size_t>(n)];
  }
  std::vector<SampledFunction> out;
  out.reserve(cols.size());
  for (auto& c : cols) out.emplace_back(grid, std::move(c));
  return out;
}

Eigen::MatrixXcd gram_on(const SystemParams& sys, int n_max, const Grid& grid) {
  const MassSamples ms = MassSamples::build(sys.mass, grid);
  const EigenFamily phi(sys, Side::Phi), psi(sys, Side::Psi);
  const auto ph = sample_family(phi, n_max, grid, ms);
  const auto ps = sample_family(psi, n_max, grid, ms);
  Eigen::MatrixXcd G(n_max + 1, n_max + 1);
  for (int m = 0; m <= n_max; ++m) {
    for (int n = 0; n <= n_max; ++n) G(m, n) = inner_product(ps[static_cast<std::size_t>(m)], ph[static_cast<std::size_t>(n)]);
  }
  return G;
}

double residual_against(const SampledFunction& lhs, const SampledFunction& target,
                        const SampledFunction& input, bool zero_target) {
  SampledFunction diff(lhs.grid, lhs.values - target.values, std::max(lhs.boundary_band, target.boundary_band));
  return relative_interior(diff, zero_target ? input : target);
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Integrable: return "Integrable";
    case Verdict::NotIntegrable: return "NotIntegrable";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

std::string to_string(IntegrabilityCase c) {
  switch (c) {
    case IntegrabilityCase::FiniteRange: return "finite-range";
    case IntegrabilityCase::LambdaRNegative: return "lambdaR-negative";
    case IntegrabilityCase::LambdaRPositiveInfiniteRange: return "lambdaR-positive-infinite-range";
    case IntegrabilityCase::LambdaRZeroLeftFinite: return "lambdaR-zero-left-finite";
    case IntegrabilityCase::LambdaRZeroRightFinite: return "lambdaR-zero-right-finite";
    case IntegrabilityCase::LambdaRZeroBothInfinite: return "lambdaR-zero-both-infinite";
  }
  return "?";
}

std::string to_string(Side s) { return s == Side::Phi ? "phi" : "psi"; }

Classification classify(Complex lambda, Complex gamma, const FRange& range) {
  const bool lf = range.left_finite(), rf = range.right_finite();
  Classification c{Verdict::NotIntegrable, IntegrabilityCase::LambdaRZeroBothInfinite};
  const double lr = lambda.real(), gr = gamma.real();
  if (lf && rf) {
    c = {Verdict::Integrable, IntegrabilityCase::FiniteRange};
  } else if (lr < 0.0) {
    c = {Verdict::Integrable, IntegrabilityCase::LambdaRNegative};
  } else if (lr > 0.0) {
    c = {Verdict::NotIntegrable, IntegrabilityCase::LambdaRPositiveInfiniteRange};
  } else if (!lf && !rf) {
    c = {Verdict::NotIntegrable, IntegrabilityCase::LambdaRZeroBothInfinite};
  } else if (lf) {
    c = {gr > 0.0 ? Verdict::Integrable : Verdict::NotIntegrable, IntegrabilityCase::LambdaRZeroLeftFinite};
  } else {
    c = {gr < 0.0 ? Verdict::Integrable : Verdict::NotIntegrable, IntegrabilityCase::LambdaRZeroRightFinite};
  }
  if (range.heuristic && !range.confident) c.verdict = Verdict::Inconclusive;
  return c;
}

Classification classify(const SystemParams& sys, Side side) {
  const Complex l = side == Side::Phi ? sys.lambda : std::conj(sys.lambda);
  const Complex g = side == Side::Phi ? sys.gamma : std::conj(sys.gamma);
  return classify(l, g, sys.mass.F_limits());
}

Complex vacuum_overlap_integral(const SystemParams& sys) {
  const Classification c = classify(sys);
  if (c.verdict != Verdict::Integrable) {
    throw NotIntegrableError("vacuum is not square-integrable (" + to_string(c.reason) + ")");
  }
  const FRange r = sys.mass.F_limits();
  const double h = sys.hbar, h2 = h * h;
  const double al = std::abs(sys.lambda);
  const double th = sys.theta.value;
  const Complex shift = h2 * sys.gamma / sys.lambda;
  const Complex cp = Complex(0.0, 1.0) * std::polar(1.0, 0.5 * th) * std::sqrt(al) / h;
  try {
    const Complex e_plus = r.right_finite() ? erf_complex(cp * (r.f_plus - shift)) : Complex(-1.0);
    const Complex e_minus = r.left_finite() ? erf_complex(cp * (r.f_minus - shift)) : Complex(1.0);
    const Complex pre = Complex(0.0, -0.5 * h) * std::sqrt(std::numbers::pi / al) *
                        std::exp(-h2 * sys.gamma * sys.gamma / sys.lambda - Complex(0.0, 0.5 * th));
    const Complex I = pre * (e_plus - e_minus);
    if (std::isfinite(std::abs(I))) return I;
  } catch (const DomainError&) {
    // erf argument outside its window: integrate in F directly
  }
  const Complex l = sys.lambda, g = sys.gamma;
  const ScalarFunction f = [l, g, h2](double F) { return std::exp(l * F * F / h2 - 2.0 * g * F); };
  return quad_improper(f, r.f_minus, r.f_plus, 1e-14).value;
}

Complex norm_constant(const SystemParams& sys) {
  Complex I = vacuum_overlap_integral(sys);
  if (std::abs(I.imag()) <= 1e-13 * std::abs(I)) I = Complex(I.real(), 0.0);
  return 1.0 / sqrt_conventional(I);
}

Complex eigen_E0(const SystemParams& sys) {
  return -0.5 * (sys.gamma * sys.gamma * sys.hbar * sys.hbar + sys.lambda);
}

Complex eigen_En(const SystemParams& sys, int n) {
  if (n < 0) throw DomainError("eigenvalue index must be non-negative");
  return eigen_E0(sys) - static_cast<double>(n) * sys.lambda;
}

EigenFamily::EigenFamily(const SystemParams& sys, Side side, bool allow_unit)
    : sys_(sys), side_(side), norm_(1.0), unit_(false) {
  const Classification c = classify(sys, side);
  if (c.verdict == Verdict::Integrable) {
    const Complex n = norm_constant(sys);
    norm_ = side == Side::Phi ? n : std::conj(n);
  } else if (allow_unit) {
    unit_ = true;
  } else {
    throw NotIntegrableError(to_string(side) + " family is not square-integrable (" + to_string(c.reason) + ")");
  }
  const double al = std::abs(sys.lambda);
  const Complex half = std::polar(1.0, 0.5 * sys.theta.value);
  const Complex i(0.0, 1.0);
  step_ = side == Side::Phi ? i * sys.hbar * std::sqrt(al) / std::numbers::sqrt2 * half
                            : i / (sys.hbar * std::sqrt(2.0 * al)) * half;
}

Complex EigenFamily::vacuum_unnormalized(double m, double F) const {
  const double h2 = sys_.hbar * sys_.hbar;
  const Complex l = side_ == Side::Phi ? sys_.lambda : std::conj(sys_.lambda);
  const Complex g = side_ == Side::Phi ? sys_.gamma : std::conj(sys_.gamma);
  const double q = std::pow(m, 0.25);
  if (q == 0.0) return 0.0;
  return q * std::exp(l * F * F / (2.0 * h2) - g * F);
}

Complex EigenFamily::vacuum(double x) const {
  return norm_ * vacuum_unnormalized(sys_.mass.m(x), sys_.mass.F(x));
}

std::vector<Complex> EigenFamily::values_upto(int n_max, double m, double F) const {
  if (n_max < 0 || n_max > kHermiteMaxDegree) throw DomainError("eigenstate index must lie in [0, 200]");
  const double h = sys_.hbar, h2 = h * h;
  const double al = std::abs(sys_.lambda);
  const Complex i(0.0, 1.0);
  Complex arg;
  if (side_ == Side::Phi) {
    arg = i * (sys_.lambda * F - h2 * sys_.gamma) / (h * std::sqrt(al)) * std::polar(1.0, -0.5 * sys_.theta.value);
  } else {
    arg = i * (h2 * std::conj(sys_.gamma) - std::conj(sys_.lambda) * F) / (h * std::sqrt(al)) *
          std::polar(1.0, 0.5 * sys_.theta.value);
  }
  std::vector<Complex> v(static_cast<std::size_t>(n_max) + 1);
  v[0] = norm_ * vacuum_unnormalized(m, F);
  const Complex s = step_;
  if (n_max >= 1) v[1] = 2.0 * s * arg * v[0];
  for (int n = 1; n < n_max; ++n) {
    v[static_cast<std::size_t>(n) + 1] =
        (2.0 * s * arg * v[static_cast<std::size_t>(n)] -
         2.0 * std::sqrt(static_cast<double>(n)) * s * s * v[static_cast<std::size_t>(n) - 1]) /
        std::sqrt(n + 1.0);
  }
  return v;
}

std::vector<Complex> EigenFamily::values_upto(int n_max, double x) const {
  return values_upto(n_max, sys_.mass.m(x), sys_.mass.F(x));
}

Complex EigenFamily::value(int n, double x) const { return values_upto(n, x).back(); }

SampledFunction EigenFamily::sample(int n, const Grid& grid) const {
  return sample_upto(n, grid).back();
}

std::vector<SampledFunction> EigenFamily::sample_upto(int n_max, const Grid& grid) const {
  return sample_family(*this, n_max, grid, MassSamples::build(sys_.mass, grid));
}

Complex vacuum_phi0(const SystemParams& sys, double x) { return EigenFamily(sys, Side::Phi).vacuum(x); }
Complex vacuum_psi0(const SystemParams& sys, double x) { return EigenFamily(sys, Side::Psi).vacuum(x); }
Complex phi_n(const SystemParams& sys, int n, double x) { return EigenFamily(sys, Side::Phi).value(n, x); }
Complex psi_n(const SystemParams& sys, int n, double x) { return EigenFamily(sys, Side::Psi).value(n, x); }

std::vector<Complex> phi_tilde_recurrence(const SystemParams& sys, int n_max, double x) {
  if (n_max < 0) throw DomainError("n_max must be non-negative");
  const double h2 = sys.hbar * sys.hbar;
  const Complex F = sys.mass.F(x);
  const Complex Gamma = (h2 * sys.gamma - sys.lambda * F) / std::numbers::sqrt2;
  const Complex k = -sys.lambda * h2 / 2.0;
  std::vector<Complex> v(static_cast<std::size_t>(n_max) + 1);
  v[0] = vacuum_phi0(sys, x);
  if (n_max >= 1) v[1] = 2.0 * Gamma * v[0];
  for (int n = 1; n < n_max; ++n) {
    v[static_cast<std::size_t>(n) + 1] =
        2.0 * Gamma * v[static_cast<std::size_t>(n)] - 2.0 * n * k * v[static_cast<std::size_t>(n) - 1];
  }
  return v;
}

Window quadrature_window(const SystemParams& sys) {
  const double cap = window_cap(sys);
  const Peak p = vacuum_peak(sys);
  const double floor = p.log_value + std::log(kTailRatio);
  const double step = 0.05;
  double lo = p.x, hi = p.x;
  while (lo > -cap && log_vacuum(sys, lo) >= floor) lo -= step;
  while (hi < cap && log_vacuum(sys, hi) >= floor) hi += step;
  return {std::max(lo, -cap), std::min(hi, cap)};
}

Window operator_window(const SystemParams& sys) {
  const Window q = quadrature_window(sys);
  const double x0 = std::clamp(vacuum_peak(sys).x, q.lo, q.hi);
  const double m_ref = sys.mass.m(x0);
  auto inside = [&](double x) {
    double m;
    try {
      m = sys.mass.m(x);
    } catch (const Error&) {
      return false;
    }
    return m >= m_ref / kMassSpread && m <= m_ref * kMassSpread;
  };
  const double step = 0.01;
  double lo = x0, hi = x0;
  while (lo - step >= q.lo && inside(lo - step)) lo -= step;
  while (hi + step <= q.hi && inside(hi + step)) hi += step;
  return {lo, hi};
}

Grid grid_for(const Window& w, double h) {
  const auto n = static_cast<Eigen::Index>(std::llround((w.hi - w.lo) / h)) + 1;
  return Grid(w.lo, w.hi, std::clamp<Eigen::Index>(n, 401, 60001));
}

BiorthoReport biorthonormality_matrix(const SystemParams& sys, int n_max) {
  const Window w = quadrature_window(sys);
  const auto n = std::max<Eigen::Index>(4001, static_cast<Eigen::Index>(std::ceil((w.hi - w.lo) / 0.01)) + 1);
  return biorthonormality_matrix(sys, n_max, Grid(w.lo, w.hi, n | 1));
}

BiorthoReport biorthonormality_matrix(const SystemParams& sys, int n_max, const Grid& grid) {
  for (Side s : {Side::Phi, Side::Psi}) {
    const Classification c = classify(sys, s);
    if (c.verdict != Verdict::Integrable) {
      throw NotIntegrableError(to_string(s) + " family is not square-integrable (" + to_string(c.reason) + ")");
    }
  }
  BiorthoReport r;
  r.gram = gram_on(sys, n_max, grid);
  r.max_deviation = (r.gram - Eigen::MatrixXcd::Identity(n_max + 1, n_max + 1)).cwiseAbs().maxCoeff();
  const Grid coarse(grid.x_min(), grid.x_max(), (grid.size() - 1) / 2 + 1);
  r.coarse_delta = (gram_on(sys, n_max, coarse) - r.gram).cwiseAbs().maxCoeff();
  return r;
}

LadderReport ladder_residuals(const SystemParams& sys, int n_max) {
  return ladder_residuals(sys, n_max, grid_for(operator_window(sys), 0.005));
}

LadderReport ladder_residuals(const SystemParams& sys, int n_max, const Grid& grid) {
  const MassSamples ms = MassSamples::build(sys.mass, grid);
  const auto ph = sample_family(EigenFamily(sys, Side::Phi, true), n_max + 1, grid, ms);
  const auto ps = sample_family(EigenFamily(sys, Side::Psi, true), n_max + 1, grid, ms);
  const SampledFunction zero(grid, ComplexVector::Zero(grid.size()));
  LadderReport rep;
  auto add = [&](const std::string& rel, int n, double r) {
    rep.entries.push_back({rel, n, r});
    rep.max_residual = std::max(rep.max_residual, r);
  };
  auto scaled = [](const SampledFunction& f, double s) { return SampledFunction(f.grid, s * f.values, f.boundary_band); };
  for (int n = 0; n <= n_max; ++n) {
    const auto un = static_cast<std::size_t>(n);
    const double up = std::sqrt(n + 1.0), down = std::sqrt(static_cast<double>(n));
    add("b phi_n = sqrt(n+1) phi_(n+1)", n,
        residual_against(apply_ladder(sys, ms, Ladder::b, ph[un]), scaled(ph[un + 1], up), ph[un], false));
    add("a phi_n = sqrt(n) phi_(n-1)", n,
        n == 0 ? residual_against(apply_ladder(sys, ms, Ladder::a, ph[0]), zero, ph[0], true)
               : residual_against(apply_ladder(sys, ms, Ladder::a, ph[un]), scaled(ph[un - 1], down), ph[un], false));
    add("a_dagger psi_n = sqrt(n+1) psi_(n+1)", n,
        residual_against(apply_ladder(sys, ms, Ladder::a_dagger, ps[un]), scaled(ps[un + 1], up), ps[un], false));
    add("b_dagger psi_n = sqrt(n) psi_(n-1)", n,
        n == 0 ? residual_against(apply_ladder(sys, ms, Ladder::b_dagger, ps[0]), zero, ps[0], true)
               : residual_against(apply_ladder(sys, ms, Ladder::b_dagger, ps[un]), scaled(ps[un - 1], down), ps[un], false));
  }
  return rep;
}

double eigen_residual(const SystemParams& sys, Side side, int n) {
  return eigen_residual(sys, side, n, grid_for(operator_window(sys), 0.005));
}

double eigen_residual(const SystemParams& sys, Side side, int n, const Grid& grid) {
  const EigenFamily fam(sys, side, true);
  const SampledFunction f = fam.sample(n, grid);
  const SystemParams h_sys = side == Side::Phi ? sys : conjugate(sys);
  const Complex E = side == Side::Phi ? eigen_En(sys, n) : std::conj(eigen_En(sys, n));
  const SampledFunction Hf = apply_H(h_sys, f);
  return residual_against(Hf, SampledFunction(grid, E * f.values), f, true);
}

double log_truncated_norm(const SystemParams& sys, double L) {
  if (!(L > 0.0)) throw DomainError("truncation length must be positive");
  const Grid grid(-L, L, 20001);
  RealVector g(grid.size());
  const double h2 = sys.hbar * sys.hbar;
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    const double x = grid.x(i);
    const double F = sys.mass.F(x);
    g[i] = 0.5 * std::log(sys.mass.m(x)) + sys.lambda.real() * F * F / h2 - 2.0 * sys.gamma.real() * F;
  }
  const double M = g.maxCoeff();
  const RealVector w = simpson_weights(grid);
  return M + std::log((w.array() * (g.array() - M).exp()).sum());
}

}  // namespace pdm
