#include "pdm/coherent.hpp"

#include <cmath>
#include <numbers>

#include "pdm/errors.hpp"

namespace pdm {

namespace {

Complex log_M_phi(const SystemParams& s, Complex z) {
  const double h2 = s.hbar * s.hbar;
  return -0.5 * std::norm(z) + z * std::numbers::sqrt2 * h2 * s.gamma + z * z * h2 * s.lambda / 2.0;
}

Complex log_M_psi(const SystemParams& s, Complex z) {
  const double h2 = s.hbar * s.hbar;
  return -0.5 * std::norm(z) - z * std::numbers::sqrt2 * std::conj(s.gamma / s.lambda) +
         z * z / (2.0 * h2 * std::conj(s.lambda));
}

Complex log_alpha(const SystemParams& s, Complex z) {
  const double h4 = std::pow(s.hbar, 4);
  return 0.5 * std::norm(z) * (1.0 / (std::norm(s.lambda) * h4) - 1.0);
}

// Exponent multiplying F(x) in the coherent state.
Complex f_coefficient(const SystemParams& s, Side side, Complex z) {
  if (side == Side::Phi) return -z * s.lambda * std::numbers::sqrt2;
  return z * std::numbers::sqrt2 / (s.hbar * s.hbar);
}

Complex coherent_from(const EigenFamily& fam, Complex log_m, Complex kf, double m, double F) {
  const SystemParams& s = fam.system();
  const double h2 = s.hbar * s.hbar;
  const bool phi = fam.side() == Side::Phi;
  const Complex l = phi ? s.lambda : std::conj(s.lambda);
  const Complex g = phi ? s.gamma : std::conj(s.gamma);
  const double q = std::pow(m, 0.25);
  if (q == 0.0) return 0.0;
  return fam.normalization() * q * std::exp(log_m + kf * F + l * F * F / (2.0 * h2) - g * F);
}

Complex z_shifted(const SystemParams& s, Complex z) { return -z / (s.hbar * s.hbar * s.lambda); }

std::vector<SampledFunction> sample_spec(const SystemParams& sys, const StateSpec& spec, const Grid& grid) {
  int top = 0;
  for (const auto& t : spec.terms) top = std::max(top, t.first);
  const auto basis = EigenFamily(sys, spec.side).sample_upto(top, grid);
  ComplexVector v = ComplexVector::Zero(grid.size());
  for (const auto& [n, c] : spec.terms) v += c * basis[static_cast<std::size_t>(n)].values;
  return {SampledFunction(grid, std::move(v))};
}

}  // namespace

CoherentNormalizers coherent_normalizers(const SystemParams& sys, Complex z) {
  return {std::exp(log_M_phi(sys, z)), std::exp(log_M_psi(sys, z)), std::exp(log_alpha(sys, z))};
}

Complex coherent_state(const SystemParams& sys, Side side, Complex z, double x) {
  const EigenFamily fam(sys, side, true);
  const Complex lm = side == Side::Phi ? log_M_phi(sys, z) : log_M_psi(sys, z);
  return coherent_from(fam, lm, f_coefficient(sys, side, z), sys.mass.m(x), sys.mass.F(x));
}

Complex coherent_phi(const SystemParams& sys, Complex z, double x) { return coherent_state(sys, Side::Phi, z, x); }
Complex coherent_psi(const SystemParams& sys, Complex z, double x) { return coherent_state(sys, Side::Psi, z, x); }

SampledFunction sample_coherent(const SystemParams& sys, Side side, Complex z, const Grid& grid) {
  const EigenFamily fam(sys, side, true);
  const MassSamples ms = MassSamples::build(sys.mass, grid);
  const Complex lm = side == Side::Phi ? log_M_phi(sys, z) : log_M_psi(sys, z);
  const Complex kf = f_coefficient(sys, side, z);
  ComplexVector v(grid.size());
  for (Eigen::Index i = 0; i < grid.size(); ++i) v[i] = coherent_from(fam, lm, kf, ms.m[i], ms.F[i]);
  return SampledFunction(grid, std::move(v));
}

SeriesValue coherent_series(const SystemParams& sys, Side side, Complex z, double x, int n_terms) {
  if (n_terms < 1 || n_terms > kHermiteMaxDegree + 1) throw DomainError("n_terms must lie in [1, 201]");
  const EigenFamily fam(sys, side, true);
  const auto v = fam.values_upto(n_terms - 1, x);
  Complex coeff(1.0);
  Complex sum(0.0);
  double last = 0.0;
  for (int n = 0; n < n_terms; ++n) {
    if (n > 0) coeff *= z / std::sqrt(static_cast<double>(n));
    const Complex term = coeff * v[static_cast<std::size_t>(n)];
    sum += term;
    last = std::abs(term);
  }
  const double damp = std::exp(-0.5 * std::norm(z));
  return {damp * sum, damp * last};
}

CoherentResiduals coherent_eigen_residual(const SystemParams& sys, Complex z, const Grid& grid) {
  const MassSamples ms = MassSamples::build(sys.mass, grid);
  CoherentResiduals r{};
  for (Side side : {Side::Phi, Side::Psi}) {
    const SampledFunction f = sample_coherent(sys, side, z, grid);
    const SampledFunction lowered = apply_ladder(sys, ms, side == Side::Phi ? Ladder::a : Ladder::b_dagger, f);
    const SampledFunction diff(grid, lowered.values - z * f.values, lowered.boundary_band);
    (side == Side::Phi ? r.phi : r.psi) = relative_interior(diff, f);
  }
  return r;
}

double shift_relation_residual(const SystemParams& sys, Complex z, const Grid& grid) {
  if (!sys.real_parameters()) {
    throw PreconditionError("the shift relation needs real lambda and gamma");
  }
  const SampledFunction psi = sample_coherent(sys, Side::Psi, z, grid);
  const SampledFunction phi = sample_coherent(sys, Side::Phi, z_shifted(sys, z), grid);
  const Complex alpha = std::exp(log_alpha(sys, z));
  const double num = (psi.values - alpha * phi.values).cwiseAbs().maxCoeff();
  const double den = psi.values.cwiseAbs().maxCoeff();
  return num / std::max(den, 1e-300);
}

double surface_value(const SystemParams& sys, SurfaceKind which, Complex z, double x) {
  if (which == SurfaceKind::PsiSq) return std::norm(coherent_psi(sys, z, x));
  return std::norm(std::exp(log_alpha(sys, z)) * coherent_phi(sys, z_shifted(sys, z), x));
}

IdentityResult resolution_of_identity(const SystemParams& sys, const StateSpec& f, const StateSpec& g,
                                      double radius, int n_r, int n_theta, double tol) {
  if (!(radius > 0.0) || n_r < 1 || n_theta < 1) throw DomainError("invalid quadrature parameters");
  const Window w = quadrature_window(sys);
  const Grid grid(w.lo, w.hi, 4001);
  const MassSamples ms = MassSamples::build(sys.mass, grid);
  const SampledFunction fs = sample_spec(sys, f, grid).front();
  const SampledFunction gs = sample_spec(sys, g, grid).front();
  const EigenFamily phi(sys, Side::Phi, true), psi(sys, Side::Psi, true);
  const RealVector wts = simpson_weights(grid);
  // conj(f) w and g w are fixed across nodes.
  const ComplexVector fw = (wts.array().cast<Complex>() * fs.values.array().conjugate()).matrix();
  const ComplexVector gw = (wts.array().cast<Complex>() * gs.values.array()).matrix();
  const Eigen::Index n = grid.size();

  auto integrate = [&](double R) {
    const GaussRule gr = gauss_legendre(n_r, 0.0, R);
    Complex total(0.0);
    for (int ir = 0; ir < n_r; ++ir) {
      const double r = gr.nodes[ir];
      Complex ring(0.0);
      for (int it = 0; it < n_theta; ++it) {
        const Complex z = std::polar(r, 2.0 * std::numbers::pi * it / n_theta);
        const Complex lmp = log_M_phi(sys, z), lms = log_M_psi(sys, z);
        const Complex kp = f_coefficient(sys, Side::Phi, z), ks = f_coefficient(sys, Side::Psi, z);
        Complex fp(0.0), pg(0.0);
        for (Eigen::Index i = 0; i < n; ++i) {
          fp += fw[i] * coherent_from(phi, lmp, kp, ms.m[i], ms.F[i]);
          pg += std::conj(coherent_from(psi, lms, ks, ms.m[i], ms.F[i])) * gw[i];
        }
        ring += fp * pg;
      }
      total += gr.weights[ir] * r * ring * (2.0 * std::numbers::pi / n_theta);
    }
    return total / std::numbers::pi;
  };

  IdentityResult res;
  res.value = integrate(radius);
  res.doubled = integrate(2.0 * radius);
  res.converged = std::abs(res.doubled - res.value) <= 10.0 * tol;
  return res;
}

}  // namespace pdm
