#include "pdm/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "pdm/errors.hpp"

namespace pdm {

Grid::Grid(double x_min, double x_max, Eigen::Index n_points)
    : x_min_(x_min), x_max_(x_max), n_(n_points) {
  if (!(x_min < x_max) || !std::isfinite(x_min) || !std::isfinite(x_max)) {
    throw DomainError("grid requires finite x_min < x_max");
  }
  if (n_points < kMinPoints) {
    throw DomainError("grid requires at least " + std::to_string(kMinPoints) + " points");
  }
  h_ = (x_max - x_min) / static_cast<double>(n_points - 1);
}

RealVector Grid::points() const {
  RealVector p(n_);
  for (Eigen::Index i = 0; i < n_; ++i) p[i] = x(i);
  return p;
}

SampledFunction::SampledFunction(Grid g, ComplexVector v, int band)
    : grid(g), values(std::move(v)), boundary_band(band) {
  if (values.size() != grid.size()) {
    throw DomainError("sampled values do not match grid size");
  }
}

RealVector simpson_weights(const Grid& grid) {
  const Eigen::Index n = grid.size();
  const double h = grid.spacing();
  RealVector w = RealVector::Zero(n);
  Eigen::Index intervals = n - 1;
  Eigen::Index simpson_end = intervals % 2 == 0 ? intervals : intervals - 3;
  for (Eigen::Index i = 0; i < simpson_end; i += 2) {
    w[i] += h / 3.0;
    w[i + 1] += 4.0 * h / 3.0;
    w[i + 2] += h / 3.0;
  }
  if (simpson_end != intervals) {
    const double c = 3.0 * h / 8.0;
    w[simpson_end] += c;
    w[simpson_end + 1] += 3.0 * c;
    w[simpson_end + 2] += 3.0 * c;
    w[simpson_end + 3] += c;
  }
  return w;
}

namespace {

void require_same_grid(const SampledFunction& f, const SampledFunction& g) {
  if (!(f.grid == g.grid)) {
    throw GridMismatchError("sampled functions are defined on different grids");
  }
}

}  // namespace

Complex inner_product(const SampledFunction& f, const SampledFunction& g) {
  require_same_grid(f, g);
  const RealVector w = simpson_weights(f.grid);
  return (w.array().cast<Complex>() * f.values.array().conjugate() * g.values.array()).sum();
}

double l2_norm(const SampledFunction& f) {
  const RealVector w = simpson_weights(f.grid);
  return std::sqrt((w.array() * f.values.array().abs2()).sum());
}

double interior_norm(const ComplexVector& v, double h, int band) {
  const Eigen::Index n = v.size() - 2 * band;
  if (n <= 0) return 0.0;
  return std::sqrt(h * v.segment(band, n).squaredNorm());
}

double l2_residual(const SampledFunction& f, const SampledFunction& g) {
  require_same_grid(f, g);
  const int band = std::max({2, f.boundary_band, g.boundary_band});
  const double h = f.grid.spacing();
  const double num = interior_norm(f.values - g.values, h, band);
  const double den = std::max(interior_norm(g.values, h, band), 1e-300);
  return num / den;
}

SampledFunction fd_derivative(const SampledFunction& f, int order) {
  if (order < 1 || order > 3) throw DomainError("fd_derivative supports orders 1 to 3");
  if (order == 3) {
    // Central 7-point stencil inside; the three end points reuse the nested first derivative of f''.
    const SampledFunction nested = fd_derivative(fd_derivative(f, 2), 1);
    const Eigen::Index n = f.size();
    const double s = 1.0 / (8.0 * std::pow(f.grid.spacing(), 3));
    const ComplexVector& u = f.values;
    ComplexVector d = nested.values;
    for (Eigen::Index i = 3; i < n - 3; ++i) {
      d[i] = (u[i - 3] - 8.0 * u[i - 2] + 13.0 * u[i - 1] - 13.0 * u[i + 1] + 8.0 * u[i + 2] - u[i + 3]) * s;
    }
    return SampledFunction(f.grid, std::move(d), f.boundary_band + 3);
  }
  const Eigen::Index n = f.size();
  const double h = f.grid.spacing();
  const ComplexVector& u = f.values;
  ComplexVector d(n);

  if (order == 1) {
    const double s = 1.0 / (12.0 * h);
    for (Eigen::Index i = 2; i < n - 2; ++i) {
      d[i] = (u[i - 2] - 8.0 * u[i - 1] + 8.0 * u[i + 1] - u[i + 2]) * s;
    }
    d[0] = (-25.0 * u[0] + 48.0 * u[1] - 36.0 * u[2] + 16.0 * u[3] - 3.0 * u[4]) * s;
    d[1] = (-3.0 * u[0] - 10.0 * u[1] + 18.0 * u[2] - 6.0 * u[3] + u[4]) * s;
    const Eigen::Index m = n - 1;
    d[m] = (25.0 * u[m] - 48.0 * u[m - 1] + 36.0 * u[m - 2] - 16.0 * u[m - 3] + 3.0 * u[m - 4]) * s;
    d[m - 1] = (3.0 * u[m] + 10.0 * u[m - 1] - 18.0 * u[m - 2] + 6.0 * u[m - 3] - u[m - 4]) * s;
  } else {
    const double s = 1.0 / (12.0 * h * h);
    for (Eigen::Index i = 2; i < n - 2; ++i) {
      d[i] = (-u[i - 2] + 16.0 * u[i - 1] - 30.0 * u[i] + 16.0 * u[i + 1] - u[i + 2]) * s;
    }
    d[0] = (45.0 * u[0] - 154.0 * u[1] + 214.0 * u[2] - 156.0 * u[3] + 61.0 * u[4] - 10.0 * u[5]) * s;
    d[1] = (10.0 * u[0] - 15.0 * u[1] - 4.0 * u[2] + 14.0 * u[3] - 6.0 * u[4] + u[5]) * s;
    const Eigen::Index m = n - 1;
    d[m] = (45.0 * u[m] - 154.0 * u[m - 1] + 214.0 * u[m - 2] - 156.0 * u[m - 3] + 61.0 * u[m - 4] -
            10.0 * u[m - 5]) *
           s;
    d[m - 1] = (10.0 * u[m] - 15.0 * u[m - 1] - 4.0 * u[m - 2] + 14.0 * u[m - 3] - 6.0 * u[m - 4] +
                u[m - 5]) *
               s;
  }
  return SampledFunction(f.grid, std::move(d), f.boundary_band + 2);
}

QuadResult quad_adaptive(const ScalarFunction& f, double a, double b, double tol,
                         long max_intervals) {
  if (!(tol > 0.0)) throw DomainError("quadrature tolerance must be positive");
  if (!std::isfinite(a) || !std::isfinite(b)) throw DomainError("quad_adaptive needs finite limits");
  if (a == b) return {Complex(0.0), 0.0};
  if (a > b) throw DomainError("quad_adaptive needs a < b");

  struct Panel {
    double a, b;
    Complex fa, fm, fb, whole;
    double tol;
    int depth;
  };
  constexpr int kMinDepth = 4;
  constexpr int kMaxDepth = 60;

  auto simpson = [](double lo, double hi, Complex flo, Complex fmid, Complex fhi) {
    return (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
  };

  const Complex fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  std::vector<Panel> stack;
  stack.push_back({a, b, fa, fm, fb, simpson(a, b, fa, fm, fb), tol, 0});

  Complex value(0.0);
  double error = 0.0;
  long intervals = 0;
  bool depth_exhausted = false;

  while (!stack.empty()) {
    Panel p = stack.back();
    stack.pop_back();
    const double m = 0.5 * (p.a + p.b);
    const double lm = 0.5 * (p.a + m), rm = 0.5 * (m + p.b);
    const Complex flm = f(lm), frm = f(rm);
    const Complex left = simpson(p.a, m, p.fa, flm, p.fm);
    const Complex right = simpson(m, p.b, p.fm, frm, p.fb);
    const Complex delta = left + right - p.whole;
    const double d = std::abs(delta);
    if (!std::isfinite(d)) {
      throw QuadratureError("non-finite integrand value", value, kInf);
    }
    ++intervals;
    const bool converged = p.depth >= kMinDepth && d <= 15.0 * p.tol;
    if (converged || p.depth >= kMaxDepth) {
      if (!converged) depth_exhausted = true;
      value += left + right + delta / 15.0;
      error += d / 15.0;
    } else {
      stack.push_back({m, p.b, p.fm, frm, p.fb, right, 0.5 * p.tol, p.depth + 1});
      stack.push_back({p.a, m, p.fa, flm, p.fm, left, 0.5 * p.tol, p.depth + 1});
    }
    if (intervals > max_intervals) {
      Complex best = value;
      for (const auto& q : stack) best += q.whole;
      throw QuadratureError("adaptive quadrature exhausted its subdivision budget", best, error);
    }
  }
  if (depth_exhausted) {
    throw QuadratureError("adaptive quadrature reached its depth limit", value, error);
  }
  return {value, error};
}

QuadResult quad_improper(const ScalarFunction& f, double a, double b, double tol) {
  if (std::isnan(a) || std::isnan(b) || !(a < b)) throw DomainError("quad_improper needs a < b");
  const bool lo_inf = std::isinf(a), hi_inf = std::isinf(b);
  if (!lo_inf && !hi_inf) return quad_adaptive(f, a, b, tol);

  // x = c + t/(1-t^2), dx = (1+t^2)/(1-t^2)^2 dt
  const double c = lo_inf && hi_inf ? 0.0 : (lo_inf ? b : a);
  const ScalarFunction mapped = [&f, c](double t) -> Complex {
    const double s = 1.0 - t * t;
    if (s <= 0.0) return Complex(0.0);
    const double x = c + t / s;
    if (!std::isfinite(x)) return Complex(0.0);
    const Complex v = f(x);
    if (v == Complex(0.0)) return v;
    return v * ((1.0 + t * t) / (s * s));
  };
  const double t_lo = lo_inf ? -1.0 : 0.0;
  const double t_hi = hi_inf ? 1.0 : 0.0;
  QuadResult r;
  try {
    r = quad_adaptive(mapped, t_lo, t_hi, tol);
  } catch (const QuadratureError& e) {
    throw DivergenceError(std::string("improper integral does not converge: ") + e.what());
  }
  if (!std::isfinite(std::abs(r.value)) || !std::isfinite(r.error)) {
    throw DivergenceError("improper integral does not converge");
  }
  return r;
}

GaussRule gauss_legendre(int n, double a, double b) {
  if (n < 1) throw DomainError("gauss_legendre needs n >= 1");
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double beta = k / std::sqrt(4.0 * k * k - 1.0);
    jacobi(k, k - 1) = beta;
    jacobi(k - 1, k) = beta;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(jacobi);
  const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  GaussRule rule;
  rule.nodes = mid + half * eig.eigenvalues().array();
  rule.weights = 2.0 * half * eig.eigenvectors().row(0).transpose().array().square();
  return rule;
}

}  // namespace pdm
