#pragma once

// Uniform grids, sampled complex functions, composite Simpson inner products,
// fourth-order finite differences and adaptive Simpson quadrature.

#include <complex>
#include <functional>
#include <limits>

#include <Eigen/Dense>

#include "pdm/jet.hpp"

namespace pdm {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Uniform grid x_i = x_min + i*h, i = 0..n_points-1.
class Grid {
 public:
  /// Smallest grid that fits the widest (6-point one-sided) stencil plus the boundary bands.
  static constexpr Eigen::Index kMinPoints = 9;

  Grid(double x_min, double x_max, Eigen::Index n_points);

  double x_min() const { return x_min_; }
  double x_max() const { return x_max_; }
  Eigen::Index size() const { return n_; }
  double spacing() const { return h_; }
  double x(Eigen::Index i) const { return x_min_ + static_cast<double>(i) * h_; }
  RealVector points() const;

  bool operator==(const Grid& o) const {
    return x_min_ == o.x_min_ && x_max_ == o.x_max_ && n_ == o.n_;
  }

 private:
  double x_min_;
  double x_max_;
  Eigen::Index n_;
  double h_;
};

/// Complex samples on a grid. `boundary_band` counts the points at each end
/// that came out of one-sided stencils; residuals skip them.
struct SampledFunction {
  Grid grid;
  ComplexVector values;
  int boundary_band = 0;

  SampledFunction(Grid g, ComplexVector v, int band = 0);
  Eigen::Index size() const { return grid.size(); }
};

template <typename F>
SampledFunction sample(const Grid& grid, F&& f) {
  ComplexVector v(grid.size());
  for (Eigen::Index i = 0; i < grid.size(); ++i) v[i] = Complex(f(grid.x(i)));
  return SampledFunction(grid, std::move(v));
}

/// Composite Simpson weights; an odd number of intervals closes with the 3/8 rule.
RealVector simpson_weights(const Grid& grid);

/// Integral of conj(f)*g over the grid (antilinear in the first slot).
Complex inner_product(const SampledFunction& f, const SampledFunction& g);

/// Simpson L2 norm of f.
double l2_norm(const SampledFunction& f);

/// Discrete L2 norm over the interior, skipping `band` points at each end.
double interior_norm(const ComplexVector& v, double h, int band);

/// Relative interior residual ||f - g|| / max(||g||, 1e-300). The boundary band
/// (at least 2 points, more if either input carries a wider band) is excluded.
double l2_residual(const SampledFunction& f, const SampledFunction& g);

/// Fourth-order finite-difference derivative of order 1, 2 or 3.
SampledFunction fd_derivative(const SampledFunction& f, int order);

struct QuadResult {
  Complex value;
  double error;
};

using ScalarFunction = std::function<Complex(double)>;

/// Adaptive Simpson on [a, b] with the 1/15 bisection error estimate. Stops
/// when the accumulated absolute error estimate is below `tol`.
/// Throws QuadratureError when `max_intervals` subdivisions are exhausted.
QuadResult quad_adaptive(const ScalarFunction& f, double a, double b, double tol,
                         long max_intervals = 400000);

/// Integral over an interval with one or both endpoints infinite, via the map
/// x = c + t/(1-t^2). Throws DivergenceError when the mapped integral fails to converge.
QuadResult quad_improper(const ScalarFunction& f, double a, double b, double tol);

struct GaussRule {
  RealVector nodes;
  RealVector weights;
};

/// n-point Gauss-Legendre rule on [a, b] (Golub-Welsch).
GaussRule gauss_legendre(int n, double a, double b);

}  // namespace pdm
