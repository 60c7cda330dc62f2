#include "pdm/massmodel.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "pdm/errors.hpp"
#include "pdm/numerics.hpp"

namespace pdm {

namespace {

constexpr double kCheckpointStep = 0.25;
constexpr int kCheckpointsPerSide = 320;  // covers [-80, 80]

// Adaptive Gauss-Legendre: a 20-point panel is split while it disagrees with
// the sum over its two halves. `floor` is an absolute tolerance per unit length
// so underflowing tails stop refining.
double gl_panel(const std::function<double(double)>& f, double a, double b) {
  static const GaussRule rule = gauss_legendre(20, -1.0, 1.0);
  const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  double s = 0.0;
  for (Eigen::Index i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return half * s;
}

double gl_refine(const std::function<double(double)>& f, double a, double b, double whole, double floor,
                 int depth) {
  const double m = 0.5 * (a + b);
  const double l = gl_panel(f, a, m), r = gl_panel(f, m, b);
  const double sum = l + r;
  if (depth >= 24 || std::abs(sum - whole) <= 1e-13 * std::abs(sum) + floor * (b - a)) return sum;
  return gl_refine(f, a, m, l, floor, depth + 1) + gl_refine(f, m, b, r, floor, depth + 1);
}

double gl_adaptive(const std::function<double(double)>& f, double a, double b, double floor) {
  if (a == b) return 0.0;
  return gl_refine(f, a, b, gl_panel(f, a, b), floor, 0);
}

void check_m0(double m0) {
  if (!(m0 > 0.0) || !std::isfinite(m0)) throw DomainError("mass scale m0 must be positive and finite");
}

void check_positive(double m, double x) {
  if (!std::isfinite(m) || m < 0.0) {
    throw PositivityError("mass is not positive at x = " + std::to_string(x));
  }
}

}  // namespace

bool FRange::left_finite() const { return std::isfinite(f_minus); }
bool FRange::right_finite() const { return std::isfinite(f_plus); }

struct MassModel::CustomData {
  MassExpr expr;
  double m0;
  // F at +-k*step, k = 0..valid
  std::vector<double> f_pos{0.0};
  std::vector<double> f_neg{0.0};
  FRange limits{-kInf, kInf, true, true};
  double floor = 0.0;  // absolute quadrature tolerance per unit length

  double sqrt_m(double x) const {
    const double m = expr.eval_jet(x, m0)[0];
    check_positive(m, x);
    return std::sqrt(m);
  }

  void build() {
    const std::function<double(double)> g = [this](double x) { return sqrt_m(x); };
    floor = 1e-16 * sqrt_m(0.0);
    for (int side = 0; side < 2; ++side) {
      auto& table = side == 0 ? f_pos : f_neg;
      const double s = side == 0 ? 1.0 : -1.0;
      for (int k = 1; k <= kCheckpointsPerSide; ++k) {
        double piece;
        try {
          piece = side == 0 ? gl_adaptive(g, kCheckpointStep * (k - 1), kCheckpointStep * k, floor)
                            : gl_adaptive(g, -kCheckpointStep * k, -kCheckpointStep * (k - 1), floor);
        } catch (const EvaluationError&) {
          break;
        }
        table.push_back(table.back() + s * piece);
      }
    }
    limits.f_plus = probe_limit(f_pos, 1.0, limits.confident);
    bool left_confident = true;
    limits.f_minus = probe_limit(f_neg, -1.0, left_confident);
    limits.confident = limits.confident && left_confident;
  }

  // Probes |F| at L = 10, 20, 40, 80.
  static double probe_limit(const std::vector<double>& table, double s, bool& confident) {
    const int full = kCheckpointsPerSide;
    if (static_cast<int>(table.size()) <= full) {
      // The expression stopped evaluating before |x| = 80 (overflow): unbounded growth is
      // likely but not established.
      confident = false;
      return s * kInf;
    }
    std::array<double, 4> v{};
    for (int i = 0; i < 4; ++i) v[i] = s * table[static_cast<std::size_t>(40 << i)];
    if (std::abs(v[3] - v[2]) <= 1e-8 * std::max(1.0, std::abs(v[3]))) return s * v[3];
    bool growing = true;
    for (int i = 0; i < 3; ++i) growing = growing && v[i] > 0.0 && v[i + 1] / v[i] > 1.05;
    if (growing) return s * kInf;
    confident = false;
    if (v[3] / v[2] > 1.05) return s * kInf;
    // Aitken extrapolation of the last three probes.
    const double d1 = v[2] - v[1], d2 = v[3] - v[2];
    const double denom = d2 - d1;
    const double lim = denom != 0.0 ? v[3] - d2 * d2 / denom : v[3];
    return s * std::max(lim, v[3]);
  }

  double F(double x) const {
    if (std::isinf(x)) return x > 0 ? limits.f_plus : limits.f_minus;
    const std::function<double(double)> g = [this](double t) { return sqrt_m(t); };
    const bool pos = x >= 0.0;
    const auto& table = pos ? f_pos : f_neg;
    const double ax = std::abs(x);
    const int valid = static_cast<int>(table.size()) - 1;
    int k = static_cast<int>(std::floor(ax / kCheckpointStep));
    if (k > valid) {
      const double lim = pos ? limits.f_plus : limits.f_minus;
      if (std::isfinite(lim)) return lim;
      if (valid < kCheckpointsPerSide) throw EvaluationError("custom mass cannot be integrated this far out");
      k = valid;
    }
    const double xk = kCheckpointStep * k;
    if (pos) return table[static_cast<std::size_t>(k)] + gl_adaptive(g, xk, ax, floor);
    return table[static_cast<std::size_t>(k)] - gl_adaptive(g, x, -xk, floor);
  }
};

MassModel MassModel::constant(double m0) {
  check_m0(m0);
  return MassModel(MassKind::Constant, m0);
}
MassModel MassModel::gaussian(double m0) {
  check_m0(m0);
  return MassModel(MassKind::Gaussian, m0);
}
MassModel MassModel::lorentzian(double m0) {
  check_m0(m0);
  return MassModel(MassKind::Lorentzian, m0);
}
MassModel MassModel::exponential_up(double m0) {
  check_m0(m0);
  return MassModel(MassKind::ExponentialUp, m0);
}

MassModel MassModel::custom(const MassExpr& expr, double m0) {
  check_m0(m0);
  const double at0 = expr.eval_jet(0.0, m0)[0];
  if (!(at0 > 0.0) || !std::isfinite(at0)) throw PositivityError("custom mass must be positive at x = 0");
  auto data = std::make_shared<CustomData>(CustomData{expr, m0});
  data->build();
  MassModel model(MassKind::Custom, m0);
  model.custom_ = std::move(data);
  return model;
}

MassModel MassModel::from_name(std::string_view name, double m0) {
  if (name == "constant") return constant(m0);
  if (name == "gaussian") return gaussian(m0);
  if (name == "lorentzian") return lorentzian(m0);
  if (name == "exp-up") return exponential_up(m0);
  throw DomainError("unknown mass model '" + std::string(name) +
                    "' (expected constant, gaussian, lorentzian or exp-up)");
}

std::string MassModel::name() const {
  switch (kind_) {
    case MassKind::Constant: return "constant";
    case MassKind::Gaussian: return "gaussian";
    case MassKind::Lorentzian: return "lorentzian";
    case MassKind::ExponentialUp: return "exp-up";
    case MassKind::Custom: return "custom";
  }
  return "?";
}

const MassExpr* MassModel::expr() const { return custom_ ? &custom_->expr : nullptr; }

Jet3<double> MassModel::jet(double x) const {
  Jet3<double> j;
  switch (kind_) {
    case MassKind::Constant:
      j = Jet3<double>(m0_);
      break;
    case MassKind::Gaussian: {
      const double m = m0_ * std::exp(-x * x);
      j = Jet3<double>(m, -2.0 * x * m, (4.0 * x * x - 2.0) * m, (-8.0 * x * x * x + 12.0 * x) * m);
      break;
    }
    case MassKind::Lorentzian: {
      const double u = 1.0 + x * x;
      j = Jet3<double>(m0_ / u, -2.0 * x * m0_ / (u * u), m0_ * (6.0 * x * x - 2.0) / (u * u * u),
                       24.0 * x * m0_ * (1.0 - x * x) / (u * u * u * u));
      break;
    }
    case MassKind::ExponentialUp: {
      const double m = m0_ * std::exp(x);
      j = Jet3<double>(m, m, m, m);
      break;
    }
    case MassKind::Custom:
      j = custom_->expr.eval_jet(x, m0_);
      break;
  }
  check_positive(j[0], x);
  return j;
}

double MassModel::F(double x) const {
  switch (kind_) {
    case MassKind::Constant: return std::sqrt(m0_) * x;
    case MassKind::Gaussian: return std::sqrt(m0_ * std::numbers::pi / 2.0) * std::erf(x / std::numbers::sqrt2);
    case MassKind::Lorentzian: return std::sqrt(m0_) * std::asinh(x);
    case MassKind::ExponentialUp: return 2.0 * std::sqrt(m0_) * std::exp(0.5 * x);
    case MassKind::Custom: return custom_->F(x);
  }
  return 0.0;
}

FRange MassModel::F_limits() const {
  switch (kind_) {
    case MassKind::Gaussian: {
      const double f = std::sqrt(m0_ * std::numbers::pi / 2.0);
      return {-f, f};
    }
    case MassKind::ExponentialUp: return {0.0, kInf};
    case MassKind::Custom: return custom_->limits;
    default: return {-kInf, kInf};
  }
}

double MassModel::F_inverse(double f) const {
  const FRange r = F_limits();
  if (!(f > r.f_minus && f < r.f_plus)) throw RangeError("value lies outside the range of F");
  switch (kind_) {
    case MassKind::Constant: return f / std::sqrt(m0_);
    case MassKind::Lorentzian: return std::sinh(f / std::sqrt(m0_));
    case MassKind::ExponentialUp: return 2.0 * std::log(f / (2.0 * std::sqrt(m0_)));
    default: break;
  }
  double lo = -1.0, hi = 1.0;
  for (int i = 0; i < 64 && F(lo) > f; ++i) lo *= 2.0;
  for (int i = 0; i < 64 && F(hi) < f; ++i) hi *= 2.0;
  const double tol = 1e-12 * std::max(1.0, std::abs(f));
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double g = F(x) - f;
    if (std::abs(g) < tol) return x;
    if (g > 0.0) hi = x; else lo = x;
    const double slope = std::sqrt(m(x));
    double nx = slope > 0.0 ? x - g / slope : 0.5 * (lo + hi);
    if (!(nx > lo && nx < hi)) nx = 0.5 * (lo + hi);
    if (nx == x || hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x))) {
      return nx;
    }
    x = nx;
  }
  return x;
}

}  // namespace pdm
