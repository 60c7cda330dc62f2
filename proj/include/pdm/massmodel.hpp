#pragma once

// Positive mass profiles m(x) with jets to third order, the antiderivative
// F(x) = integral of sqrt(m), its limits at +-infinity and its inverse.

#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "pdm/jet.hpp"
#include "pdm/mexpr.hpp"

namespace pdm {

enum class MassKind { Constant, Gaussian, Lorentzian, ExponentialUp, Custom };

/// F(-inf) and F(+inf). `heuristic` marks limits found by probing a custom
/// expression; `confident` is false when the probe could not decide.
struct FRange {
  double f_minus;
  double f_plus;
  bool heuristic = false;
  bool confident = true;

  bool left_finite() const;
  bool right_finite() const;
};

class MassModel {
 public:
  static MassModel constant(double m0);
  static MassModel gaussian(double m0);
  static MassModel lorentzian(double m0);
  static MassModel exponential_up(double m0);
  /// F is anchored at F(0) = 0 and tabulated every 0.25 on [-80, 80] up front.
  /// Throws PositivityError if m(0) <= 0.
  static MassModel custom(const MassExpr& expr, double m0 = 1.0);
  /// "constant", "gaussian", "lorentzian" or "exp-up".
  static MassModel from_name(std::string_view name, double m0);

  MassKind kind() const { return kind_; }
  double m0() const { return m0_; }
  std::string name() const;
  const MassExpr* expr() const;

  /// (m, m', m'', m'''). Throws PositivityError when m < 0 or not finite;
  /// a value that underflows to exactly zero is accepted.
  Jet3<double> jet(double x) const;
  double m(double x) const { return jet(x)[0]; }

  double F(double x) const;
  FRange F_limits() const;
  /// Throws RangeError unless f lies strictly inside (F(-inf), F(+inf)).
  double F_inverse(double f) const;

 private:
  struct CustomData;

  MassModel(MassKind kind, double m0) : kind_(kind), m0_(m0) {}

  MassKind kind_;
  double m0_;
  std::shared_ptr<const CustomData> custom_;
};

inline Jet3<double> mass_jet(const MassModel& m, double x) { return m.jet(x); }
inline double F_of(const MassModel& m, double x) { return m.F(x); }
inline FRange F_limits(const MassModel& m) { return m.F_limits(); }
inline double F_inverse(const MassModel& m, double f) { return m.F_inverse(f); }

}  // namespace pdm
