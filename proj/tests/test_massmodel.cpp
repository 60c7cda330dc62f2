#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "pdm/errors.hpp"
#include "pdm/massmodel.hpp"
#include "pdm/numerics.hpp"

using namespace pdm;
using std::numbers::pi;

namespace {

std::vector<MassModel> all_models() {
  return {MassModel::constant(1.3), MassModel::gaussian(0.8), MassModel::lorentzian(2.0),
          MassModel::exponential_up(0.5), MassModel::custom(MassExpr::parse("(2+sin(x))/(1+x^2)"), 1.0)};
}

}  // namespace

TEST_CASE("built-in jets") {
  const auto g = MassModel::gaussian(1.0).jet(0.0);
  CHECK(g[0] == 1.0);
  CHECK(g[1] == 0.0);
  CHECK(g[2] == -2.0);
  CHECK(g[3] == 0.0);
  const auto l = MassModel::lorentzian(1.0).jet(0.0);
  CHECK(l[0] == 1.0);
  CHECK(l[2] == -2.0);
  const auto e = MassModel::exponential_up(2.0).jet(0.0);
  for (int k = 0; k < 4; ++k) CHECK(e[k] == 2.0);
  CHECK_THROWS_AS(MassModel::gaussian(0.0), DomainError);
  CHECK_THROWS_AS(MassModel::from_name("parabolic", 1.0), DomainError);
  CHECK_THROWS_AS(MassModel::custom(MassExpr::parse("x"), 1.0), PositivityError);
  CHECK_THROWS_AS(MassModel::custom(MassExpr::parse("1-x^2"), 1.0).jet(2.0), PositivityError);
}

TEST_CASE("closed-form antiderivatives and limits") {
  CHECK(MassModel::gaussian(1.0).F(60.0) == doctest::Approx(std::sqrt(pi / 2.0)).epsilon(1e-15));
  CHECK(MassModel::lorentzian(4.0).F(0.0) == 0.0);
  CHECK(MassModel::exponential_up(1.0).F(0.0) == 2.0);
  CHECK(MassModel::constant(4.0).F(1.5) == doctest::Approx(3.0));

  const FRange g = MassModel::gaussian(2.0).F_limits();
  CHECK(g.f_minus == doctest::Approx(-std::sqrt(pi)));
  CHECK(g.f_plus == doctest::Approx(std::sqrt(pi)));
  CHECK_FALSE(g.heuristic);
  for (double m0 : {0.3, 7.0}) {
    const FRange e = MassModel::exponential_up(m0).F_limits();
    CHECK(e.f_minus == 0.0);
    CHECK(std::isinf(e.f_plus));
  }
  const FRange c = MassModel::constant(1.0).F_limits();
  CHECK((std::isinf(c.f_minus) && std::isinf(c.f_plus)));
  const FRange lo = MassModel::lorentzian(1.0).F_limits();
  CHECK((!lo.left_finite() && !lo.right_finite()));
}

TEST_CASE("F' equals sqrt(m) for every model") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (const MassModel& model : all_models()) {
    for (int k = 0; k < 100; ++k) {
      const double x = u(rng);
      const double d = oracle::central_diff([&](double t) { return model.F(t); }, x, 1e-3);
      CHECK(d == doctest::Approx(std::sqrt(model.m(x))).epsilon(1e-8));
    }
  }
}

TEST_CASE("F is strictly increasing and F_inverse inverts it") {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> u(-6.0, 6.0);
  for (const MassModel& model : all_models()) {
    for (int k = 0; k < 60; ++k) {
      double a = u(rng), b = u(rng);
      if (a > b) std::swap(a, b);
      if (a == b) continue;
      CHECK(model.F(a) < model.F(b));
      // Backward error everywhere; forward error only where sqrt(m) keeps the inverse well conditioned.
      const double x = u(rng), f = model.F(x), back = model.F_inverse(f);
      CHECK(std::abs(model.F(back) - f) <= 1e-11 * std::max(1.0, std::abs(f)));
      if (std::sqrt(model.m(x)) > 1e-4) CHECK(std::abs(back - x) <= 1e-9 * std::max(1.0, std::abs(x)));
    }
  }
  CHECK(MassModel::constant(1.0).F_inverse(3.0) == doctest::Approx(3.0));
  CHECK(MassModel::gaussian(1.0).F_inverse(0.0) == doctest::Approx(0.0).scale(1.0));
  CHECK(MassModel::exponential_up(1.0).F_inverse(2.0) == doctest::Approx(0.0).scale(1.0));
  CHECK_THROWS_AS(MassModel::gaussian(1.0).F_inverse(2.0), RangeError);
  CHECK_THROWS_AS(MassModel::exponential_up(1.0).F_inverse(0.0), RangeError);
}

TEST_CASE("custom masses") {
  const MassModel custom = MassModel::custom(MassExpr::parse("m0*exp(-x^2)"), 1.0);
  const MassModel builtin = MassModel::gaussian(1.0);
  for (int i = 0; i <= 120; ++i) {
    const double x = -6.0 + 0.1 * i;
    CHECK(std::abs(custom.F(x) - builtin.F(x)) < 1e-10);
  }
  const FRange r = custom.F_limits();
  CHECK(r.heuristic);
  CHECK(r.confident);
  CHECK(r.f_plus == doctest::Approx(std::sqrt(pi / 2.0)).epsilon(1e-10));
  CHECK(r.f_minus == doctest::Approx(-std::sqrt(pi / 2.0)).epsilon(1e-10));

  const FRange grow = MassModel::custom(MassExpr::parse("1+x^2"), 1.0).F_limits();
  CHECK((std::isinf(grow.f_minus) && std::isinf(grow.f_plus)));
  CHECK(grow.confident);

  // exp(20x) overflows before the last probe on the right: heuristic and not confident.
  const FRange ex = MassModel::custom(MassExpr::parse("exp(20*x)"), 1.0).F_limits();
  CHECK(std::isinf(ex.f_plus));
  CHECK_FALSE(ex.confident);
  CHECK(ex.f_minus == doctest::Approx(-0.1).epsilon(1e-8));  // -integral of e^{10x} over (-inf, 0)

  CHECK(custom.expr() != nullptr);
  CHECK(builtin.expr() == nullptr);
  CHECK(custom.name() == "custom");
}
