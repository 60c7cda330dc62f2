#include <cmath>
#include <random>
#include <string>

#include "doctest.h"
#include "pdm/errors.hpp"
#include "pdm/massmodel.hpp"
#include "pdm/mexpr.hpp"

using namespace pdm;

namespace {

ExprPtr leaf(Op op, double v = 0.0) { return std::make_shared<ExprNode>(ExprNode{op, v, {}}); }
ExprPtr node(Op op, std::vector<ExprPtr> args) { return std::make_shared<ExprNode>(ExprNode{op, 0.0, std::move(args)}); }

ParseError parse_error(const std::string& text) {
  try {
    parse(text);
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("expected a parse error for '" << text << "'");
  return ParseError("", 0, {});
}

void check_jet(const Jet3<double>& j, double v0, double v1, double v2, double v3) {
  CHECK(j[0] == doctest::Approx(v0).epsilon(1e-14));
  CHECK(j[1] == doctest::Approx(v1).epsilon(1e-14));
  CHECK(j[2] == doctest::Approx(v2).epsilon(1e-14));
  CHECK(j[3] == doctest::Approx(v3).epsilon(1e-14));
}

}  // namespace

TEST_CASE("parse builds the expected trees") {
  const auto x = leaf(Op::Var);
  const auto two = leaf(Op::Number, 2.0), one = leaf(Op::Number, 1.0);
  const auto gauss = node(Op::Mul, {two, node(Op::Exp, {node(Op::Neg, {node(Op::Pow, {x, two})})})});
  CHECK(same_tree(parse("2*exp(-x^2)").root(), *gauss));
  const auto lorentz = node(Op::Div, {one, node(Op::Add, {one, node(Op::Pow, {x, two})})});
  CHECK(same_tree(parse("1/(1+x^2)").root(), *lorentz));
  CHECK(same_tree(parse("  1 / ( 1 + x ^ 2 ) ").root(), *lorentz));
}

TEST_CASE("precedence and associativity") {
  // ^ is right associative and binds tighter than unary minus.
  CHECK(parse("2^3^2").eval_jet(0.0)[0] == 512.0);
  CHECK(parse("-2^2").eval_jet(0.0)[0] == -4.0);
  CHECK(parse("2^-1").eval_jet(0.0)[0] == 0.5);
  CHECK(parse("8/4/2").eval_jet(0.0)[0] == 1.0);
  CHECK(parse("1-2-3").eval_jet(0.0)[0] == -4.0);
  CHECK(parse("1+2*3").eval_jet(0.0)[0] == 7.0);
  CHECK(parse("m0*2").eval_jet(0.0, 3.0)[0] == 6.0);
  CHECK(parse("1.5e2").eval_jet(0.0)[0] == 150.0);
}

TEST_CASE("parse errors carry position and expectations") {
  const ParseError open = parse_error("exp(x");
  CHECK(open.offset == 6);
  REQUIRE(open.expected.size() == 1);
  CHECK(open.expected[0] == ")");
  CHECK(parse_error("foo(x)").offset == 1);          // unknown identifier
  CHECK(parse_error("2x").offset == 2);              // no implicit multiplication
  CHECK(parse_error("1 + ").offset == 5);            // end of input
  CHECK(parse_error("exp(x, 2)").offset >= 1);       // arity
  CHECK(parse_error("").offset == 1);
  CHECK(parse_error("(1+x))").offset == 6);
}

TEST_CASE("print and reparse round trip") {
  for (const char* text : {"2*exp(-x^2)", "1/(1+x^2)", "m0*exp(x)", "-x^2+3*x-1", "sqrt(1+x^2)*cosh(x/3)",
                           "2^3^2", "ln(2+sin(x))^2", "1e-3*x", "0.1+0.2"}) {
    const MassExpr e = parse(text);
    const MassExpr back = parse(e.to_string());
    CHECK(e == back);
    CHECK(back.to_string() == e.to_string());
  }
}

TEST_CASE("jet evaluation") {
  check_jet(parse("x^2").eval_jet(3.0), 9.0, 6.0, 2.0, 0.0);
  check_jet(parse("exp(-x^2)").eval_jet(0.0), 1.0, 0.0, -2.0, 0.0);
  // Symbolic derivatives of 1/(1+x^2) at 1: -2x/u^2, (6x^2-2)/u^3, 24x(1-x^2)/u^4.
  check_jet(parse("1/(1+x^2)").eval_jet(1.0), 0.5, -0.5, 0.5, 0.0);
  check_jet(parse("sin(x)*cos(x)").eval_jet(0.0), 0.0, 1.0, 0.0, -4.0);
  check_jet(parse("sinh(x)+cosh(x)").eval_jet(0.5), std::exp(0.5), std::exp(0.5), std::exp(0.5), std::exp(0.5));
  check_jet(parse("ln(x)").eval_jet(2.0), std::log(2.0), 0.5, -0.25, 0.25);
  check_jet(parse("sqrt(x)").eval_jet(4.0), 2.0, 0.25, -1.0 / 32.0, 3.0 / 256.0);
  check_jet(parse("x^x").eval_jet(1.0), 1.0, 1.0, 2.0, 3.0);
  check_jet(parse("m0*x").eval_jet(2.0, 5.0), 10.0, 5.0, 0.0, 0.0);
}

TEST_CASE("evaluation errors") {
  CHECK_THROWS_AS(parse("ln(x)").eval_jet(0.0), EvaluationError);
  CHECK_THROWS_AS(parse("sqrt(x)").eval_jet(-1.0), EvaluationError);
  CHECK_THROWS_AS(parse("1/x").eval_jet(0.0), EvaluationError);
  CHECK_THROWS_AS(parse("x^0.5").eval_jet(-2.0), EvaluationError);
  CHECK_THROWS_AS(parse("exp(x)").eval_jet(800.0), EvaluationError);
  CHECK_NOTHROW(parse("x^2").eval_jet(-2.0));
}

TEST_CASE("text forms of the built-in masses match their jets") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  const double m0 = 1.7;
  const std::vector<std::pair<const char*, MassModel>> pairs = {{"m0", MassModel::constant(m0)},
                                                                {"m0*exp(-x^2)", MassModel::gaussian(m0)},
                                                                {"m0/(1+x^2)", MassModel::lorentzian(m0)},
                                                                {"m0*exp(x)", MassModel::exponential_up(m0)}};
  for (const auto& [text, model] : pairs) {
    const MassExpr e = parse(text);
    for (int k = 0; k < 50; ++k) {
      const double x = u(rng);
      const auto a = e.eval_jet(x, m0), b = model.jet(x);
      for (int d = 0; d < 4; ++d) {
        CHECK(std::abs(a[d] - b[d]) <= 1e-12 * std::max(1e-300, std::abs(b[d])) + 1e-300);
      }
    }
  }
}
