#pragma once

// Mass expressions: a small recursive-descent parser over
//   x, m0, numbers, + - * / ^, unary -, exp ln sqrt sin cos sinh cosh
// and a jet evaluator giving m, m', m'', m''' in one pass.

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "pdm/jet.hpp"

namespace pdm {

enum class Op { Number, Var, M0, Add, Sub, Mul, Div, Pow, Neg, Exp, Ln, Sqrt, Sin, Cos, Sinh, Cosh };

struct ExprNode {
  Op op = Op::Number;
  double value = 0.0;
  std::vector<std::shared_ptr<const ExprNode>> args;
};

using ExprPtr = std::shared_ptr<const ExprNode>;

/// Structural equality; literals compare exactly.
bool same_tree(const ExprNode& a, const ExprNode& b);

class MassExpr {
 public:
  /// Throws ParseError (1-based offset, expected tokens) on malformed input.
  static MassExpr parse(std::string_view text);

  const std::string& source() const { return source_; }
  const ExprNode& root() const { return *root_; }

  /// Fully parenthesized rendering that parses back to the same tree.
  std::string to_string() const;

  /// (m, m', m'', m''') at x. `m0` binds the identifier m0. Throws
  /// EvaluationError on ln/sqrt of a non-positive value, division by zero,
  /// a non-integer power of a non-positive base, or overflow.
  Jet3<double> eval_jet(double x, double m0 = 1.0) const;

  bool operator==(const MassExpr& o) const { return same_tree(*root_, *o.root_); }

 private:
  MassExpr(std::string source, ExprPtr root) : source_(std::move(source)), root_(std::move(root)) {}

  std::string source_;
  ExprPtr root_;
};

inline MassExpr parse(std::string_view text) { return MassExpr::parse(text); }
inline Jet3<double> eval_jet(const MassExpr& e, double x, double m0 = 1.0) {
  return e.eval_jet(x, m0);
}

}  // namespace pdm
