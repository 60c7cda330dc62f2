#include "pdm/mexpr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "pdm/errors.hpp"

namespace pdm {

namespace {

struct FunctionInfo {
  const char* name;
  Op op;
};

constexpr FunctionInfo kFunctions[] = {
    {"exp", Op::Exp}, {"ln", Op::Ln},     {"sqrt", Op::Sqrt}, {"sin", Op::Sin},
    {"cos", Op::Cos}, {"sinh", Op::Sinh}, {"cosh", Op::Cosh},
};

const char* function_name(Op op) {
  for (const auto& f : kFunctions) {
    if (f.op == op) return f.name;
  }
  return "?";
}

ExprPtr make(Op op, std::vector<ExprPtr> args = {}, double value = 0.0) {
  auto n = std::make_shared<ExprNode>();
  n->op = op;
  n->value = value;
  n->args = std::move(args);
  return n;
}

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma, End };

struct Token {
  Tok kind;
  std::size_t offset;  // 1-based
  std::string text;
  double number = 0.0;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t pos = i + 1;
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      if (j < s.size() && s[j] == '.') {
        ++j;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      }
      if (j < s.size() && (s[j] == 'e' || s[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < s.size() && (s[k] == '+' || s[k] == '-')) ++k;
        if (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) {
          while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
          j = k;
        }
      }
      std::string text(s.substr(i, j - i));
      if (text == ".") throw ParseError("malformed number", pos, {"number"});
      const double v = std::strtod(text.c_str(), nullptr);
      if (!std::isfinite(v)) throw ParseError("number out of range", pos, {"number"});
      out.push_back({Tok::Number, pos, text, v});
      i = j;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Tok::Ident, pos, std::string(s.substr(i, j - i))});
      i = j;
      continue;
    }
    Tok k;
    switch (c) {
      case '+': k = Tok::Plus; break;
      case '-': k = Tok::Minus; break;
      case '*': k = Tok::Star; break;
      case '/': k = Tok::Slash; break;
      case '^': k = Tok::Caret; break;
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      case ',': k = Tok::Comma; break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", pos,
                         {"number", "identifier", "operator"});
    }
    out.push_back({k, pos, std::string(1, c)});
    ++i;
  }
  out.push_back({Tok::End, s.size() + 1, ""});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  ExprPtr parse_all() {
    ExprPtr e = expr();
    if (peek().kind != Tok::End) {
      fail("unexpected '" + peek().text + "'", {"+", "-", "*", "/", "^", "end of input"});
    }
    return e;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }

  [[noreturn]] void fail(const std::string& msg, std::vector<std::string> expected) const {
    throw ParseError(msg + " at offset " + std::to_string(peek().offset), peek().offset,
                     std::move(expected));
  }

  ExprPtr expr() {
    ExprPtr lhs = term();
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      const Op op = next().kind == Tok::Plus ? Op::Add : Op::Sub;
      lhs = make(op, {lhs, term()});
    }
    return lhs;
  }

  ExprPtr term() {
    ExprPtr lhs = unary();
    while (peek().kind == Tok::Star || peek().kind == Tok::Slash) {
      const Op op = next().kind == Tok::Star ? Op::Mul : Op::Div;
      lhs = make(op, {lhs, unary()});
    }
    return lhs;
  }

  ExprPtr unary() {
    if (peek().kind == Tok::Minus) {
      next();
      return make(Op::Neg, {unary()});
    }
    return power();
  }

  // Right-associative; the exponent may carry its own unary minus.
  ExprPtr power() {
    ExprPtr base = primary();
    if (peek().kind == Tok::Caret) {
      next();
      return make(Op::Pow, {base, unary()});
    }
    return base;
  }

  ExprPtr primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Number:
        next();
        return make(Op::Number, {}, t.number);
      case Tok::LParen: {
        next();
        ExprPtr e = expr();
        if (peek().kind != Tok::RParen) fail("expected ')'", {")"});
        next();
        return e;
      }
      case Tok::Ident:
        return identifier();
      default:
        fail(t.kind == Tok::End ? "unexpected end of input" : "unexpected '" + t.text + "'",
             {"number", "x", "m0", "function", "(", "-"});
    }
  }

  ExprPtr identifier() {
    const Token t = next();
    if (t.text == "x") return make(Op::Var);
    if (t.text == "m0") return make(Op::M0);
    for (const auto& f : kFunctions) {
      if (t.text != f.name) continue;
      if (peek().kind != Tok::LParen) fail("expected '(' after " + t.text, {"("});
      next();
      std::vector<ExprPtr> args;
      if (peek().kind != Tok::RParen) {
        args.push_back(expr());
        while (peek().kind == Tok::Comma) {
          next();
          args.push_back(expr());
        }
      }
      if (peek().kind != Tok::RParen) fail("expected ')'", {")"});
      if (args.size() != 1) {
        throw ParseError(t.text + " takes exactly 1 argument, got " + std::to_string(args.size()),
                         t.offset, {"1 argument"});
      }
      next();
      return make(f.op, std::move(args));
    }
    throw ParseError("unknown identifier '" + t.text + "'", t.offset,
                     {"x", "m0", "exp", "ln", "sqrt", "sin", "cos", "sinh", "cosh"});
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string render(const ExprNode& n) {
  auto bin = [&](const char* sym) {
    return "(" + render(*n.args[0]) + " " + sym + " " + render(*n.args[1]) + ")";
  };
  switch (n.op) {
    case Op::Number: return format_number(n.value);
    case Op::Var: return "x";
    case Op::M0: return "m0";
    case Op::Add: return bin("+");
    case Op::Sub: return bin("-");
    case Op::Mul: return bin("*");
    case Op::Div: return bin("/");
    case Op::Pow: return bin("^");
    case Op::Neg: return "(-" + render(*n.args[0]) + ")";
    default: return std::string(function_name(n.op)) + "(" + render(*n.args[0]) + ")";
  }
}

using J = Jet3<double>;

[[noreturn]] void eval_fail(const std::string& msg, double x) {
  throw EvaluationError(msg + " at x = " + format_number(x));
}

J eval(const ExprNode& n, double x, double m0) {
  J r;
  switch (n.op) {
    case Op::Number: r = J::constant(n.value); break;
    case Op::Var: r = J::variable(x); break;
    case Op::M0: r = J::constant(m0); break;
    case Op::Add: r = eval(*n.args[0], x, m0) + eval(*n.args[1], x, m0); break;
    case Op::Sub: r = eval(*n.args[0], x, m0) - eval(*n.args[1], x, m0); break;
    case Op::Mul: r = eval(*n.args[0], x, m0) * eval(*n.args[1], x, m0); break;
    case Op::Div: {
      const J b = eval(*n.args[1], x, m0);
      if (b[0] == 0.0) eval_fail("division by zero", x);
      r = eval(*n.args[0], x, m0) / b;
      break;
    }
    case Op::Pow: {
      const J a = eval(*n.args[0], x, m0);
      const J b = eval(*n.args[1], x, m0);
      if (b.is_constant()) {
        const double p = b[0];
        if (p != std::floor(p) && !(a[0] > 0.0)) eval_fail("non-integer power of a non-positive base", x);
        if (p < 0.0 && a[0] == 0.0) eval_fail("negative power of zero", x);
        r = pow(a, p);
      } else {
        if (!(a[0] > 0.0)) eval_fail("variable power of a non-positive base", x);
        r = pow(a, b);
      }
      break;
    }
    case Op::Neg: r = -eval(*n.args[0], x, m0); break;
    case Op::Exp: r = exp(eval(*n.args[0], x, m0)); break;
    case Op::Ln: {
      const J a = eval(*n.args[0], x, m0);
      if (!(a[0] > 0.0)) eval_fail("ln of a non-positive value", x);
      r = log(a);
      break;
    }
    case Op::Sqrt: {
      const J a = eval(*n.args[0], x, m0);
      if (!(a[0] > 0.0)) eval_fail("sqrt of a non-positive value", x);
      r = sqrt(a);
      break;
    }
    case Op::Sin: r = sin(eval(*n.args[0], x, m0)); break;
    case Op::Cos: r = cos(eval(*n.args[0], x, m0)); break;
    case Op::Sinh: r = sinh(eval(*n.args[0], x, m0)); break;
    case Op::Cosh: r = cosh(eval(*n.args[0], x, m0)); break;
  }
  for (int k = 0; k < 4; ++k) {
    if (!std::isfinite(r[k])) eval_fail("overflow or undefined value", x);
  }
  return r;
}

}  // namespace

bool same_tree(const ExprNode& a, const ExprNode& b) {
  if (a.op != b.op || a.args.size() != b.args.size()) return false;
  if (a.op == Op::Number && a.value != b.value) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (!same_tree(*a.args[i], *b.args[i])) return false;
  }
  return true;
}

MassExpr MassExpr::parse(std::string_view text) {
  Parser p(tokenize(text));
  return MassExpr(std::string(text), p.parse_all());
}

std::string MassExpr::to_string() const { return render(*root_); }

Jet3<double> MassExpr::eval_jet(double x, double m0) const { return eval(*root_, x, m0); }

}  // namespace pdm
