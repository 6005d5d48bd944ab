#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ffarith/error.hpp"
#include "ffarith/localfield/global.hpp"

namespace ffarith {

/// Syntax tree of the shared expression grammar:
///
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := '-' unary | power
///   power   := primary ('^' '-'? integer)?
///   primary := integer | name | name '(' expr (',' expr)* ')' | '(' expr ')'
///            | '[' '[' expr (',' expr)* ']' (',' '[' ... ']')* ']'
///
/// Names are interpreted by the evaluator (T, g, u, t, x1, ...).
struct Expr {
  enum class Kind { kNumber, kName, kAdd, kSub, kNeg, kMul, kDiv, kPow, kMatrix, kCall };

  Kind kind = Kind::kNumber;
  BigInt number;
  std::string name;
  long long exponent = 0;
  /// Operands; for kMatrix the entries in row-major order, for kCall the arguments.
  std::vector<Expr> args;
  int rows = 0;
  int cols = 0;
  int line = 1;
  int column = 1;

  [[noreturn]] void error(const std::string& message) const { throw ParseError(line, column, message); }
};

/// Parses a complete expression; `line` is reported in diagnostics.
Expr parse_expr(std::string_view text, int line = 1);

/// Folds an expression into a ring R. The environment supplies
///   R number(const BigInt&, const Expr&)
///   R name(const Expr&)
///   R matrix(const Expr&)
///   R call(const Expr&)
///   R divide(const R&, const R&, const Expr&)
///   R power(const R&, long long, const Expr&)
/// and R provides +, - (binary and unary) and *.
template <class R, class Env>
R fold_expr(const Expr& e, Env& env) {
  switch (e.kind) {
    case Expr::Kind::kNumber:
      return env.number(e.number, e);
    case Expr::Kind::kName:
      return env.name(e);
    case Expr::Kind::kMatrix:
      return env.matrix(e);
    case Expr::Kind::kCall:
      return env.call(e);
    case Expr::Kind::kNeg:
      return -fold_expr<R>(e.args[0], env);
    case Expr::Kind::kAdd:
      return fold_expr<R>(e.args[0], env) + fold_expr<R>(e.args[1], env);
    case Expr::Kind::kSub:
      return fold_expr<R>(e.args[0], env) - fold_expr<R>(e.args[1], env);
    case Expr::Kind::kMul:
      return fold_expr<R>(e.args[0], env) * fold_expr<R>(e.args[1], env);
    case Expr::Kind::kDiv:
      return env.divide(fold_expr<R>(e.args[0], env), fold_expr<R>(e.args[1], env), e);
    case Expr::Kind::kPow:
      return env.power(fold_expr<R>(e.args[0], env), e.exponent, e);
  }
  e.error("unknown expression node");
}

/// Element of Q_K from text. Over F_q(T) the names are T, u (= 1/T) and g
/// (the generator of F_q); over Q only integers and operators are allowed.
QkElem parse_qk(std::string_view text, const GlobalField& k, int line = 1);
QkElem eval_qk(const Expr& e, const GlobalField& k);

}  // namespace ffarith
