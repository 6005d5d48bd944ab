#include "ffarith/localfield/expr.hpp"

#include <cctype>

namespace ffarith {

namespace {

class Parser {
 public:
  Parser(std::string_view text, int line) : text_(text), line_(line) {}

  Expr parse() {
    Expr e = expr();
    skip_space();
    if (pos_ < text_.size()) fail_here("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail_here(const std::string& message) const {
    throw ParseError(line_, static_cast<int>(pos_) + 1, message);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (pos_ >= text_.size()) fail_here(std::string("expected '") + c + "' at end of input");
      fail_here(std::string("expected '") + c + "'");
    }
  }

  Expr node(Expr::Kind kind) const {
    Expr e;
    e.kind = kind;
    e.line = line_;
    e.column = static_cast<int>(pos_) + 1;
    return e;
  }

  Expr binary(Expr::Kind kind, Expr lhs, Expr rhs, std::size_t at) const {
    Expr e;
    e.kind = kind;
    e.line = line_;
    e.column = static_cast<int>(at) + 1;
    e.args.push_back(std::move(lhs));
    e.args.push_back(std::move(rhs));
    return e;
  }

  Expr expr() {
    Expr lhs = term();
    for (;;) {
      skip_space();
      const std::size_t at = pos_;
      if (accept('+')) {
        lhs = binary(Expr::Kind::kAdd, std::move(lhs), term(), at);
      } else if (accept('-')) {
        lhs = binary(Expr::Kind::kSub, std::move(lhs), term(), at);
      } else {
        return lhs;
      }
    }
  }

  Expr term() {
    Expr lhs = unary();
    for (;;) {
      skip_space();
      const std::size_t at = pos_;
      if (accept('*')) {
        lhs = binary(Expr::Kind::kMul, std::move(lhs), unary(), at);
      } else if (accept('/')) {
        lhs = binary(Expr::Kind::kDiv, std::move(lhs), unary(), at);
      } else {
        return lhs;
      }
    }
  }

  Expr unary() {
    skip_space();
    if (accept('-')) {
      Expr e = node(Expr::Kind::kNeg);
      e.args.push_back(unary());
      return e;
    }
    return power();
  }

  Expr power() {
    Expr base = primary();
    skip_space();
    if (!accept('^')) return base;
    Expr e = node(Expr::Kind::kPow);
    const bool negative = accept('-');
    skip_space();
    bool parenthesized = false;
    if (accept('(')) {
      parenthesized = true;
      skip_space();
    }
    const BigInt n = integer();
    if (parenthesized) expect(')');
    if (n > 1000000) fail_here("exponent too large");
    e.exponent = static_cast<long long>(n) * (negative ? -1 : 1);
    e.args.push_back(std::move(base));
    return e;
  }

  BigInt integer() {
    skip_space();
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) fail_here("expected an integer");
    BigInt n = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      n = n * 10 + (text_[pos_] - '0');
      ++pos_;
    }
    return n;
  }

  Expr primary() {
    skip_space();
    if (pos_ >= text_.size()) fail_here("unexpected end of input");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Expr e = node(Expr::Kind::kNumber);
      e.number = integer();
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      Expr e = node(Expr::Kind::kName);
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        e.name += text_[pos_++];
      }
      if (accept('(')) {
        e.kind = Expr::Kind::kCall;
        e.args.push_back(expr());
        while (accept(',') || accept(';')) e.args.push_back(expr());
        expect(')');
      }
      return e;
    }
    if (accept('(')) {
      Expr e = expr();
      expect(')');
      return e;
    }
    if (c == '[') return matrix();
    fail_here("unexpected '" + std::string(1, c) + "'");
  }

  Expr matrix() {
    Expr m = node(Expr::Kind::kMatrix);
    expect('[');
    do {
      skip_space();
      if (pos_ >= text_.size() || text_[pos_] != '[') fail_here("expected '[' opening a matrix row");
      expect('[');
      int cols = 0;
      do {
        m.args.push_back(expr());
        ++cols;
      } while (accept(','));
      expect(']');
      if (m.rows == 0) {
        m.cols = cols;
      } else if (cols != m.cols) {
        fail_here("matrix rows have different lengths");
      }
      ++m.rows;
    } while (accept(','));
    expect(']');
    return m;
  }

  std::string_view text_;
  int line_;
  std::size_t pos_ = 0;
};

struct QkEnv {
  const GlobalField& k;

  QkElem number(const BigInt& n, const Expr&) const {
    if (k.is_function_field()) {
      const long long r = static_cast<long long>(n % k.constants().characteristic());
      return QkElem::from_int(k, r);
    }
    return Rational(n);
  }

  QkElem name(const Expr& e) const {
    if (k.is_function_field()) {
      const auto& f = k.constants();
      if (e.name == "T") return RationalFn::variable(f);
      if (e.name == "u") return RationalFn::variable(f).inverse();
      if (e.name == "g") return RationalFn::constant(f, f.generator());
    }
    e.error("unknown name '" + e.name + "'");
  }

  QkElem matrix(const Expr& e) const { e.error("matrix where a scalar is expected"); }
  QkElem call(const Expr& e) const { e.error("unknown function '" + e.name + "'"); }

  QkElem divide(const QkElem& a, const QkElem& b, const Expr& e) const {
    if (b.is_zero()) e.error("division by zero");
    return a / b;
  }

  QkElem power(const QkElem& a, long long n, const Expr& e) const {
    if (n < 0 && a.is_zero()) e.error("zero to a negative power");
    return a.pow(static_cast<int>(n));
  }
};

}  // namespace

Expr parse_expr(std::string_view text, int line) { return Parser(text, line).parse(); }

QkElem eval_qk(const Expr& e, const GlobalField& k) {
  QkEnv env{k};
  return fold_expr<QkElem>(e, env);
}

QkElem parse_qk(std::string_view text, const GlobalField& k, int line) { return eval_qk(parse_expr(text, line), k); }

}  // namespace ffarith
