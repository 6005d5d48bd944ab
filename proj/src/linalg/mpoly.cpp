#include "ffarith/linalg/mpoly.hpp"

#include <algorithm>

namespace ffarith {

namespace {

struct MPolyEnv {
  const std::vector<std::string>& vars;
  const GlobalField& k;

  int nvars() const { return static_cast<int>(vars.size()); }

  MPoly<QkElem> constant(const QkElem& c) const { return MPoly<QkElem>::constant(nvars(), c); }

  MPoly<QkElem> number(const BigInt&, const Expr& e) const { return constant(eval_qk(e, k)); }

  MPoly<QkElem> name(const Expr& e) const {
    auto it = std::find(vars.begin(), vars.end(), e.name);
    if (it != vars.end()) return MPoly<QkElem>::variable(nvars(), static_cast<int>(it - vars.begin()), QkElem::one(k));
    return constant(eval_qk(e, k));
  }

  MPoly<QkElem> matrix(const Expr& e) const { e.error("matrix where a polynomial is expected"); }

  MPoly<QkElem> call(const Expr& e) const {
    if (e.name == "sum" && e.args.size() == 1) return fold_expr<MPoly<QkElem>>(e.args[0], *this);
    e.error("unknown function '" + e.name + "'");
  }

  static const QkElem* as_constant(const MPoly<QkElem>& p) {
    if (p.terms().size() != 1) return nullptr;
    for (int x : p.terms()[0].first) {
      if (x != 0) return nullptr;
    }
    return &p.terms()[0].second;
  }

  MPoly<QkElem> divide(const MPoly<QkElem>& a, const MPoly<QkElem>& b, const Expr& e) const {
    const QkElem* c = as_constant(b);
    if (b.is_zero()) e.error("division by zero");
    if (c == nullptr) e.error("division by a non-constant polynomial");
    return a.scaled(c->inverse());
  }

  MPoly<QkElem> power(const MPoly<QkElem>& a, long long n, const Expr& e) const {
    if (n < 0) {
      const QkElem* c = as_constant(a);
      if (c == nullptr) e.error("negative power of a non-constant polynomial");
      return constant(c->pow(static_cast<int>(n)));
    }
    if (n > 4096) e.error("exponent too large");
    if (n == 0) return constant(QkElem::one(k));
    if (a.is_zero()) return a;
    return a.pow(static_cast<int>(n));
  }
};

}  // namespace

MPoly<QkElem> eval_mpoly(const Expr& e, const std::vector<std::string>& vars, const GlobalField& k) {
  MPolyEnv env{vars, k};
  return fold_expr<MPoly<QkElem>>(e, env);
}

MPoly<QkElem> parse_mpoly(std::string_view text, const std::vector<std::string>& vars, const GlobalField& k, int line) {
  return eval_mpoly(parse_expr(text, line), vars, k);
}

}  // namespace ffarith
