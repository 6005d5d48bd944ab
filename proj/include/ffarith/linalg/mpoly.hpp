#pragma once

#include <algorithm>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ffarith/error.hpp"
#include "ffarith/localfield/expr.hpp"
#include "ffarith/localfield/global.hpp"

namespace ffarith {

using Exponents = std::vector<int>;

inline LocalElem coefficient_to_local(const QkElem& c, const LocalField& field, std::int64_t precision) {
  return embed(c, field, precision);
}
inline LocalElem coefficient_to_local(const LocalElem& c, const LocalField&, std::int64_t precision) {
  return c.with_precision(precision);
}
inline QkElem scale_by_int(const QkElem& c, long long k) { return c * QkElem::from_int(c.field(), k); }
inline LocalElem scale_by_int(const LocalElem& c, long long k) { return c.scaled(k); }

/// Sparse polynomial in `nvars` variables with coefficients in C. Terms are
/// kept sorted by exponent vector with no zero coefficients.
template <class C>
class MPoly {
 public:
  using Term = std::pair<Exponents, C>;

  explicit MPoly(int nvars) : nvars_(nvars) {}

  static MPoly constant(int nvars, const C& c) {
    MPoly p(nvars);
    p.add_term(Exponents(static_cast<std::size_t>(nvars), 0), c);
    return p;
  }
  /// c * x_i.
  static MPoly variable(int nvars, int i, const C& one) {
    MPoly p(nvars);
    Exponents e(static_cast<std::size_t>(nvars), 0);
    e[static_cast<std::size_t>(i)] = 1;
    p.add_term(std::move(e), one);
    return p;
  }

  int nvars() const noexcept { return nvars_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  int total_degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, degree_of(e));
    return d;
  }

  static int degree_of(const Exponents& e) {
    int s = 0;
    for (int x : e) s += x;
    return s;
  }

  void add_term(Exponents e, const C& c) {
    if (static_cast<int>(e.size()) != nvars_) fail(ErrorKind::kDimensionMismatch, "exponent vector of wrong length");
    auto it = std::lower_bound(terms_.begin(), terms_.end(), e, [](const Term& t, const Exponents& x) { return t.first < x; });
    if (it != terms_.end() && it->first == e) {
      it->second = it->second + c;
      if (it->second.is_zero()) terms_.erase(it);
      return;
    }
    if (c.is_zero()) return;
    terms_.insert(it, Term(std::move(e), c));
  }

  MPoly operator-() const {
    MPoly r(nvars_);
    for (const auto& [e, c] : terms_) r.terms_.emplace_back(e, -c);
    return r;
  }

  friend MPoly operator+(const MPoly& a, const MPoly& b) {
    a.check_vars(b);
    MPoly r = a;
    for (const auto& [e, c] : b.terms_) r.add_term(e, c);
    return r;
  }
  friend MPoly operator-(const MPoly& a, const MPoly& b) { return a + (-b); }

  friend MPoly operator*(const MPoly& a, const MPoly& b) {
    a.check_vars(b);
    std::map<Exponents, C> acc;
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        Exponents e = ea;
        for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
        auto prod = ca * cb;
        auto it = acc.find(e);
        if (it == acc.end()) {
          acc.emplace(std::move(e), std::move(prod));
        } else {
          it->second = it->second + prod;
        }
      }
    }
    MPoly r(a.nvars_);
    for (auto& [e, c] : acc) {
      if (!c.is_zero()) r.terms_.emplace_back(e, std::move(c));
    }
    return r;
  }

  MPoly pow(int n) const {
    if (n < 0) fail(ErrorKind::kInvalidArgument, "negative power of a polynomial");
    if (n == 0) {
      if (terms_.empty()) fail(ErrorKind::kInvalidArgument, "0^0");
      MPoly one(nvars_);
      one.terms_.emplace_back(Exponents(static_cast<std::size_t>(nvars_), 0), one_like());
      return one;
    }
    MPoly r = *this;
    for (int i = 1; i < n; ++i) r = r * *this;
    return r;
  }

  MPoly scaled(const C& c) const {
    MPoly r(nvars_);
    for (const auto& [e, x] : terms_) r.add_term(e, c * x);
    return r;
  }

  /// Formal partial derivative: k x^(k-1), with k reduced in the coefficient ring.
  MPoly derivative(int var) const {
    MPoly r(nvars_);
    for (const auto& [e, c] : terms_) {
      const int k = e[static_cast<std::size_t>(var)];
      if (k == 0) continue;
      Exponents d = e;
      d[static_cast<std::size_t>(var)] -= 1;
      r.add_term(std::move(d), scale_by_int(c, k));
    }
    return r;
  }

  template <class F>
  auto map_coefficients(F&& f) const -> MPoly<decltype(f(std::declval<const C&>()))> {
    MPoly<decltype(f(std::declval<const C&>()))> r(nvars_);
    for (const auto& [e, c] : terms_) r.add_term(e, f(c));
    return r;
  }

  /// Exact evaluation for an exact coefficient ring.
  C evaluate_exact(std::span<const C> x, const C& zero) const {
    C acc = zero;
    for (const auto& [e, c] : terms_) {
      C t = c;
      for (std::size_t i = 0; i < e.size(); ++i) {
        for (int k = 0; k < e[i]; ++k) t = t * x[i];
      }
      acc = acc + t;
    }
    return acc;
  }

  /// Value at a local point. Exact coefficients are embedded so that every
  /// term is correct to absolute precision `precision` (or to whatever
  /// the point's own precision allows).
  LocalElem evaluate(std::span<const LocalElem> x, const LocalField& field, std::int64_t precision) const {
    if (static_cast<int>(x.size()) != nvars_) fail(ErrorKind::kDimensionMismatch, "point has wrong dimension");
    LocalElem acc = LocalElem::zero(field, precision);
    std::vector<std::map<int, LocalElem>> powers(x.size());
    for (const auto& [e, c] : terms_) {
      std::int64_t mono_val = 0;
      bool zero_mono = false;
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (x[i].is_zero()) zero_mono = true;
        mono_val += static_cast<std::int64_t>(e[i]) * x[i].valuation_bound();
      }
      if (zero_mono && mono_val >= precision) continue;
      LocalElem t = coefficient_to_local(c, field, precision - std::min<std::int64_t>(mono_val, 0));
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] > 0) t = t * power_of(powers[i], x[i], e[i]);
      }
      acc = acc + t;
    }
    return acc;
  }

  friend bool operator==(const MPoly& a, const MPoly& b) { return a.nvars_ == b.nvars_ && a.terms_ == b.terms_; }

  /// `c*x1^2*x2 + ...` using the given variable names, highest exponents first.
  std::string render(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      if (!out.empty()) out += " + ";
      std::string mono;
      for (std::size_t i = 0; i < it->first.size(); ++i) {
        const int k = it->first[i];
        if (k == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += names[i];
        if (k > 1) mono += "^" + std::to_string(k);
      }
      std::string c = render_coefficient(it->second);
      if (mono.empty()) {
        out += c;
      } else if (c == "1") {
        out += mono;
      } else {
        if (c.find(' ') != std::string::npos && c.front() != '(') c = "(" + c + ")";
        out += c + "*" + mono;
      }
    }
    return out;
  }

 private:
  // x^k by repeated squaring, memoized in `memo`.
  static const LocalElem& power_of(std::map<int, LocalElem>& memo, const LocalElem& x, int k) {
    if (auto it = memo.find(k); it != memo.end()) return it->second;
    LocalElem r = x;
    if (k > 1) {
      const LocalElem& half = power_of(memo, x, k / 2);
      r = half * half;
      if (k % 2 == 1) r = r * x;
    }
    return memo.emplace(k, std::move(r)).first->second;
  }

  static std::string render_coefficient(const C& c) { return c.render(); }

  C one_like() const {
    const C& c = terms_.front().second;
    return c * c.inverse();
  }

  void check_vars(const MPoly& b) const {
    if (nvars_ != b.nvars_) fail(ErrorKind::kDimensionMismatch, "polynomials in different numbers of variables");
  }

  int nvars_;
  std::vector<Term> terms_;
};

/// Parses a polynomial in the named variables with Q_K coefficients. A
/// `sum( ... )` wrapper is accepted and ignored.
MPoly<QkElem> parse_mpoly(std::string_view text, const std::vector<std::string>& vars, const GlobalField& k, int line = 1);
MPoly<QkElem> eval_mpoly(const Expr& e, const std::vector<std::string>& vars, const GlobalField& k);

}  // namespace ffarith
