#pragma once

#include <optional>
#include <string>
#include <variant>

#include "ffarith/localfield/global.hpp"

namespace ffarith {

/// Coefficient of a twisted polynomial: an exact element of F_q(T) or a
/// finite-precision element of a Laurent field over F_q.
///
/// Mixed operations embed the exact operand into the local field: at the
/// other operand's absolute precision for sums, at a precision that loses
/// nothing for products.
class Scalar {
 public:
  Scalar(RationalFn x) : v_(std::move(x)) {}  // NOLINT(google-explicit-constructor)
  Scalar(LocalElem x);                         // NOLINT(google-explicit-constructor)

  static Scalar zero(const GaloisField& fq) { return RationalFn(fq); }
  static Scalar one(const GaloisField& fq) { return RationalFn::constant(fq, 1); }
  static Scalar from_int(const GaloisField& fq, long long n) { return RationalFn::constant(fq, fq.from_int(n)); }
  static Scalar variable(const GaloisField& fq) { return RationalFn::variable(fq); }

  bool is_exact() const noexcept { return std::holds_alternative<RationalFn>(v_); }
  const RationalFn& exact() const { return std::get<RationalFn>(v_); }
  const LocalElem& local() const { return std::get<LocalElem>(v_); }
  /// F_q, the field the coefficients are F_q(T)-rational over.
  const GaloisField& constants() const;
  /// The Laurent field of a local value; nullopt for exact values.
  std::optional<LocalField> local_field() const;

  /// Exact zero, or a local value indistinguishable from zero.
  bool is_zero() const noexcept;
  bool is_exact_zero() const noexcept { return is_exact() && exact().is_zero(); }
  bool is_one() const noexcept;

  Scalar operator-() const;
  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar inverse() const;
  Scalar pow(int n) const;
  /// x^(q^j).
  Scalar frobenius(int j) const;

  /// The value in `field` to absolute precision at most `precision`.
  LocalElem to_local(const LocalField& field, std::int64_t precision) const;
  /// Valuation in `field` (kInfiniteValuation for an exact zero, the precision for an inexact one).
  std::int64_t valuation_in(const LocalField& field) const;

  /// Exact values compare by value, local ones by representation.
  friend bool operator==(const Scalar& a, const Scalar& b);
  std::string render() const;

 private:
  std::variant<RationalFn, LocalElem> v_;
};

/// Pivot preference for elimination: lower is better. Exact values first,
/// then local values by valuation.
std::int64_t pivot_weight(const Scalar& x);
std::int64_t pivot_weight(const LocalElem& x);
inline std::int64_t pivot_weight(const QkElem&) { return 0; }
inline std::int64_t pivot_weight(const RationalFn&) { return 0; }

}  // namespace ffarith
