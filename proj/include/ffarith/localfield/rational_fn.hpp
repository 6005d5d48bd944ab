#pragma once

#include <compare>
#include <string>

#include "ffarith/localfield/fq_poly.hpp"

namespace ffarith {

/// Element of k = F_q(T) in canonical form: monic denominator, coprime parts.
class RationalFn {
 public:
  explicit RationalFn(const GaloisField& field) : num_(field), den_(FqPoly::constant(field, 1)) {}
  explicit RationalFn(FqPoly num);
  RationalFn(FqPoly num, FqPoly den);

  static RationalFn constant(const GaloisField& field, GaloisField::Elem c);
  static RationalFn variable(const GaloisField& field) { return RationalFn(FqPoly::variable(field)); }

  const GaloisField& field() const noexcept { return num_.field(); }
  const FqPoly& num() const noexcept { return num_; }
  const FqPoly& den() const noexcept { return den_; }
  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_polynomial() const noexcept { return den_.degree() == 0; }
  /// deg(den) - deg(num): the valuation at the place 1/T. Undefined for zero.
  int valuation_at_infinity() const;

  RationalFn operator-() const { return RationalFn(-num_, den_); }
  friend RationalFn operator+(const RationalFn& a, const RationalFn& b);
  friend RationalFn operator-(const RationalFn& a, const RationalFn& b) { return a + (-b); }
  friend RationalFn operator*(const RationalFn& a, const RationalFn& b);
  friend RationalFn operator/(const RationalFn& a, const RationalFn& b) { return a * b.inverse(); }
  RationalFn& operator+=(const RationalFn& o) { return *this = *this + o; }
  RationalFn& operator-=(const RationalFn& o) { return *this = *this - o; }
  RationalFn& operator*=(const RationalFn& o) { return *this = *this * o; }
  RationalFn inverse() const;
  RationalFn pow(int n) const;
  /// x^(q^j); exact because the coefficients lie in F_q.
  RationalFn frobenius(int j) const;

  friend bool operator==(const RationalFn& a, const RationalFn& b) noexcept {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  /// Lexicographic on (den, num).
  friend std::strong_ordering operator<=>(const RationalFn& a, const RationalFn& b) noexcept;

  std::string render() const;

 private:
  void normalize();

  FqPoly num_;
  FqPoly den_;
};

}  // namespace ffarith
