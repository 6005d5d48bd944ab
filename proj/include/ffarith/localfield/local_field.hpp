#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ffarith/localfield/galois_field.hpp"

namespace ffarith {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Sentinel for "no finite valuation" (an exactly known zero).
inline constexpr std::int64_t kInfiniteValuation = std::numeric_limits<std::int64_t>::max();

/// Descriptor of a non-Archimedean local field.
///
/// laurent(q, e, f): F_{q^f}((u)) with u^e = 1/T, so T has valuation -e.
/// padic(p): Q_p with uniformizer p.
class LocalField {
 public:
  enum class Kind : std::uint8_t { kLaurent, kPadic };

  static constexpr int kMaxQ = 16;
  static constexpr int kMaxP = 13;

  static LocalField laurent(int q, int e = 1, int f = 1);
  static LocalField padic(int p);

  Kind kind() const noexcept { return kind_; }
  bool is_laurent() const noexcept { return kind_ == Kind::kLaurent; }
  int characteristic() const noexcept { return p_; }
  /// Size of the constant field F_q (p for Q_p).
  int q() const noexcept { return q_; }
  int ramification() const noexcept { return e_; }
  int residue_degree() const noexcept { return f_; }
  const GaloisField& residue() const noexcept { return *residue_; }
  /// F_q; for Q_p this is F_p.
  const GaloisField& base() const noexcept { return *base_; }

  friend bool operator==(const LocalField& a, const LocalField& b) noexcept {
    return a.kind_ == b.kind_ && a.p_ == b.p_ && a.q_ == b.q_ && a.e_ == b.e_ && a.f_ == b.f_;
  }

  std::string describe() const;

 private:
  LocalField() = default;

  Kind kind_ = Kind::kLaurent;
  int p_ = 2;
  int q_ = 2;
  int e_ = 1;
  int f_ = 1;
  const GaloisField* residue_ = nullptr;
  const GaloisField* base_ = nullptr;
};

/// |x| = base^exponent, kept exact.
struct AbsoluteValue {
  int base;
  Rational exponent;
};

/// Element of a local field known modulo u^precision.
///
/// Digits are residue-field elements (p-adic digits 0..p-1 for Q_p) for the
/// exponents first_exponent() .. precision()-1. The first digit is nonzero
/// unless the element is indistinguishable from zero, in which case the digit
/// list is empty and first_exponent() == precision(). Values are immutable.
class LocalElem {
 public:
  using Digit = GaloisField::Elem;

  static LocalElem zero(const LocalField& field, std::int64_t precision);
  static LocalElem one(const LocalField& field, std::int64_t precision) { return from_int(field, 1, precision); }
  static LocalElem from_int(const LocalField& field, long long n, std::int64_t precision);
  static LocalElem from_bigint(const LocalField& field, const BigInt& n, std::int64_t precision);
  /// u^k (p^k for Q_p).
  static LocalElem uniformizer_power(const LocalField& field, std::int64_t k, std::int64_t precision);
  /// digits[i] is the coefficient of u^(first + i).
  static LocalElem from_digits(const LocalField& field, std::int64_t first, std::vector<Digit> digits,
                               std::int64_t precision);
  /// The residue digit d placed at u^0.
  static LocalElem from_residue(const LocalField& field, Digit d, std::int64_t precision);

  const LocalField& field() const noexcept { return field_; }
  std::int64_t precision() const noexcept { return prec_; }
  bool is_zero() const noexcept { return digits_.empty(); }
  /// Valuation in uniformizer units; throws InexactZero when is_zero().
  std::int64_t valuation() const;
  /// valuation() for nonzero elements, precision() for zero: a guaranteed lower bound.
  std::int64_t valuation_bound() const noexcept { return first_; }
  std::int64_t relative_precision() const noexcept { return prec_ - first_; }
  std::int64_t first_exponent() const noexcept { return first_; }
  const std::vector<Digit>& digits() const noexcept { return digits_; }
  /// Coefficient of u^exponent; exponent must be below precision().
  Digit digit(std::int64_t exponent) const;
  AbsoluteValue absolute_value() const;

  /// Lowers the absolute precision (never raises it).
  LocalElem with_precision(std::int64_t precision) const;
  /// Raises the precision by appending zero digits: treats the known digits as exact.
  LocalElem padded_to(std::int64_t precision) const;
  /// x^(q^j) for the Laurent flavor; FlavorMismatch for Q_p.
  LocalElem frobenius(int j) const;
  LocalElem inverse() const;
  LocalElem scaled(long long n) const;
  /// Multiplication by u^k: exact shift.
  LocalElem shifted(std::int64_t k) const;

  LocalElem operator-() const;
  friend LocalElem operator+(const LocalElem& a, const LocalElem& b);
  friend LocalElem operator-(const LocalElem& a, const LocalElem& b);
  friend LocalElem operator*(const LocalElem& a, const LocalElem& b);
  friend LocalElem operator/(const LocalElem& a, const LocalElem& b) { return a * b.inverse(); }
  LocalElem& operator+=(const LocalElem& o) { return *this = *this + o; }
  LocalElem& operator-=(const LocalElem& o) { return *this = *this - o; }
  LocalElem& operator*=(const LocalElem& o) { return *this = *this * o; }

  /// Equal digits up to the smaller of the two precisions.
  bool agrees_with(const LocalElem& o) const { return (*this - o).is_zero(); }
  /// Identical representation, precision included.
  friend bool operator==(const LocalElem& a, const LocalElem& b) noexcept {
    return a.field_ == b.field_ && a.prec_ == b.prec_ && a.first_ == b.first_ && a.digits_ == b.digits_;
  }
  /// Canonical order: valuation, then digits, then precision.
  friend bool canonical_less(const LocalElem& a, const LocalElem& b) noexcept;

  /// Laurent: `u^v*(d0 + d1*u + ...) + O(u^P)`. Q_p: `p^v*[d0, d1, ...] + O(p^P)`.
  std::string render() const;

  /// Unit part as an integer in [0, p^relative_precision); p-adic flavor only.
  BigInt unit_integer() const;

 private:
  LocalElem(const LocalField& field, std::int64_t first, std::int64_t prec, std::vector<Digit> digits);
  void normalize();
  static LocalElem padic_from_unit(const LocalField& field, std::int64_t val, std::int64_t prec, BigInt unit);

  LocalField field_;
  std::int64_t first_;
  std::int64_t prec_;
  std::vector<Digit> digits_;
};

BigInt ipow(long long base, std::int64_t exp);
/// Inverse of a modulo m (a coprime to m).
BigInt mod_inverse(const BigInt& a, const BigInt& m);

}  // namespace ffarith
