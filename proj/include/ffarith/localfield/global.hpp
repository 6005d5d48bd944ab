#pragma once

#include <compare>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ffarith/localfield/local_field.hpp"
#include "ffarith/localfield/rational_fn.hpp"

namespace ffarith {

/// The global field Q_K: F_q(T) in characteristic p, Q in characteristic 0.
class GlobalField {
 public:
  static GlobalField function_field(int q);
  static GlobalField rationals();
  /// The global field whose completion is `local` (F_q(T) for F_{q^f}((u)), Q for Q_p).
  static GlobalField of(const LocalField& local);

  bool is_function_field() const noexcept { return fq_ != nullptr; }
  const GaloisField& constants() const;
  int q() const;

  friend bool operator==(const GlobalField& a, const GlobalField& b) noexcept { return a.fq_ == b.fq_; }

 private:
  const GaloisField* fq_ = nullptr;
};

/// Element of Q_K. Arithmetic across the two flavors raises FlavorMismatch.
class QkElem {
 public:
  QkElem(RationalFn x) : v_(std::move(x)) {}  // NOLINT(google-explicit-constructor)
  QkElem(Rational x) : v_(std::move(x)) {}    // NOLINT(google-explicit-constructor)

  static QkElem zero(const GlobalField& k);
  static QkElem one(const GlobalField& k);
  static QkElem from_int(const GlobalField& k, long long n);

  bool is_function_field() const noexcept { return std::holds_alternative<RationalFn>(v_); }
  const RationalFn& fn() const { return std::get<RationalFn>(v_); }
  const Rational& rat() const { return std::get<Rational>(v_); }
  GlobalField field() const;

  bool is_zero() const;
  QkElem operator-() const;
  friend QkElem operator+(const QkElem& a, const QkElem& b);
  friend QkElem operator-(const QkElem& a, const QkElem& b);
  friend QkElem operator*(const QkElem& a, const QkElem& b);
  friend QkElem operator/(const QkElem& a, const QkElem& b);
  QkElem& operator+=(const QkElem& o) { return *this = *this + o; }
  QkElem& operator-=(const QkElem& o) { return *this = *this - o; }
  QkElem& operator*=(const QkElem& o) { return *this = *this * o; }
  QkElem inverse() const;
  QkElem pow(int n) const;

  friend bool operator==(const QkElem& a, const QkElem& b);
  /// Canonical order: (denominator, numerator).
  friend std::strong_ordering operator<=>(const QkElem& a, const QkElem& b);

  /// max(size(num), size(den)): q^deg in characteristic p, |.| in characteristic 0.
  BigInt size() const;
  std::string render() const;

 private:
  std::variant<RationalFn, Rational> v_;
};

/// Height of a point of Q_K^n: the largest numerator/denominator size, 1 at least.
struct Height {
  BigInt value;
  friend auto operator<=>(const Height&, const Height&) = default;
};

Height height(std::span<const QkElem> z);
Height height(const QkElem& z);

/// Image of x in the local field, correct to absolute precision `precision`.
LocalElem embed(const RationalFn& x, const LocalField& field, std::int64_t precision);
LocalElem embed(const Rational& x, const LocalField& field, std::int64_t precision);
LocalElem embed(const QkElem& x, const LocalField& field, std::int64_t precision);
/// Image of x with `digits` significant digits (relative precision).
LocalElem embed_significant(const QkElem& x, const LocalField& field, std::int64_t digits);
/// Image of a Laurent element under F_q^f((u^(1/e))) -> F_q^f'((u^(1/e'))) for e | e', f | f'.
LocalElem lift_to_extension(const LocalElem& x, const LocalField& ext);
/// Valuation of x in `field` without embedding; kInfiniteValuation for x = 0.
std::int64_t exact_valuation(const QkElem& x, const LocalField& field);
std::int64_t exact_valuation(const RationalFn& x, const LocalField& field);

/// Valuation of a nonzero integer at p.
std::int64_t padic_valuation(BigInt n, int p);

std::string render(const Rational& x);

}  // namespace ffarith
