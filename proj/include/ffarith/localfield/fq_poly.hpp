#pragma once

#include <compare>
#include <string>
#include <utility>
#include <vector>

#include "ffarith/localfield/galois_field.hpp"

namespace ffarith {

/// Element of A = F_q[T]. Coefficients are stored low degree first with no
/// trailing zeros, so the zero polynomial has an empty coefficient list.
class FqPoly {
 public:
  using Elem = GaloisField::Elem;

  explicit FqPoly(const GaloisField& field) : field_(&field) {}
  FqPoly(const GaloisField& field, std::vector<Elem> coeffs);

  static FqPoly constant(const GaloisField& field, Elem c);
  static FqPoly monomial(const GaloisField& field, Elem c, int degree);
  /// T.
  static FqPoly variable(const GaloisField& field) { return monomial(field, 1, 1); }

  const GaloisField& field() const noexcept { return *field_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  Elem coeff(int i) const noexcept;
  Elem leading() const noexcept { return coeffs_.empty() ? Elem{0} : coeffs_.back(); }
  const std::vector<Elem>& coeffs() const noexcept { return coeffs_; }
  bool is_monic() const noexcept { return !coeffs_.empty() && coeffs_.back() == 1; }
  bool is_constant() const noexcept { return coeffs_.size() <= 1; }

  FqPoly operator-() const;
  FqPoly& operator+=(const FqPoly& o);
  FqPoly& operator-=(const FqPoly& o);
  friend FqPoly operator+(FqPoly a, const FqPoly& b) { return a += b; }
  friend FqPoly operator-(FqPoly a, const FqPoly& b) { return a -= b; }
  friend FqPoly operator*(const FqPoly& a, const FqPoly& b);
  FqPoly scaled(Elem c) const;

  /// Euclidean division: *this = quotient * d + remainder.
  std::pair<FqPoly, FqPoly> divmod(const FqPoly& d) const;
  FqPoly monic() const;
  FqPoly pow(unsigned n) const;
  /// a(T^j).
  FqPoly compose_power(int j) const;
  Elem evaluate(Elem x) const;

  friend bool operator==(const FqPoly& a, const FqPoly& b) noexcept {
    return a.field_ == b.field_ && a.coeffs_ == b.coeffs_;
  }
  /// Total order: degree first, then coefficients from the top down.
  friend std::strong_ordering operator<=>(const FqPoly& a, const FqPoly& b) noexcept;

  /// `T^2 + T + 1`; coefficients of non-prime fields render through `g`.
  std::string render() const;

 private:
  void trim();

  const GaloisField* field_;
  std::vector<Elem> coeffs_;
};

FqPoly gcd(FqPoly a, FqPoly b);
/// Monic divisors of a nonzero polynomial, in ascending order.
std::vector<FqPoly> monic_divisors(const FqPoly& a);
/// All polynomials of degree < n (including zero), in ascending order.
std::vector<FqPoly> all_polys_below_degree(const GaloisField& field, int n);
/// All monic polynomials of degree exactly n, ascending.
std::vector<FqPoly> monic_polys_of_degree(const GaloisField& field, int n);

}  // namespace ffarith
