#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ffarith/linalg/matrix.hpp"
#include "ffarith/localfield/scalar.hpp"

namespace ffarith {

using ScalarMatrix = Matrix<Scalar>;

ScalarMatrix zero_matrix(const GaloisField& fq, int m);
ScalarMatrix identity_matrix(const GaloisField& fq, int m);
/// c * 1_m.
ScalarMatrix scalar_matrix(const GaloisField& fq, int m, const Scalar& c);
/// Entrywise x -> x^(q^j).
ScalarMatrix frobenius(const ScalarMatrix& a, int j);
std::string render(const ScalarMatrix& a);

/// Sum of a_i tau^i with m x m coefficient matrices over F_q(T) or a Laurent
/// field, where tau c = c^q tau. Scalar polynomials are the case m = 1.
class TwistedPoly {
 public:
  /// The zero polynomial.
  TwistedPoly(const GaloisField& fq, int m) : fq_(&fq), m_(m) {}
  TwistedPoly(const GaloisField& fq, int m, std::vector<ScalarMatrix> coeffs);

  static TwistedPoly constant(const ScalarMatrix& a0);
  static TwistedPoly one(const GaloisField& fq, int m);
  /// tau^k.
  static TwistedPoly tau(const GaloisField& fq, int m, int k = 1);
  /// Scalar case: sum c_i tau^i.
  static TwistedPoly from_scalars(const GaloisField& fq, const std::vector<Scalar>& coeffs);

  const GaloisField& constants() const noexcept { return *fq_; }
  int q() const noexcept { return fq_->size(); }
  int dimension() const noexcept { return m_; }
  /// -1 for zero.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  const std::vector<ScalarMatrix>& coeffs() const noexcept { return coeffs_; }
  /// Coefficient of tau^i (zero matrix beyond the degree).
  ScalarMatrix coeff(int i) const;
  /// Scalar coefficient; m must be 1.
  Scalar scalar_coeff(int i) const;

  TwistedPoly operator-() const;
  friend TwistedPoly operator+(const TwistedPoly& a, const TwistedPoly& b);
  friend TwistedPoly operator-(const TwistedPoly& a, const TwistedPoly& b) { return a + (-b); }
  friend TwistedPoly operator*(const TwistedPoly& a, const TwistedPoly& b);
  TwistedPoly pow(int n) const;
  /// Left multiplication by a matrix: A * P.
  TwistedPoly left_scaled(const ScalarMatrix& a) const;

  /// sum a_i x^(q^i) for a point x with m coordinates.
  std::vector<LocalElem> evaluate(std::span<const LocalElem> x) const;
  LocalElem evaluate(const LocalElem& x) const;

  friend bool operator==(const TwistedPoly& a, const TwistedPoly& b);

  /// `a0 + a1*t + a2*t^2`; zero terms are omitted.
  std::string render() const;

 private:
  void trim();
  void check_compatible(const TwistedPoly& o) const;

  const GaloisField* fq_;
  int m_;
  std::vector<ScalarMatrix> coeffs_;
};

/// Parses the twisted-polynomial grammar over F_q(T): `t` is tau, scalars
/// stand for scalar matrices, and `[[a, b], [c, d]]` is a matrix. Products
/// follow the twisted rule, so `t*T` means T^q*t.
TwistedPoly parse_twisted(std::string_view text, const GaloisField& fq, int m, int line = 1);

}  // namespace ffarith
