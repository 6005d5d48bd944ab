#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ffarith/hensel/hensel.hpp"
#include "ffarith/linalg/mpoly.hpp"
#include "ffarith/twisted/twisted_poly.hpp"

namespace ffarith {

/// A T-module of dimension m over F_q: the image phi_T of T, a matrix twisted
/// polynomial whose constant term is T*1_m + N with N nilpotent.
class TModule {
 public:
  /// Validates the constant term; throws NotNilpotent or BadConstantTerm.
  static TModule create(TwistedPoly phi_t, std::string label = "");
  /// T + t.
  static TModule carlitz(int q);
  /// [[T, 1], [0, T]] + t.
  static TModule nilpotent_example(int q);
  /// Block-diagonal sum.
  static TModule product(const TModule& a, const TModule& b);
  static TModule power(const TModule& a, int k);

  int dimension() const noexcept { return phi_t_.dimension(); }
  int q() const noexcept { return phi_t_.q(); }
  const GaloisField& constants() const noexcept { return phi_t_.constants(); }
  const TwistedPoly& phi_t() const noexcept { return phi_t_; }
  const std::string& label() const noexcept { return label_; }
  /// a0 - T*1_m.
  const ScalarMatrix& nilpotent_part() const noexcept { return nilpotent_; }
  /// Whether the top coefficient of phi_T is invertible (recorded, never enforced).
  bool leading_invertible() const noexcept { return leading_invertible_; }

  /// phi(a) by Horner's rule in phi_T.
  TwistedPoly phi(const FqPoly& a) const;
  /// Constant coefficient of phi(a), computed as a(a0).
  ScalarMatrix dphi(const FqPoly& a) const;

 private:
  TModule(TwistedPoly phi_t, std::string label, ScalarMatrix nilpotent, bool leading_invertible)
      : phi_t_(std::move(phi_t)), label_(std::move(label)), nilpotent_(std::move(nilpotent)),
        leading_invertible_(leading_invertible) {}

  TwistedPoly phi_t_;
  std::string label_;
  ScalarMatrix nilpotent_;
  bool leading_invertible_;
};

/// The m = 2 module with c^2 - T c + 1 = 0, v(c) > 0, coefficients known to
/// `precision` digits of F_q((1/T)). Throws NoSuchRoot if c cannot be lifted.
TModule anderson_coleman_example(int q, std::int64_t precision);

/// The root c used above.
LocalElem anderson_coleman_parameter(int q, std::int64_t precision);

/// Parses a polynomial in T over F_q.
FqPoly parse_fq_poly(std::string_view text, const GaloisField& fq, int line = 1);

/// Reads `m`, `q`, `phi_T` and `label` from a key=value document (`#` comments).
TModule parse_tmodule(std::string_view text);
std::string render_tmodule(const TModule& m);

/// Smallest j in {1, p, p^2, ...} with dphi(T^j) = T^j * 1_m.
int j_invariant(const TModule& m);

/// Whether dphi(T) maps span(basis) into itself. Throws DependentBasis.
bool lie_invariant(const TModule& m, const std::vector<std::vector<Scalar>>& basis);

/// Left-unimodular upper-triangular form of phi(a) as an m x m array of scalar
/// twisted polynomials; the kernels of phi(a) and of the result coincide.
std::vector<std::vector<TwistedPoly>> triangular_form(const TwistedPoly& p);

/// Sum of the tau-degrees on the diagonal of triangular_form(phi(a)):
/// log_q of the number of a-torsion points. Throws Inseparable.
int torsion_degree(const TModule& m, const FqPoly& a);
BigInt torsion_count(const TModule& m, const FqPoly& a);

struct ExtensionBudget {
  int e_max = 2;
  int f_max = 2;
};

struct TorsionResult {
  LocalField field;
  /// Sorted by canonical order of the coordinates.
  std::vector<LocalPoint> points;
  BigInt expected;
  /// True when every torsion point was found in `field`.
  bool complete = false;
};

/// The a-torsion points found in the first tame extension (e, f) within the
/// budget (e ascending, then f) that holds all of them, or the best partial
/// set. Points satisfy v(phi(a)(x)) >= precision - kResidualMargin.
TorsionResult torsion_points(const TModule& m, const FqPoly& a, std::int64_t precision, ExtensionBudget budget);

struct SubvarietyCount {
  std::size_t count = 0;
  bool complete = false;
  LocalField field;
};

/// Number of a-torsion points on which every polynomial of X vanishes to
/// precision - kResidualMargin.
SubvarietyCount torsion_in_subvariety(const TModule& m, const std::vector<MPoly<QkElem>>& x, const FqPoly& a,
                                      std::int64_t precision, ExtensionBudget budget);

/// All x with sum c_i x^(q^i) = b in the field of b, for c_0 != 0, to
/// absolute precision `precision`. Throws ExtensionBudgetExceeded when the
/// digit search exceeds `node_budget` nodes.
std::vector<LocalElem> solve_additive(const std::vector<Scalar>& coeffs, const LocalElem& b, std::int64_t precision,
                                      long node_budget = 1'000'000);

}  // namespace ffarith
