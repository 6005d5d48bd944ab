#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ffarith/expmap/expmap.hpp"
#include "ffarith/hensel/hensel.hpp"

namespace ffarith {

using RationalPoint = std::vector<QkElem>;

/// Cap on the number of cells visited by one membership search.
inline constexpr long kDefaultCellBudget = 2'000'000;
/// Cap on the number of candidate values or points produced by enumeration.
inline constexpr std::size_t kDefaultPointBudget = 4'000'000;

/// A subset W of K^m: the image of the closed unit polydisc under a map
/// (h parameters, m components) or the zero locus of a map in m variables.
class AnalyticSetSpec {
 public:
  enum class Form { kImage, kZeroLocus };

  static AnalyticSetSpec image(AnalyticMap phi);
  static AnalyticSetSpec zero_locus(AnalyticMap f);
  /// {(z, e(z)) : z in B_1^m} for a truncated exponential, with coefficients
  /// correct to `precision`. The tail bound is the valuation of the first
  /// omitted coefficient.
  static AnalyticSetSpec exp_graph(const ExpSeries& e, const LocalField& field, std::int64_t precision);

  Form form() const noexcept { return form_; }
  const AnalyticMap& map() const noexcept { return map_; }
  const LocalField& field() const noexcept { return map_.field(); }
  GlobalField flavor() const { return GlobalField::of(map_.field()); }
  int ambient_dim() const noexcept { return form_ == Form::kImage ? map_.target_dim() : map_.source_dim(); }
  /// Per coordinate: whether W is known to stay inside the closed unit disc there.
  std::vector<bool> bounded_coordinates() const;

 private:
  AnalyticSetSpec(Form form, AnalyticMap map) : form_(form), map_(std::move(map)) {}

  Form form_;
  AnalyticMap map_;
};

/// Declared algebraic part: each component is a system of equations in the
/// ambient coordinates. Never computed, only supplied.
struct AlgebraicPartSpec {
  std::vector<std::vector<MPoly<QkElem>>> components;

  /// Whether z lies on some component (exact evaluation).
  bool contains(std::span<const QkElem> z) const;
};

/// Enumeration order: height first, then coordinate-wise canonical order.
bool enumeration_less(const RationalPoint& a, const RationalPoint& b);

/// Elements of Q_K of size at most t in enumeration order.
std::vector<QkElem> rationals_up_to_height(const GlobalField& k, const BigInt& t,
                                           std::size_t budget = kDefaultPointBudget);
/// Points of Q_K^n of height at most t in enumeration order. Throws
/// BudgetExceeded past `budget` points.
std::vector<RationalPoint> enumerate_rationals(const GlobalField& k, int n, const BigInt& t,
                                               std::size_t budget = kDefaultPointBudget);

/// Whether some point of W agrees with z to absolute precision `precision`.
/// The image form searches the parameter polydisc cell by cell; throws
/// BudgetExceeded after `cell_budget` cells.
bool membership(const AnalyticSetSpec& w, std::span<const LocalElem> z, std::int64_t precision,
                long cell_budget = kDefaultCellBudget);

/// One piece of the valuation dichotomy: coordinates flagged here have
/// |z_i| > 1 and are replaced by 1/z_i, which lies in the open unit disc.
struct UnitPiece {
  std::vector<bool> inverted;

  bool contains(std::span<const QkElem> z, const LocalField& field) const;
  std::string tag() const;
};

/// The pieces covering W: every sign pattern of the coordinates that W is not
/// known to keep bounded.
std::vector<UnitPiece> split_by_unit_polydisc(const AnalyticSetSpec& w);

/// Rational points of W of height at most t inside one piece, in enumeration order.
std::vector<RationalPoint> rational_points_in_piece(const AnalyticSetSpec& w, const UnitPiece& piece, const BigInt& t,
                                                    std::int64_t precision);
/// S(Q_K, t): rational points of W of height at most t, in enumeration order.
std::vector<RationalPoint> rational_points(const AnalyticSetSpec& w, const BigInt& t, std::int64_t precision);
/// Rational points of W off the declared algebraic part.
std::vector<RationalPoint> transcendent_points(const AnalyticSetSpec& w, const AlgebraicPartSpec& alg, const BigInt& t,
                                               std::int64_t precision);
std::size_t count_transcendent(const AnalyticSetSpec& w, const AlgebraicPartSpec& alg, const BigInt& t,
                               std::int64_t precision);

/// Exponent vectors of total degree at most delta in d variables, graded
/// lexicographic (degree ascending, then x1 before x2).
std::vector<Exponents> monomials(int d, int delta);

/// A hypersurface of degree at most delta: coefficients over monomials(d, delta),
/// scaled so that the first nonzero one is 1.
struct Hypersurface {
  int dimension = 0;
  int degree = 0;
  std::vector<QkElem> coeffs;

  QkElem evaluate(std::span<const QkElem> z) const;
  bool contains(std::span<const QkElem> z) const { return evaluate(z).is_zero(); }
  MPoly<QkElem> polynomial() const;
  std::string render(const std::vector<std::string>& names) const;
};

/// Greedy cover: batches of at most C(d + delta, d) - 1 uncovered points in
/// the given order, each batch cut out by a kernel vector of its monomial
/// evaluation matrix.
std::vector<Hypersurface> cover_points(const std::vector<RationalPoint>& points, int d, int delta);
/// Cover of S(Q_K, t) for a set in image form.
std::vector<Hypersurface> cover_by_hypersurfaces(const AnalyticSetSpec& w, const BigInt& t, int delta,
                                                 std::int64_t precision);

struct CountRow {
  BigInt t;
  std::size_t count = 0;
  std::size_t cover_size = 0;
  std::int64_t precision = 0;
  long long elapsed_ms = 0;

  friend bool operator==(const CountRow&, const CountRow&) = default;
};

struct CountReport {
  std::vector<CountRow> rows;
};

/// One row per t: transcendent count and the size of a degree-delta cover of
/// those points. Elapsed times are recorded only when `timing` is set.
CountReport count_report(const AnalyticSetSpec& w, const AlgebraicPartSpec& alg, const std::vector<BigInt>& t_grid,
                         std::int64_t precision, int delta, bool timing = false);

/// CSV with header `t,count,cover_size,precision,elapsed_ms`.
std::string render_csv(const CountReport& report);
CountReport parse_csv(std::string_view text);

struct SlopeFit {
  double slope = 0;
  double intercept = 0;
  /// Sum of squared residuals.
  double residual = 0;
};

/// Least-squares slope of log n against log t over the pairs with n >= 1.
/// Throws InsufficientData with fewer than three such pairs or a single t.
SlopeFit slope_estimate(const std::vector<double>& t, const std::vector<double>& n);
/// Slope of the count column.
SlopeFit slope_estimate(const CountReport& report);

/// A parsed set file. Keys: flavor (fq or qp), q, p, form (image,
/// zero_locus or exp_graph), params, vars, map, equations, m, phi_T,
/// truncation, and any number of `algebraic` lines.
struct SetDescription {
  std::optional<LocalField> field;
  std::string form;
  std::vector<std::string> params;
  std::vector<std::string> vars;
  std::string map;
  std::string equations;
  std::string phi_t;
  int m = 1;
  int truncation = 6;
  std::vector<std::string> algebraic;
  /// Line and column where each text value starts, for diagnostics.
  struct Position {
    int line = 1;
    int column = 1;
  };
  Position map_at;
  Position equations_at;
  Position phi_t_at;
  std::vector<Position> algebraic_at;
};

SetDescription parse_set_spec(std::string_view text);
/// The set with coefficients correct to `precision` over `field`, which must
/// agree with the file's own flavor when it declares one.
AnalyticSetSpec build_set(const SetDescription& d, const std::optional<LocalField>& field, std::int64_t precision);
AlgebraicPartSpec build_algebraic_part(const SetDescription& d, const AnalyticSetSpec& w);
/// Ambient coordinate names: `vars` or x1..xm.
std::vector<std::string> ambient_names(const SetDescription& d, int m);

}  // namespace ffarith
