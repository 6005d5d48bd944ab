#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ffarith/linalg/matrix.hpp"
#include "ffarith/linalg/mpoly.hpp"
#include "ffarith/localfield/local_field.hpp"
#include "ffarith/localfield/scalar.hpp"

namespace ffarith {

using LocalMatrix = Matrix<LocalElem>;
using LocalPoint = std::vector<LocalElem>;

/// Digits of slack below the target precision accepted by every residual check.
inline constexpr std::int64_t kResidualMargin = 5;

/// A vector of truncated power series F(z) = (F_1, ..., F_k) in
/// n_params + n_unknowns variables, the parameters first.
///
/// `tail_bound` is a lower bound for the valuation of the discarded tail on
/// the closed unit polydisc (kInfiniteValuation for honest polynomials).
class AnalyticMap {
 public:
  AnalyticMap(LocalField field, int n_params, int n_unknowns, std::vector<MPoly<LocalElem>> components,
              std::int64_t tail_bound = kInfiniteValuation);

  /// Embeds exact polynomials with coefficients correct to `precision`.
  static AnalyticMap from_polynomials(const LocalField& field, const std::vector<MPoly<QkElem>>& components,
                                      int n_params, std::int64_t precision,
                                      std::int64_t tail_bound = kInfiniteValuation);
  /// Parses `;`-separated components over the global field of `field`.
  static AnalyticMap parse(const LocalField& field, std::string_view text, const std::vector<std::string>& params,
                           const std::vector<std::string>& unknowns, std::int64_t precision);

  const LocalField& field() const noexcept { return field_; }
  int n_params() const noexcept { return n_params_; }
  int n_unknowns() const noexcept { return n_unknowns_; }
  int source_dim() const noexcept { return n_params_ + n_unknowns_; }
  int target_dim() const noexcept { return static_cast<int>(components_.size()); }
  std::int64_t tail_bound() const noexcept { return tail_bound_; }
  const std::vector<MPoly<LocalElem>>& components() const noexcept { return components_; }

  /// F(z) to absolute precision min(precision, tail bound).
  LocalPoint evaluate(std::span<const LocalElem> z, std::int64_t precision) const;
  /// k x source_dim matrix of formal partial derivatives at z.
  LocalMatrix jacobian(std::span<const LocalElem> z, std::int64_t precision) const;

 private:
  void check_point(std::span<const LocalElem> z) const;

  LocalField field_;
  int n_params_;
  int n_unknowns_;
  std::vector<MPoly<LocalElem>> components_;
  std::vector<std::vector<MPoly<LocalElem>>> partials_;
  std::int64_t tail_bound_;
};

/// Smallest valuation bound among the coordinates (precision for all-zero).
std::int64_t min_valuation(std::span<const LocalElem> v);

struct NewtonStep {
  LocalPoint point;
  std::int64_t residual_before;
  std::int64_t residual_after;
  std::int64_t det_valuation;
};

/// One step x - J^{-1} F(x) for a square system. Requires
/// v(F(x)) > 2 v(det J); the result satisfies
/// v(F(x')) >= 2 v(F(x)) - 2 v(det J) up to the working precision.
NewtonStep newton_refine(const AnalyticMap& f, std::span<const LocalElem> x, std::int64_t precision);

struct NewtonRun {
  LocalPoint root;
  std::vector<NewtonStep> steps;
};

/// Iterates newton_refine until v(F(x)) >= precision.
NewtonRun newton_solve(const AnalyticMap& f, std::span<const LocalElem> x0, std::int64_t precision, int max_steps = 64);

/// Local solution y = f(x) of F(x, y) = 0 near a zero z0.
class SolutionChart {
 public:
  const AnalyticMap& map() const noexcept { return map_; }
  const LocalPoint& center() const noexcept { return center_; }
  /// Valuation radius: parameters z* with v(z* - center) >= radius are accepted.
  std::int64_t radius() const noexcept { return radius_; }
  /// Columns treated as parameters and as unknowns (a permutation of 0..n+m-1).
  const std::vector<int>& parameter_columns() const noexcept { return param_cols_; }
  const std::vector<int>& unknown_columns() const noexcept { return unknown_cols_; }
  std::int64_t det_valuation() const noexcept { return det_valuation_; }
  std::int64_t target_precision() const noexcept { return target_; }

  /// Unknown coordinates for the given parameter values.
  LocalPoint solve_fiber(std::span<const LocalElem> params) const;
  /// The full point (params and unknowns interleaved back into column order).
  LocalPoint point(std::span<const LocalElem> params) const;

 private:
  friend SolutionChart implicit_solve(const AnalyticMap& f, std::span<const LocalElem> z0, std::int64_t target);

  SolutionChart(AnalyticMap map, LocalPoint center) : map_(std::move(map)), center_(std::move(center)) {}

  AnalyticMap map_;
  LocalPoint center_;
  std::int64_t radius_ = 0;
  std::int64_t det_valuation_ = 0;
  std::int64_t target_ = 0;
  std::vector<int> param_cols_;
  std::vector<int> unknown_cols_;
};

/// Builds a chart around a zero z0 of F, with radius 2 v(det) + 1 for the
/// chosen invertible m x m block (the rightmost block first, then every
/// column subset in lexicographic order).
SolutionChart implicit_solve(const AnalyticMap& f, std::span<const LocalElem> z0, std::int64_t target);

/// Power-series solution y(x) of F(x, y) = 0 with y(x0) = y0, truncated at
/// total degree `degree` in the shifted parameters x - x0. Uses the right
/// block of the Jacobian, which must be invertible.
std::vector<MPoly<LocalElem>> implicit_series(const AnalyticMap& f, std::span<const LocalElem> z0, int degree,
                                              std::int64_t precision);

}  // namespace ffarith
