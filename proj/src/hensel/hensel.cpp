#include "ffarith/hensel/hensel.hpp"

#include <algorithm>

#include "ffarith/error.hpp"

namespace ffarith {

namespace {

std::string str(std::int64_t v) { return v == kInfiniteValuation ? "inf" : std::to_string(v); }

bool has_nonlinear_component(const AnalyticMap& f) {
  return std::any_of(f.components().begin(), f.components().end(),
                     [](const MPoly<LocalElem>& p) { return p.total_degree() >= 2; });
}

LocalPoint padded(std::span<const LocalElem> x, std::int64_t precision) {
  LocalPoint out;
  out.reserve(x.size());
  for (const auto& v : x) out.push_back(v.padded_to(precision));
  return out;
}

LocalMatrix column(const LocalPoint& v) { return LocalMatrix(static_cast<int>(v.size()), 1, v); }

// One Newton step on the coordinates in `cols`, others held fixed. The
// iterate is treated as exact, so the step works at precision + v(det).
NewtonStep newton_step(const AnalyticMap& f, std::span<const LocalElem> x, const std::vector<int>& cols,
                       std::int64_t precision, bool guard) {
  const LocalField& field = f.field();
  const auto probe = padded(x, precision);
  const auto det = determinant(f.jacobian(probe, precision).select_columns(cols), LocalElem::zero(field, precision),
                               LocalElem::one(field, precision));
  if (det.is_zero()) fail(ErrorKind::kSingularJacobian, "Jacobian is singular at working precision " + str(precision));
  const std::int64_t dv = det.valuation();

  const std::int64_t work = precision + std::max<std::int64_t>(dv, 0);
  auto z = padded(x, work);
  const auto fz = f.evaluate(z, work);
  const std::int64_t before = min_valuation(fz);
  if (before >= precision) {
    for (auto& v : z) v = v.with_precision(precision);
    return {std::move(z), before, before, dv};
  }
  if (guard && before <= 2 * dv) {
    fail(ErrorKind::kHenselConditionFailed,
         "Hensel condition fails: v(F(x)) = " + str(before) + " but 2 v(det J) = " + str(2 * dv));
  }
  const auto block = f.jacobian(z, work).select_columns(cols);
  const auto delta = solve(block, column(fz), LocalElem::one(field, work));
  if (!delta) fail(ErrorKind::kSingularJacobian, "Jacobian is singular at working precision " + str(work));
  for (std::size_t i = 0; i < cols.size(); ++i) {
    auto& zi = z[static_cast<std::size_t>(cols[i])];
    zi = (zi - (*delta)(static_cast<int>(i), 0)).with_precision(precision);
  }
  for (auto& v : z) v = v.with_precision(precision);
  const std::int64_t after = min_valuation(f.evaluate(z, precision));
  return {std::move(z), before, after, dv};
}

std::vector<int> all_columns(int n) {
  std::vector<int> c(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) c[static_cast<std::size_t>(i)] = i;
  return c;
}

// Calls `visit` on every k-subset of 0..n-1 in lexicographic order until it returns true.
template <class F>
bool for_each_subset(int n, int k, F&& visit) {
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  while (true) {
    if (visit(idx)) return true;
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) return false;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

using Series = MPoly<LocalElem>;

Series truncated(const Series& a, int degree) {
  Series r(a.nvars());
  for (const auto& [e, c] : a.terms()) {
    if (Series::degree_of(e) <= degree) r.add_term(e, c);
  }
  return r;
}

// F(args) in the series ring, truncated at total degree `degree`.
Series compose(const Series& f, const std::vector<Series>& args, int degree, const LocalElem& one) {
  const int n = args.front().nvars();
  Series acc(n);
  std::vector<std::vector<Series>> powers(args.size());
  for (const auto& [e, c] : f.terms()) {
    Series t = Series::constant(n, c);
    for (std::size_t i = 0; i < e.size() && !t.is_zero(); ++i) {
      if (e[i] == 0) continue;
      auto& pw = powers[i];
      if (pw.empty()) pw.push_back(Series::constant(n, one));
      while (static_cast<int>(pw.size()) <= e[i]) pw.push_back(truncated(pw.back() * args[i], degree));
      t = truncated(t * pw[static_cast<std::size_t>(e[i])], degree);
    }
    acc = acc + t;
  }
  return acc;
}

}  // namespace

AnalyticMap::AnalyticMap(LocalField field, int n_params, int n_unknowns, std::vector<MPoly<LocalElem>> components,
                         std::int64_t tail_bound)
    : field_(std::move(field)),
      n_params_(n_params),
      n_unknowns_(n_unknowns),
      components_(std::move(components)),
      tail_bound_(tail_bound) {
  if (n_params_ < 0 || n_unknowns_ < 0 || source_dim() == 0) fail(ErrorKind::kInvalidArgument, "empty source");
  for (const auto& c : components_) {
    if (c.nvars() != source_dim()) fail(ErrorKind::kDimensionMismatch, "component in the wrong number of variables");
    std::vector<MPoly<LocalElem>> row;
    for (int v = 0; v < source_dim(); ++v) row.push_back(c.derivative(v));
    partials_.push_back(std::move(row));
  }
}

AnalyticMap AnalyticMap::from_polynomials(const LocalField& field, const std::vector<MPoly<QkElem>>& components,
                                          int n_params, std::int64_t precision, std::int64_t tail_bound) {
  std::vector<MPoly<LocalElem>> local;
  int nvars = 0;
  for (const auto& p : components) {
    nvars = p.nvars();
    local.push_back(p.map_coefficients([&](const QkElem& c) { return embed(c, field, precision); }));
  }
  if (components.empty()) fail(ErrorKind::kInvalidArgument, "no components");
  return AnalyticMap(field, n_params, nvars - n_params, std::move(local), tail_bound);
}

AnalyticMap AnalyticMap::parse(const LocalField& field, std::string_view text, const std::vector<std::string>& params,
                               const std::vector<std::string>& unknowns, std::int64_t precision) {
  std::vector<std::string> vars = params;
  vars.insert(vars.end(), unknowns.begin(), unknowns.end());
  const GlobalField k = GlobalField::of(field);
  std::vector<MPoly<QkElem>> comps;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    const char c = i < text.size() ? text[i] : ';';
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c != ';' || depth != 0) continue;
    try {
      comps.push_back(parse_mpoly(text.substr(start, i - start), vars, k));
    } catch (const ParseError& e) {
      throw ParseError(e.line(), e.column() + static_cast<int>(start), e.message());
    }
    start = i + 1;
  }
  return from_polynomials(field, comps, static_cast<int>(params.size()), precision);
}

void AnalyticMap::check_point(std::span<const LocalElem> z) const {
  if (static_cast<int>(z.size()) != source_dim()) {
    fail(ErrorKind::kDimensionMismatch, "point of dimension " + std::to_string(z.size()) + ", expected " + std::to_string(source_dim()));
  }
  if (tail_bound_ == kInfiniteValuation) return;
  for (const auto& x : z) {
    if (!x.is_zero() && x.valuation() < 0) {
      fail(ErrorKind::kEvaluationDivergence, "truncated series evaluated outside the closed unit polydisc");
    }
  }
}

LocalPoint AnalyticMap::evaluate(std::span<const LocalElem> z, std::int64_t precision) const {
  check_point(z);
  const std::int64_t p = std::min(precision, tail_bound_);
  LocalPoint out;
  for (const auto& c : components_) out.push_back(c.evaluate(z, field_, p).with_precision(p));
  return out;
}

LocalMatrix AnalyticMap::jacobian(std::span<const LocalElem> z, std::int64_t precision) const {
  check_point(z);
  std::vector<LocalElem> entries;
  for (const auto& row : partials_) {
    for (const auto& d : row) entries.push_back(d.evaluate(z, field_, precision));
  }
  return LocalMatrix(target_dim(), source_dim(), std::move(entries));
}

std::int64_t min_valuation(std::span<const LocalElem> v) {
  std::int64_t m = kInfiniteValuation;
  for (const auto& x : v) m = std::min(m, x.valuation_bound());
  return m;
}

NewtonStep newton_refine(const AnalyticMap& f, std::span<const LocalElem> x, std::int64_t precision) {
  if (f.target_dim() != f.source_dim()) fail(ErrorKind::kDimensionMismatch, "Newton iteration needs a square system");
  return newton_step(f, x, all_columns(f.source_dim()), precision, has_nonlinear_component(f));
}

NewtonRun newton_solve(const AnalyticMap& f, std::span<const LocalElem> x0, std::int64_t precision, int max_steps) {
  NewtonRun run{LocalPoint(x0.begin(), x0.end()), {}};
  for (int i = 0; i < max_steps; ++i) {
    auto step = newton_refine(f, run.root, precision);
    run.root = step.point;
    const bool done = step.residual_after >= precision;
    const bool stalled = step.residual_after <= step.residual_before;
    if (step.residual_before < precision) run.steps.push_back(std::move(step));
    if (done) return run;
    if (stalled) break;
  }
  fail(ErrorKind::kLiftDivergence, "Newton iteration did not reach precision " + str(precision));
}

LocalPoint SolutionChart::solve_fiber(std::span<const LocalElem> params) const {
  auto z = point(params);
  LocalPoint out;
  for (int c : unknown_cols_) out.push_back(z[static_cast<std::size_t>(c)]);
  return out;
}

LocalPoint SolutionChart::point(std::span<const LocalElem> params) const {
  if (params.size() != param_cols_.size()) fail(ErrorKind::kDimensionMismatch, "wrong number of chart parameters");
  LocalPoint z = center_;
  for (std::size_t i = 0; i < params.size(); ++i) {
    const auto c = static_cast<std::size_t>(param_cols_[i]);
    const auto d = params[i] - center_[c];
    if (!d.is_zero() && d.valuation() < radius_) {
      fail(ErrorKind::kInvalidArgument, "parameter " + std::to_string(i) + " lies outside the chart radius " + str(radius_));
    }
    z[c] = params[i];
  }
  const bool guard = has_nonlinear_component(map_);
  for (int i = 0; i < 64; ++i) {
    auto step = newton_step(map_, z, unknown_cols_, target_, guard);
    z = std::move(step.point);
    if (step.residual_after >= target_) return z;
    if (step.residual_after <= step.residual_before) break;
  }
  fail(ErrorKind::kLiftDivergence, "fiber Newton iteration did not reach precision " + str(target_));
}

SolutionChart implicit_solve(const AnalyticMap& f, std::span<const LocalElem> z0, std::int64_t target) {
  const int n = f.n_params();
  const int m = f.n_unknowns();
  if (f.target_dim() != m) fail(ErrorKind::kDimensionMismatch, "implicit system needs as many equations as unknowns");
  if (f.tail_bound() < target - kResidualMargin) {
    fail(ErrorKind::kTruncationInsufficient, "series tail bound " + str(f.tail_bound()) + " is below the target precision");
  }
  const auto residual = min_valuation(f.evaluate(z0, target));
  if (residual < target - kResidualMargin) {
    fail(ErrorKind::kInvalidArgument, "center is not a zero: v(F(z0)) = " + str(residual));
  }
  const auto& field = f.field();
  const auto jac = f.jacobian(z0, target);
  const auto zero = LocalElem::zero(field, target);
  const auto one = LocalElem::one(field, target);

  SolutionChart chart(f, LocalPoint(z0.begin(), z0.end()));
  auto try_block = [&](const std::vector<int>& cols) {
    const auto det = determinant(jac.select_columns(cols), zero, one);
    if (det.is_zero()) return false;
    chart.unknown_cols_ = cols;
    chart.det_valuation_ = det.valuation();
    return true;
  };
  std::vector<int> right(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) right[static_cast<std::size_t>(i)] = n + i;
  if (!try_block(right) && !for_each_subset(n + m, m, try_block)) {
    fail(ErrorKind::kSingularBlock, "no " + std::to_string(m) + "x" + std::to_string(m) + " block of the Jacobian is invertible");
  }
  for (int c = 0; c < n + m; ++c) {
    if (std::find(chart.unknown_cols_.begin(), chart.unknown_cols_.end(), c) == chart.unknown_cols_.end()) {
      chart.param_cols_.push_back(c);
    }
  }
  chart.radius_ = 2 * std::max<std::int64_t>(chart.det_valuation_, 0) + 1;
  chart.target_ = target;
  return chart;
}

std::vector<MPoly<LocalElem>> implicit_series(const AnalyticMap& f, std::span<const LocalElem> z0, int degree,
                                              std::int64_t precision) {
  const int n = f.n_params();
  const int m = f.n_unknowns();
  if (f.target_dim() != m) fail(ErrorKind::kDimensionMismatch, "implicit system needs as many equations as unknowns");
  if (static_cast<int>(z0.size()) != n + m) fail(ErrorKind::kDimensionMismatch, "center of the wrong dimension");
  if (n == 0) fail(ErrorKind::kInvalidArgument, "series solution needs at least one parameter");
  const auto& field = f.field();
  const auto zero = LocalElem::zero(field, precision);
  const auto one = LocalElem::one(field, precision);

  std::vector<int> right(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) right[static_cast<std::size_t>(i)] = n + i;
  const auto block = f.jacobian(z0, precision).select_columns(right);
  const auto inv = inverse(block, zero, one);
  if (!inv) fail(ErrorKind::kSingularBlock, "right Jacobian block is singular");

  std::vector<Series> args;
  for (int i = 0; i < n; ++i) {
    args.push_back(Series::constant(n, z0[static_cast<std::size_t>(i)]) + Series::variable(n, i, one));
  }
  for (int j = 0; j < m; ++j) args.push_back(Series::constant(n, z0[static_cast<std::size_t>(n + j)]));

  // Chord iteration y <- y - J^{-1} F(x, y): each pass fixes at least one more degree.
  for (int iter = 0; iter <= degree + 1; ++iter) {
    std::vector<Series> residual;
    bool done = true;
    for (const auto& c : f.components()) {
      residual.push_back(compose(c, args, degree, one));
      if (!residual.back().is_zero()) done = false;
    }
    if (done) break;
    for (int j = 0; j < m; ++j) {
      Series delta(n);
      for (int k = 0; k < m; ++k) delta = delta + residual[static_cast<std::size_t>(k)].scaled((*inv)(j, k));
      auto& y = args[static_cast<std::size_t>(n + j)];
      y = truncated(y - delta, degree);
    }
  }
  std::vector<Series> out(args.begin() + n, args.end());
  return out;
}

}  // namespace ffarith
