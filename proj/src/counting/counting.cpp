#include "ffarith/counting/counting.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

namespace ffarith {

namespace {

std::int64_t min_coefficient_valuation(const AnalyticMap& f, bool skip_constants) {
  std::int64_t v = kInfiniteValuation;
  for (const auto& p : f.components()) {
    for (const auto& [e, c] : p.terms()) {
      if (skip_constants && MPoly<LocalElem>::degree_of(e) == 0) continue;
      v = std::min(v, c.valuation_bound());
    }
  }
  return v;
}

// Searches the parameter polydisc for points of an image-form set that agree
// with candidate tuples. Candidates are a product of per-coordinate lists, so
// a cell keeps, per coordinate, the values its bound cannot exclude.
class CellSearch {
 public:
  CellSearch(const AnalyticSetSpec& w, const std::vector<std::vector<LocalElem>>& values, std::int64_t precision,
             long budget)
      : w_(w), values_(values), precision_(precision), budget_(budget) {
    const auto& f = w.map();
    if (f.tail_bound() < precision) {
      fail(ErrorKind::kTruncationInsufficient, "series tail bound " + std::to_string(f.tail_bound()) +
                                                   " is below precision " + std::to_string(precision));
    }
    lipschitz_ = min_coefficient_valuation(f, true);
    const auto all = min_coefficient_valuation(f, false);
    center_precision_ = precision + std::max<std::int64_t>(0, all == kInfiniteValuation ? 0 : -all);
  }

  std::set<std::vector<int>> run(std::vector<std::vector<int>> alive) {
    const int h = w_.map().n_params();
    LocalPoint center(static_cast<std::size_t>(h), LocalElem::zero(w_.field(), center_precision_));
    visit(center, 0, alive);
    return std::move(found_);
  }

 private:
  std::int64_t bound(std::int64_t r) const {
    return lipschitz_ == kInfiniteValuation ? precision_ : std::min(precision_, r + lipschitz_);
  }

  void visit(const LocalPoint& center, std::int64_t r, const std::vector<std::vector<int>>& alive) {
    if (++cells_ > budget_) fail(ErrorKind::kBudgetExceeded, "membership search exceeded " + std::to_string(budget_) + " cells");
    const std::int64_t b = bound(r);
    // Values of the center are needed only to absolute precision b.
    LocalPoint c;
    for (const auto& x : center) c.push_back(x.with_precision(b + center_precision_ - precision_));
    const auto phi = w_.map().evaluate(c, b);
    std::vector<std::vector<int>> kept(alive.size());
    for (std::size_t i = 0; i < alive.size(); ++i) {
      for (int j : alive[i]) {
        if ((phi[i] - values_[i][static_cast<std::size_t>(j)]).valuation_bound() >= b) kept[i].push_back(j);
      }
      if (kept[i].empty()) return;
    }
    if (b >= precision_) {
      collect(kept);
      return;
    }
    const auto& field = w_.field();
    const int digits = field.residue().size();
    const std::size_t h = center.size();
    std::vector<int> d(h, 0);
    for (;;) {
      LocalPoint child = center;
      for (std::size_t k = 0; k < h; ++k) {
        if (d[k] != 0) {
          child[k] = child[k] + LocalElem::from_digits(field, r, {static_cast<LocalElem::Digit>(d[k])}, center_precision_);
        }
      }
      visit(child, r + 1, kept);
      std::size_t k = 0;
      while (k < h && ++d[k] == digits) d[k++] = 0;
      if (k == h) break;
    }
  }

  void collect(const std::vector<std::vector<int>>& kept) {
    std::vector<std::size_t> idx(kept.size(), 0);
    for (;;) {
      std::vector<int> t;
      for (std::size_t i = 0; i < kept.size(); ++i) t.push_back(kept[i][idx[i]]);
      found_.insert(std::move(t));
      std::size_t k = 0;
      while (k < kept.size() && ++idx[k] == kept[k].size()) idx[k++] = 0;
      if (k == kept.size()) break;
    }
  }

  const AnalyticSetSpec& w_;
  const std::vector<std::vector<LocalElem>>& values_;
  std::int64_t precision_;
  long budget_;
  long cells_ = 0;
  std::int64_t lipschitz_ = 0;
  std::int64_t center_precision_ = 0;
  std::set<std::vector<int>> found_;
};

bool zero_locus_contains(const AnalyticSetSpec& w, std::span<const LocalElem> z, std::int64_t precision) {
  if (w.map().tail_bound() < precision) {
    fail(ErrorKind::kTruncationInsufficient, "series tail bound " + std::to_string(w.map().tail_bound()) +
                                                 " is below precision " + std::to_string(precision));
  }
  // Off the unit disc each F_j is scaled by prod z_i^(-deg_i F_j), the
  // polynomial in the inverted coordinates, so the test is v(F_j(z)) >= P - loss.
  const auto fz = w.map().evaluate(z, precision);
  const auto& comps = w.map().components();
  for (std::size_t j = 0; j < fz.size(); ++j) {
    std::int64_t loss = 0;
    for (std::size_t i = 0; i < z.size(); ++i) {
      if (z[i].is_zero() || z[i].valuation_bound() >= 0) continue;
      int deg = 0;
      for (const auto& [e, c] : comps[j].terms()) deg = std::max(deg, e[i]);
      loss += static_cast<std::int64_t>(deg) * -z[i].valuation_bound();
    }
    const auto target = precision - loss;
    if (fz[j].precision() < target) {
      fail(ErrorKind::kPrecisionExhausted, "F(z) known to " + std::to_string(fz[j].precision()) + " below " +
                                                  std::to_string(target));
    }
    if (!fz[j].is_zero() && fz[j].valuation_bound() < target) return false;
  }
  return true;
}

void check_precision(std::int64_t precision) {
  if (precision < 1) fail(ErrorKind::kInvalidArgument, "precision must be positive");
}

void check_height(const BigInt& t) {
  if (t < 1) fail(ErrorKind::kInvalidArgument, "height bound must be at least 1");
}

// Largest d with q^d <= t.
int degree_bound(int q, const BigInt& t) {
  int d = 0;
  BigInt p = q;
  while (p <= t) {
    p *= q;
    ++d;
  }
  return d;
}

struct Keyed {
  BigInt height;
  std::size_t index;
};

template <class Point, class HeightOf>
void sort_by_enumeration(std::vector<Point>& pts, HeightOf height_of) {
  std::vector<Keyed> keys;
  keys.reserve(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) keys.push_back({height_of(pts[i]), i});
  std::sort(keys.begin(), keys.end(), [&](const Keyed& a, const Keyed& b) {
    if (a.height != b.height) return a.height < b.height;
    return pts[a.index] < pts[b.index];
  });
  std::vector<Point> out;
  out.reserve(pts.size());
  for (const auto& k : keys) out.push_back(std::move(pts[k.index]));
  pts = std::move(out);
}

BigInt point_height(const RationalPoint& z) { return height(z).value; }

void check_piece(const UnitPiece& piece, int m) {
  if (static_cast<int>(piece.inverted.size()) != m) {
    fail(ErrorKind::kDimensionMismatch, "piece of dimension " + std::to_string(piece.inverted.size()));
  }
}

}  // namespace

AnalyticSetSpec AnalyticSetSpec::image(AnalyticMap phi) {
  if (phi.n_unknowns() != 0) fail(ErrorKind::kInvalidArgument, "an image map takes parameters only");
  if (phi.target_dim() < 1) fail(ErrorKind::kInvalidArgument, "an image map needs at least one component");
  return AnalyticSetSpec(Form::kImage, std::move(phi));
}

AnalyticSetSpec AnalyticSetSpec::zero_locus(AnalyticMap f) {
  if (f.target_dim() < 1) fail(ErrorKind::kInvalidArgument, "a zero locus needs at least one equation");
  return AnalyticSetSpec(Form::kZeroLocus, std::move(f));
}

AnalyticSetSpec AnalyticSetSpec::exp_graph(const ExpSeries& e, const LocalField& field, std::int64_t precision) {
  const int m = e.module.dimension();
  const int n = e.truncation();
  if (!field.is_laurent() || field.q() != e.module.q()) {
    fail(ErrorKind::kFlavorMismatch, "exponential over F_" + std::to_string(e.module.q()) + " in " + field.describe());
  }
  const auto one = LocalElem::one(field, precision);
  std::vector<MPoly<LocalElem>> comps;
  for (int i = 0; i < m; ++i) comps.push_back(MPoly<LocalElem>::variable(m, i, one));
  int qn = 1;
  std::vector<MPoly<LocalElem>> values(static_cast<std::size_t>(m), MPoly<LocalElem>(m));
  for (int k = 0; k <= n; ++k) {
    const auto& c = e.coeffs[static_cast<std::size_t>(k)];
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        if (c(i, j).is_exact_zero()) continue;
        Exponents ex(static_cast<std::size_t>(m), 0);
        ex[static_cast<std::size_t>(j)] = qn;
        values[static_cast<std::size_t>(i)].add_term(ex, c(i, j).to_local(field, precision));
      }
    }
    qn *= e.module.q();
  }
  for (auto& v : values) comps.push_back(std::move(v));
  // First omitted coefficient: its valuation bounds the tail on the unit polydisc.
  const auto next = exp_coeffs(e.module, n + 1).coeffs.back();
  std::int64_t tail = kInfiniteValuation;
  for (const auto& x : next.entries()) {
    if (!x.is_exact_zero()) tail = std::min(tail, x.valuation_in(field));
  }
  return image(AnalyticMap(field, m, 0, std::move(comps), tail));
}

std::vector<bool> AnalyticSetSpec::bounded_coordinates() const {
  std::vector<bool> out(static_cast<std::size_t>(ambient_dim()), false);
  if (form_ != Form::kImage || map_.tail_bound() < 0) return out;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto& p = map_.components()[i];
    out[i] = std::all_of(p.terms().begin(), p.terms().end(), [](const auto& t) { return t.second.valuation_bound() >= 0; });
  }
  return out;
}

bool AlgebraicPartSpec::contains(std::span<const QkElem> z) const {
  if (z.empty()) return false;
  const QkElem zero = QkElem::zero(z[0].field());
  for (const auto& comp : components) {
    const bool on = std::all_of(comp.begin(), comp.end(), [&](const MPoly<QkElem>& p) {
      if (p.nvars() != static_cast<int>(z.size())) fail(ErrorKind::kDimensionMismatch, "algebraic component in the wrong dimension");
      return p.evaluate_exact(z, zero).is_zero();
    });
    if (on) return true;
  }
  return false;
}

bool enumeration_less(const RationalPoint& a, const RationalPoint& b) {
  const auto ha = point_height(a);
  const auto hb = point_height(b);
  if (ha != hb) return ha < hb;
  return a < b;
}

std::vector<QkElem> rationals_up_to_height(const GlobalField& k, const BigInt& t, std::size_t budget) {
  check_height(t);
  std::vector<QkElem> out;
  if (k.is_function_field()) {
    const auto& fq = k.constants();
    const int q = fq.size();
    const int d = degree_bound(q, t);
    BigInt estimate = 1;
    for (int i = 0; i < 2 * d + 1; ++i) estimate *= q;
    if (estimate > budget) fail(ErrorKind::kBudgetExceeded, "more than " + std::to_string(budget) + " values of height <= " + t.str());
    const auto nums = all_polys_below_degree(fq, d + 1);
    for (int n = 0; n <= d; ++n) {
      for (const auto& den : monic_polys_of_degree(fq, n)) {
        for (const auto& num : nums) {
          if (gcd(num, den).degree() == 0) out.emplace_back(RationalFn(num, den));
        }
      }
    }
  } else {
    if (t * (2 * t + 1) > budget) fail(ErrorKind::kBudgetExceeded, "more than " + std::to_string(budget) + " values of height <= " + t.str());
    const long long bound = static_cast<long long>(t);
    for (long long den = 1; den <= bound; ++den) {
      for (long long num = -bound; num <= bound; ++num) {
        if (std::gcd(num < 0 ? -num : num, den) == 1) out.emplace_back(Rational(num, den));
      }
    }
  }
  sort_by_enumeration(out, [](const QkElem& x) { return x.size(); });
  return out;
}

std::vector<RationalPoint> enumerate_rationals(const GlobalField& k, int n, const BigInt& t, std::size_t budget) {
  if (n < 1) fail(ErrorKind::kInvalidArgument, "dimension must be positive");
  const auto values = rationals_up_to_height(k, t, budget);
  BigInt total = 1;
  for (int i = 0; i < n; ++i) total *= values.size();
  if (total > budget) fail(ErrorKind::kBudgetExceeded, "more than " + std::to_string(budget) + " points of height <= " + t.str());
  std::vector<RationalPoint> out;
  out.reserve(static_cast<std::size_t>(total));
  std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
  for (;;) {
    RationalPoint z;
    for (auto i : idx) z.push_back(values[i]);
    out.push_back(std::move(z));
    std::size_t k2 = 0;
    while (k2 < idx.size() && ++idx[k2] == values.size()) idx[k2++] = 0;
    if (k2 == idx.size()) break;
  }
  sort_by_enumeration(out, point_height);
  return out;
}

bool membership(const AnalyticSetSpec& w, std::span<const LocalElem> z, std::int64_t precision, long cell_budget) {
  check_precision(precision);
  if (static_cast<int>(z.size()) != w.ambient_dim()) {
    fail(ErrorKind::kDimensionMismatch, "point of dimension " + std::to_string(z.size()) + " in K^" + std::to_string(w.ambient_dim()));
  }
  if (w.form() == AnalyticSetSpec::Form::kZeroLocus) return zero_locus_contains(w, z, precision);
  std::vector<std::vector<LocalElem>> values;
  for (const auto& x : z) values.push_back({x.with_precision(precision)});
  CellSearch search(w, values, precision, cell_budget);
  return !search.run(std::vector<std::vector<int>>(z.size(), std::vector<int>{0})).empty();
}

bool UnitPiece::contains(std::span<const QkElem> z, const LocalField& field) const {
  if (z.size() != inverted.size()) fail(ErrorKind::kDimensionMismatch, "point does not match the piece");
  for (std::size_t i = 0; i < z.size(); ++i) {
    if ((exact_valuation(z[i], field) < 0) != inverted[i]) return false;
  }
  return true;
}

std::string UnitPiece::tag() const {
  std::string out;
  for (std::size_t i = 0; i < inverted.size(); ++i) {
    if (!inverted[i]) continue;
    out += out.empty() ? "invert(" : ",";
    out += std::to_string(i + 1);
  }
  return out.empty() ? "identity" : out + ")";
}

std::vector<UnitPiece> split_by_unit_polydisc(const AnalyticSetSpec& w) {
  const auto bounded = w.bounded_coordinates();
  std::vector<std::size_t> free;
  for (std::size_t i = 0; i < bounded.size(); ++i) {
    if (!bounded[i]) free.push_back(i);
  }
  std::vector<UnitPiece> out;
  for (unsigned long mask = 0; mask < (1UL << free.size()); ++mask) {
    UnitPiece p{std::vector<bool>(bounded.size(), false)};
    for (std::size_t k = 0; k < free.size(); ++k) p.inverted[free[k]] = ((mask >> k) & 1UL) != 0;
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<RationalPoint> rational_points_in_piece(const AnalyticSetSpec& w, const UnitPiece& piece, const BigInt& t,
                                                    std::int64_t precision) {
  check_precision(precision);
  const int m = w.ambient_dim();
  check_piece(piece, m);
  const auto& field = w.field();
  const auto values = rationals_up_to_height(w.flavor(), t);
  std::vector<LocalElem> embedded;
  embedded.reserve(values.size());
  for (const auto& x : values) embedded.push_back(embed(x, field, precision));
  std::vector<std::vector<int>> alive(static_cast<std::size_t>(m));
  for (std::size_t j = 0; j < values.size(); ++j) {
    const bool large = exact_valuation(values[j], field) < 0;
    for (int i = 0; i < m; ++i) {
      if (large == piece.inverted[static_cast<std::size_t>(i)]) alive[static_cast<std::size_t>(i)].push_back(static_cast<int>(j));
    }
  }
  std::vector<RationalPoint> out;
  if (std::any_of(alive.begin(), alive.end(), [](const auto& a) { return a.empty(); })) return out;
  if (w.form() == AnalyticSetSpec::Form::kImage) {
    const std::vector<std::vector<LocalElem>> per_coordinate(static_cast<std::size_t>(m), embedded);
    CellSearch search(w, per_coordinate, precision, kDefaultCellBudget);
    for (const auto& idx : search.run(alive)) {
      RationalPoint z;
      for (int j : idx) z.push_back(values[static_cast<std::size_t>(j)]);
      out.push_back(std::move(z));
    }
  } else {
    BigInt total = 1;
    for (const auto& a : alive) total *= a.size();
    if (total > kDefaultPointBudget) fail(ErrorKind::kBudgetExceeded, "too many candidate points in piece " + piece.tag());
    std::vector<std::size_t> idx(static_cast<std::size_t>(m), 0);
    for (;;) {
      LocalPoint z;
      for (int i = 0; i < m; ++i) z.push_back(embedded[static_cast<std::size_t>(alive[static_cast<std::size_t>(i)][idx[static_cast<std::size_t>(i)]])]);
      if (zero_locus_contains(w, z, precision)) {
        RationalPoint r;
        for (int i = 0; i < m; ++i) r.push_back(values[static_cast<std::size_t>(alive[static_cast<std::size_t>(i)][idx[static_cast<std::size_t>(i)]])]);
        out.push_back(std::move(r));
      }
      std::size_t k = 0;
      while (k < idx.size() && ++idx[k] == alive[k].size()) idx[k++] = 0;
      if (k == idx.size()) break;
    }
  }
  sort_by_enumeration(out, point_height);
  return out;
}

std::vector<RationalPoint> rational_points(const AnalyticSetSpec& w, const BigInt& t, std::int64_t precision) {
  std::vector<RationalPoint> out;
  for (const auto& piece : split_by_unit_polydisc(w)) {
    auto pts = rational_points_in_piece(w, piece, t, precision);
    out.insert(out.end(), std::make_move_iterator(pts.begin()), std::make_move_iterator(pts.end()));
  }
  sort_by_enumeration(out, point_height);
  return out;
}

std::vector<RationalPoint> transcendent_points(const AnalyticSetSpec& w, const AlgebraicPartSpec& alg, const BigInt& t,
                                               std::int64_t precision) {
  auto pts = rational_points(w, t, precision);
  std::erase_if(pts, [&](const RationalPoint& z) { return alg.contains(z); });
  return pts;
}

std::size_t count_transcendent(const AnalyticSetSpec& w, const AlgebraicPartSpec& alg, const BigInt& t,
                               std::int64_t precision) {
  return transcendent_points(w, alg, t, precision).size();
}

std::vector<Exponents> monomials(int d, int delta) {
  if (d < 1 || delta < 1) fail(ErrorKind::kInvalidArgument, "monomials need d >= 1 and delta >= 1");
  std::vector<Exponents> out;
  for (int deg = 0; deg <= delta; ++deg) {
    // Exponent vectors of total degree deg, x1 powers descending.
    Exponents e(static_cast<std::size_t>(d), 0);
    auto fill = [&](auto&& self, int pos, int left) -> void {
      if (pos == d - 1) {
        e[static_cast<std::size_t>(pos)] = left;
        out.push_back(e);
        return;
      }
      for (int k = left; k >= 0; --k) {
        e[static_cast<std::size_t>(pos)] = k;
        self(self, pos + 1, left - k);
      }
    };
    fill(fill, 0, deg);
  }
  return out;
}

namespace {

QkElem monomial_value(const Exponents& e, std::span<const QkElem> z) {
  QkElem v = QkElem::one(z[0].field());
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] > 0) v *= z[i].pow(e[i]);
  }
  return v;
}

}  // namespace

QkElem Hypersurface::evaluate(std::span<const QkElem> z) const {
  if (static_cast<int>(z.size()) != dimension) fail(ErrorKind::kDimensionMismatch, "point does not match the hypersurface");
  const auto mons = monomials(dimension, degree);
  QkElem acc = QkElem::zero(z[0].field());
  for (std::size_t k = 0; k < mons.size(); ++k) {
    if (!coeffs[k].is_zero()) acc += coeffs[k] * monomial_value(mons[k], z);
  }
  return acc;
}

MPoly<QkElem> Hypersurface::polynomial() const {
  const auto mons = monomials(dimension, degree);
  MPoly<QkElem> p(dimension);
  for (std::size_t k = 0; k < mons.size(); ++k) p.add_term(mons[k], coeffs[k]);
  return p;
}

std::string Hypersurface::render(const std::vector<std::string>& names) const { return polynomial().render(names); }

std::vector<Hypersurface> cover_points(const std::vector<RationalPoint>& points, int d, int delta) {
  const auto mons = monomials(d, delta);
  std::vector<Hypersurface> out;
  if (points.empty()) return out;
  const GlobalField k = points[0][0].field();
  const QkElem zero = QkElem::zero(k);
  const QkElem one = QkElem::one(k);
  const std::size_t batch = mons.size() - 1;
  std::vector<std::vector<QkElem>> rows;
  for (const auto& z : points) {
    if (static_cast<int>(z.size()) != d) fail(ErrorKind::kDimensionMismatch, "point of dimension " + std::to_string(z.size()));
    std::vector<QkElem> r;
    for (const auto& e : mons) r.push_back(monomial_value(e, z));
    rows.push_back(std::move(r));
  }
  std::vector<std::size_t> uncovered(points.size());
  std::iota(uncovered.begin(), uncovered.end(), 0);
  while (!uncovered.empty()) {
    const std::size_t n = std::min(batch, uncovered.size());
    std::vector<QkElem> entries;
    for (std::size_t i = 0; i < n; ++i) {
      const auto& r = rows[uncovered[i]];
      entries.insert(entries.end(), r.begin(), r.end());
    }
    const auto ker = kernel(Matrix<QkElem>(static_cast<int>(n), static_cast<int>(mons.size()), std::move(entries)), zero, one);
    if (ker.empty()) fail(ErrorKind::kKernelEmpty, "no hypersurface of degree " + std::to_string(delta) + " through the batch");
    auto v = ker.front();
    const auto lead = std::find_if(v.begin(), v.end(), [](const QkElem& x) { return !x.is_zero(); });
    const QkElem scale = lead->inverse();
    for (auto& x : v) x *= scale;
    std::vector<std::size_t> rest;
    for (auto i : uncovered) {
      QkElem acc = zero;
      for (std::size_t c = 0; c < v.size(); ++c) {
        if (!v[c].is_zero()) acc += v[c] * rows[i][c];
      }
      if (!acc.is_zero()) rest.push_back(i);
    }
    out.push_back(Hypersurface{d, delta, std::move(v)});
    uncovered = std::move(rest);
  }
  return out;
}

std::vector<Hypersurface> cover_by_hypersurfaces(const AnalyticSetSpec& w, const BigInt& t, int delta,
                                                 std::int64_t precision) {
  if (w.form() != AnalyticSetSpec::Form::kImage) fail(ErrorKind::kInvalidArgument, "covers are built for sets in image form");
  return cover_points(rational_points(w, t, precision), w.ambient_dim(), delta);
}

CountReport count_report(const AnalyticSetSpec& w, const AlgebraicPartSpec& alg, const std::vector<BigInt>& t_grid,
                         std::int64_t precision, int delta, bool timing) {
  CountReport report;
  for (const auto& t : t_grid) {
    const auto start = std::chrono::steady_clock::now();
    const auto pts = transcendent_points(w, alg, t, precision);
    const auto cover = cover_points(pts, w.ambient_dim(), delta);
    CountRow row{t, pts.size(), cover.size(), precision, 0};
    if (timing) {
      row.elapsed_ms =
          std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

namespace {

constexpr const char* kCsvHeader = "t,count,cover_size,precision,elapsed_ms";

long long parse_integer(const std::string& s, int line, int column) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw ParseError(line, column, "expected an integer, got '" + s + "'");
}

}  // namespace

std::string render_csv(const CountReport& report) {
  std::string out = std::string(kCsvHeader) + "\n";
  for (const auto& r : report.rows) {
    out += r.t.str() + "," + std::to_string(r.count) + "," + std::to_string(r.cover_size) + "," +
           std::to_string(r.precision) + "," + std::to_string(r.elapsed_ms) + "\n";
  }
  return out;
}

CountReport parse_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string raw;
  CountReport report;
  if (!std::getline(in, raw) || raw != kCsvHeader) throw ParseError(1, 1, std::string("expected header '") + kCsvHeader + "'");
  for (int line = 2; std::getline(in, raw); ++line) {
    if (raw.empty()) continue;
    std::vector<std::string> fields;
    std::vector<int> columns;
    std::size_t start = 0;
    for (;;) {
      const auto comma = raw.find(',', start);
      fields.push_back(raw.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
      columns.push_back(static_cast<int>(start) + 1);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (fields.size() != 5) throw ParseError(line, 1, "expected 5 fields, got " + std::to_string(fields.size()));
    CountRow row;
    try {
      row.t = BigInt(fields[0]);
    } catch (const std::exception&) {
      throw ParseError(line, 1, "expected an integer, got '" + fields[0] + "'");
    }
    row.count = static_cast<std::size_t>(parse_integer(fields[1], line, columns[1]));
    row.cover_size = static_cast<std::size_t>(parse_integer(fields[2], line, columns[2]));
    row.precision = parse_integer(fields[3], line, columns[3]);
    row.elapsed_ms = parse_integer(fields[4], line, columns[4]);
    report.rows.push_back(std::move(row));
  }
  return report;
}

SlopeFit slope_estimate(const std::vector<double>& t, const std::vector<double>& n) {
  if (t.size() != n.size()) fail(ErrorKind::kDimensionMismatch, "t and n differ in length");
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (n[i] >= 1 && t[i] > 0) {
      xs.push_back(std::log(t[i]));
      ys.push_back(std::log(n[i]));
    }
  }
  if (xs.size() < 3) fail(ErrorKind::kInsufficientData, "need at least three rows with a positive count");
  const double k = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / k;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / k;
  double sxx = 0;
  double sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0) fail(ErrorKind::kInsufficientData, "all rows share the same t");
  SlopeFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
    fit.residual += r * r;
  }
  return fit;
}

SlopeFit slope_estimate(const CountReport& report) {
  std::vector<double> t;
  std::vector<double> n;
  for (const auto& r : report.rows) {
    t.push_back(r.t.convert_to<double>());
    n.push_back(static_cast<double>(r.count));
  }
  return slope_estimate(t, n);
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

int parse_int_value(const std::string& value, int line, int column, const char* key) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(value, &used);
    if (used == value.size()) return v;
  } catch (const std::exception&) {
  }
  throw ParseError(line, column, std::string("'") + key + "' expects an integer, got '" + value + "'");
}

std::vector<std::string> parse_names(const std::string& value) {
  std::vector<std::string> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// Re-raises a parse error from a value that starts at `at`.
template <class F>
auto located(const SetDescription::Position& at, F&& f) {
  try {
    return f();
  } catch (const ParseError& e) {
    throw ParseError(at.line, e.column() + at.column - 1, e.message());
  }
}

std::vector<std::string> split_components(std::string_view text) {
  std::vector<std::string> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    const char c = i < text.size() ? text[i] : ';';
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c != ';' || depth != 0) continue;
    out.emplace_back(text.substr(start, i - start));
    start = i + 1;
  }
  return out;
}

}  // namespace

SetDescription parse_set_spec(std::string_view text) {
  SetDescription d;
  std::string flavor;
  int q = 0;
  int p = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  for (int line = 1; std::getline(in, raw); ++line) {
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.resize(hash);
    if (trim(raw).empty()) continue;
    const auto eq = raw.find('=');
    if (eq == std::string::npos) throw ParseError(line, 1, "expected key = value");
    const std::string key = trim(std::string_view(raw).substr(0, eq));
    const std::string value = trim(std::string_view(raw).substr(eq + 1));
    const auto first = raw.find_first_not_of(" \t", eq + 1);
    const SetDescription::Position at{line, first == std::string::npos ? static_cast<int>(raw.size()) + 1 : static_cast<int>(first) + 1};
    if (key == "flavor") {
      if (value != "fq" && value != "qp") throw ParseError(line, at.column, "flavor must be fq or qp, got '" + value + "'");
      flavor = value;
    } else if (key == "q") {
      q = parse_int_value(value, line, at.column, "q");
    } else if (key == "p") {
      p = parse_int_value(value, line, at.column, "p");
    } else if (key == "form") {
      if (value != "image" && value != "zero_locus" && value != "exp_graph") {
        throw ParseError(line, at.column, "form must be image, zero_locus or exp_graph, got '" + value + "'");
      }
      d.form = value;
    } else if (key == "params") {
      d.params = parse_names(value);
    } else if (key == "vars") {
      d.vars = parse_names(value);
    } else if (key == "map") {
      d.map = value;
      d.map_at = at;
    } else if (key == "equations") {
      d.equations = value;
      d.equations_at = at;
    } else if (key == "m") {
      d.m = parse_int_value(value, line, at.column, "m");
    } else if (key == "phi_T") {
      d.phi_t = value;
      d.phi_t_at = at;
    } else if (key == "truncation") {
      d.truncation = parse_int_value(value, line, at.column, "truncation");
    } else if (key == "algebraic") {
      d.algebraic.push_back(value);
      d.algebraic_at.push_back(at);
    } else {
      throw ParseError(line, 1, "unknown key '" + key + "'");
    }
  }
  if (flavor.empty() && q != 0) flavor = "fq";
  if (flavor.empty() && p != 0) flavor = "qp";
  if (flavor == "fq") {
    if (q == 0) fail(ErrorKind::kInvalidArgument, "flavor fq needs 'q'");
    d.field = LocalField::laurent(q);
  } else if (flavor == "qp") {
    if (p == 0) fail(ErrorKind::kInvalidArgument, "flavor qp needs 'p'");
    d.field = LocalField::padic(p);
  }
  if (d.form.empty()) fail(ErrorKind::kInvalidArgument, "missing 'form'");
  if (d.m < 1) fail(ErrorKind::kInvalidArgument, "'m' must be positive");
  if (d.truncation < 2) fail(ErrorKind::kInvalidArgument, "'truncation' must be at least 2");
  return d;
}

AnalyticSetSpec build_set(const SetDescription& d, const std::optional<LocalField>& field, std::int64_t precision) {
  check_precision(precision);
  if (d.field && field && !(*d.field == *field)) {
    fail(ErrorKind::kFlavorMismatch, "set file declares " + d.field->describe() + " but " + field->describe() + " was requested");
  }
  const auto f = field ? field : d.field;
  if (!f) fail(ErrorKind::kInvalidArgument, "no flavor given for the set");
  if (d.form == "image") {
    if (d.params.empty()) fail(ErrorKind::kInvalidArgument, "image form needs 'params'");
    if (d.map.empty()) fail(ErrorKind::kInvalidArgument, "image form needs 'map'");
    return AnalyticSetSpec::image(located(d.map_at, [&] { return AnalyticMap::parse(*f, d.map, d.params, {}, precision); }));
  }
  if (d.form == "zero_locus") {
    if (d.vars.empty()) fail(ErrorKind::kInvalidArgument, "zero_locus form needs 'vars'");
    if (d.equations.empty()) fail(ErrorKind::kInvalidArgument, "zero_locus form needs 'equations'");
    return AnalyticSetSpec::zero_locus(
        located(d.equations_at, [&] { return AnalyticMap::parse(*f, d.equations, d.vars, {}, precision); }));
  }
  if (!f->is_laurent()) fail(ErrorKind::kFlavorMismatch, "exp_graph needs the fq flavor");
  if (d.phi_t.empty()) fail(ErrorKind::kInvalidArgument, "exp_graph form needs 'phi_T'");
  const auto module = TModule::create(
      located(d.phi_t_at, [&] { return parse_twisted(d.phi_t, GaloisField::of_size(f->q()), d.m, d.phi_t_at.line); }));
  return AnalyticSetSpec::exp_graph(exp_coeffs(module, d.truncation), *f, precision);
}

std::vector<std::string> ambient_names(const SetDescription& d, int m) {
  if (!d.vars.empty()) {
    if (static_cast<int>(d.vars.size()) != m) {
      fail(ErrorKind::kDimensionMismatch, "'vars' names " + std::to_string(d.vars.size()) + " coordinates, the set has " + std::to_string(m));
    }
    return d.vars;
  }
  std::vector<std::string> out;
  for (int i = 1; i <= m; ++i) out.push_back("x" + std::to_string(i));
  return out;
}

AlgebraicPartSpec build_algebraic_part(const SetDescription& d, const AnalyticSetSpec& w) {
  const auto names = ambient_names(d, w.ambient_dim());
  const GlobalField k = w.flavor();
  AlgebraicPartSpec out;
  for (std::size_t i = 0; i < d.algebraic.size(); ++i) {
    const auto& at = d.algebraic_at[i];
    std::vector<MPoly<QkElem>> comp;
    int offset = 0;
    for (const auto& piece : split_components(d.algebraic[i])) {
      const SetDescription::Position shifted{at.line, at.column + offset};
      comp.push_back(located(shifted, [&] { return parse_mpoly(piece, names, k, at.line); }));
      offset += static_cast<int>(piece.size()) + 1;
    }
    out.components.push_back(std::move(comp));
  }
  return out;
}

}  // namespace ffarith
