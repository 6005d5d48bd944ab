#include "ffarith/tmodule/tmodule.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <numeric>
#include <optional>
#include <sstream>

#include "ffarith/error.hpp"
#include "ffarith/localfield/expr.hpp"

namespace ffarith {

namespace {

ScalarMatrix scalar_zero(const GaloisField& fq, int m) { return zero_matrix(fq, m); }

bool is_nilpotent(const ScalarMatrix& n) {
  const auto& fq = n(0, 0).constants();
  return matrix_power(n, static_cast<unsigned>(n.rows()), Scalar::zero(fq), Scalar::one(fq)).is_zero();
}

TwistedPoly constant_poly(const GaloisField& fq, int m, GaloisField::Elem c) {
  return TwistedPoly::constant(scalar_matrix(fq, m, Scalar(RationalFn::constant(fq, c))));
}

ScalarMatrix block_diagonal(const ScalarMatrix& a, const ScalarMatrix& b, const GaloisField& fq) {
  const int n = a.rows() + b.rows();
  ScalarMatrix r(n, n, Scalar::zero(fq));
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
  }
  for (int i = 0; i < b.rows(); ++i) {
    for (int j = 0; j < b.cols(); ++j) r(a.rows() + i, a.cols() + j) = b(i, j);
  }
  return r;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

int parse_int_field(const std::string& value, int line, const char* key) {
  int out = 0;
  const auto* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) throw ParseError(line, 1, std::string("'") + key + "' must be an integer");
  return out;
}

// Scalar twisted polynomial with entry (r, c) of every coefficient of p.
TwistedPoly entry(const TwistedPoly& p, int r, int c) {
  std::vector<Scalar> coeffs;
  for (const auto& a : p.coeffs()) coeffs.push_back(a(r, c));
  return TwistedPoly::from_scalars(p.constants(), coeffs);
}

TwistedPoly lift_poly(const TwistedPoly& p, const LocalField& field) {
  std::vector<ScalarMatrix> coeffs;
  for (const auto& a : p.coeffs()) {
    coeffs.push_back(a.map([&](const Scalar& s) -> Scalar {
      if (s.is_exact()) return s;
      return lift_to_extension(s.local(), field);
    }));
  }
  return TwistedPoly(p.constants(), p.dimension(), std::move(coeffs));
}

std::int64_t min_coefficient_valuation(const TwistedPoly& p, const LocalField& field) {
  std::int64_t v = kInfiniteValuation;
  for (const auto& a : p.coeffs()) {
    for (const auto& s : a.entries()) {
      if (!s.is_exact_zero()) v = std::min(v, s.valuation_in(field));
    }
  }
  return v;
}

bool elem_less(const LocalElem& a, const LocalElem& b) { return canonical_less(a, b); }

bool point_less(const LocalPoint& a, const LocalPoint& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), elem_less);
}

bool points_agree(const LocalPoint& a, const LocalPoint& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i].agrees_with(b[i])) return false;
  }
  return true;
}

std::int64_t ipow64(std::int64_t base, int exp) {
  std::int64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

struct TorsionSetup {
  TwistedPoly phi_a;
  std::vector<std::vector<TwistedPoly>> tri;
  int degree;
};

TorsionSetup setup_torsion(const TModule& m, const FqPoly& a) {
  if (a.is_zero()) fail(ErrorKind::kInvalidArgument, "every point is 0-torsion");
  const auto& fq = m.constants();
  const auto d = m.dphi(a);
  if (determinant(d, Scalar::zero(fq), Scalar::one(fq)).is_zero()) {
    fail(ErrorKind::kInseparable, "dphi(" + a.render() + ") is singular");
  }
  TorsionSetup s{m.phi(a), {}, 0};
  s.tri = triangular_form(s.phi_a);
  for (int i = 0; i < m.dimension(); ++i) {
    const auto& diag = s.tri[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
    if (diag.is_zero() || diag.scalar_coeff(0).is_zero()) {
      fail(ErrorKind::kInseparable, "phi(" + a.render() + ") has an inseparable diagonal entry");
    }
    s.degree += diag.degree();
  }
  return s;
}

std::vector<LocalPoint> points_in(const TorsionSetup& s, const LocalField& field, std::int64_t precision) {
  const int m = s.phi_a.dimension();
  const auto phi_a = lift_poly(s.phi_a, field);
  std::vector<std::vector<TwistedPoly>> tri;
  std::int64_t low = min_coefficient_valuation(phi_a, field);
  for (const auto& row : s.tri) {
    std::vector<TwistedPoly> lifted;
    for (const auto& p : row) {
      lifted.push_back(lift_poly(p, field));
      low = std::min(low, min_coefficient_valuation(lifted.back(), field));
    }
    tri.push_back(std::move(lifted));
  }
  const std::int64_t work = precision + std::max<std::int64_t>(0, -low) + kResidualMargin;

  std::vector<LocalPoint> partial{LocalPoint(static_cast<std::size_t>(m), LocalElem::zero(field, work))};
  for (int r = m - 1; r >= 0; --r) {
    const auto& diag = tri[static_cast<std::size_t>(r)][static_cast<std::size_t>(r)];
    std::vector<Scalar> coeffs;
    for (int i = 0; i <= diag.degree(); ++i) coeffs.push_back(diag.scalar_coeff(i));
    std::vector<LocalPoint> next;
    for (const auto& x : partial) {
      auto b = LocalElem::zero(field, work);
      for (int c = r + 1; c < m; ++c) {
        b = b - tri[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)].evaluate(x[static_cast<std::size_t>(c)]);
      }
      for (auto& root : solve_additive(coeffs, b.with_precision(work), work)) {
        LocalPoint y = x;
        y[static_cast<std::size_t>(r)] = std::move(root);
        next.push_back(std::move(y));
      }
    }
    partial = std::move(next);
  }

  for (const auto& x : partial) {
    const auto residual = min_valuation(phi_a.evaluate(x));
    if (residual < precision - kResidualMargin) {
      fail(ErrorKind::kLiftDivergence, "torsion point in " + field.describe() + " has residual valuation " +
                                           std::to_string(residual) + " below " + std::to_string(precision - kResidualMargin));
    }
  }
  std::sort(partial.begin(), partial.end(), point_less);
  partial.erase(std::unique(partial.begin(), partial.end(), points_agree), partial.end());
  return partial;
}

}  // namespace

TModule TModule::create(TwistedPoly phi_t, std::string label) {
  const auto& fq = phi_t.constants();
  const int m = phi_t.dimension();
  if (m < 1) fail(ErrorKind::kBadConstantTerm, "dimension must be positive");
  if (phi_t.degree() < 1) fail(ErrorKind::kBadConstantTerm, "phi_T must have positive tau-degree");
  const auto n = phi_t.coeff(0) - scalar_matrix(fq, m, Scalar::variable(fq));
  if (!is_nilpotent(n)) fail(ErrorKind::kNotNilpotent, "a0 - T*1 = " + render(n) + " is not nilpotent");
  const auto& top = phi_t.coeffs().back();
  const bool invertible = !determinant(top, Scalar::zero(fq), Scalar::one(fq)).is_zero();
  return TModule(std::move(phi_t), std::move(label), n, invertible);
}

TModule TModule::carlitz(int q) {
  return create(parse_twisted("T + t", GaloisField::of_size(q), 1), "carlitz(" + std::to_string(q) + ")");
}

TModule TModule::nilpotent_example(int q) {
  return create(parse_twisted("[[T, 1], [0, T]] + t", GaloisField::of_size(q), 2),
                "nilpotent(" + std::to_string(q) + ")");
}

TModule TModule::product(const TModule& a, const TModule& b) {
  if (&a.constants() != &b.constants()) fail(ErrorKind::kFlavorMismatch, "product of modules over different F_q");
  const auto& fq = a.constants();
  const int deg = std::max(a.phi_t().degree(), b.phi_t().degree());
  std::vector<ScalarMatrix> coeffs;
  for (int i = 0; i <= deg; ++i) coeffs.push_back(block_diagonal(a.phi_t().coeff(i), b.phi_t().coeff(i), fq));
  return create(TwistedPoly(fq, a.dimension() + b.dimension(), std::move(coeffs)), a.label() + " x " + b.label());
}

TModule TModule::power(const TModule& a, int k) {
  if (k < 1) fail(ErrorKind::kInvalidArgument, "power of a module needs k >= 1");
  TModule r = a;
  for (int i = 1; i < k; ++i) r = product(r, a);
  r.label_ = a.label() + "^" + std::to_string(k);
  return r;
}

TwistedPoly TModule::phi(const FqPoly& a) const {
  const auto& fq = constants();
  const int m = dimension();
  TwistedPoly r(fq, m);
  for (int i = a.degree(); i >= 0; --i) r = r * phi_t_ + constant_poly(fq, m, a.coeff(i));
  return r;
}

ScalarMatrix TModule::dphi(const FqPoly& a) const {
  const auto& fq = constants();
  const int m = dimension();
  const auto a0 = phi_t_.coeff(0);
  ScalarMatrix r = scalar_zero(fq, m);
  for (int i = a.degree(); i >= 0; --i) {
    r = r * a0 + scalar_matrix(fq, m, Scalar(RationalFn::constant(fq, a.coeff(i))));
  }
  return r;
}

LocalElem anderson_coleman_parameter(int q, std::int64_t precision) {
  const auto field = LocalField::laurent(q);
  const std::int64_t work = precision + kResidualMargin;
  try {
    // c^2 - T c + 1 = 0 times u = 1/T; the root near u has v(c) = 1.
    const auto f = AnalyticMap::parse(field, "u*c^2 - c + u", {}, {"c"}, work);
    const auto run = newton_solve(f, LocalPoint{LocalElem::uniformizer_power(field, 1, work)}, work);
    // One spare digit so that T*c, and with it c^2 - T c + 1, is known to `precision`.
    const auto c = run.root[0].with_precision(precision + 1);
    if (c.is_zero() || c.valuation() != 1) fail(ErrorKind::kNoSuchRoot, "lifted root does not have valuation 1");
    return c;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kNoSuchRoot) throw;
    fail(ErrorKind::kNoSuchRoot, std::string("cannot lift c: ") + e.what());
  }
}

TModule anderson_coleman_example(int q, std::int64_t precision) {
  const auto& fq = GaloisField::of_size(q);
  const auto c = anderson_coleman_parameter(q, precision);
  const auto one = LocalElem::one(c.field(), precision);
  const auto cq = c.frobenius(1);
  const auto cqq = c.frobenius(2);
  const Scalar zero = Scalar::zero(fq);
  ScalarMatrix a1(2, 2, {zero, Scalar(one - cq * c), Scalar(one - cq), zero});
  ScalarMatrix a2(2, 2, {Scalar(c * cq * cqq), zero, zero, Scalar(cq)});
  const auto a0 = scalar_matrix(fq, 2, Scalar::variable(fq));
  return TModule::create(TwistedPoly(fq, 2, {a0, a1, a2}), "anderson-coleman(" + std::to_string(q) + ")");
}

FqPoly parse_fq_poly(std::string_view text, const GaloisField& fq, int line) {
  const auto x = parse_qk(text, GlobalField::function_field(fq.size()), line);
  if (!x.fn().is_polynomial()) throw ParseError(line, 1, "expected a polynomial in T, got " + x.render());
  return x.fn().num();
}

TModule parse_tmodule(std::string_view text) {
  int m = 0;
  int q = 0;
  std::string phi;
  int phi_line = 0;
  int phi_column = 1;
  std::string label;
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
    if (key == "m") {
      m = parse_int_field(value, line, "m");
    } else if (key == "q") {
      q = parse_int_field(value, line, "q");
    } else if (key == "phi_T") {
      phi = value;
      phi_line = line;
      phi_column = static_cast<int>(raw.find_first_not_of(" \t", eq + 1)) + 1;
    } else if (key == "label") {
      label = value;
    } else {
      throw ParseError(line, 1, "unknown key '" + key + "'");
    }
  }
  if (m < 1) fail(ErrorKind::kInvalidArgument, "missing or invalid 'm'");
  if (q < 2) fail(ErrorKind::kInvalidArgument, "missing or invalid 'q'");
  if (phi.empty()) fail(ErrorKind::kInvalidArgument, "missing 'phi_T'");
  if (q > LocalField::kMaxQ) fail(ErrorKind::kInvalidArgument, "q = " + std::to_string(q) + " is too large");
  try {
    return TModule::create(parse_twisted(phi, GaloisField::of_size(q), m, phi_line), label);
  } catch (const ParseError& e) {
    throw ParseError(e.line(), e.column() + phi_column - 1, e.message());
  }
}

std::string render_tmodule(const TModule& m) {
  std::string out = "m = " + std::to_string(m.dimension()) + "\n";
  out += "q = " + std::to_string(m.q()) + "\n";
  out += "phi_T = " + m.phi_t().render() + "\n";
  if (!m.label().empty()) out += "label = " + m.label() + "\n";
  return out;
}

int j_invariant(const TModule& m) {
  const auto& fq = m.constants();
  const int p = fq.characteristic();
  const int dim = m.dimension();
  int bound = 1;
  while (bound < dim) bound *= p;
  const auto a0 = m.phi_t().coeff(0);
  for (int j = 1; j <= bound; j *= p) {
    const auto d = matrix_power(a0, static_cast<unsigned>(j), Scalar::zero(fq), Scalar::one(fq));
    const auto target = scalar_matrix(fq, dim, Scalar::variable(fq).pow(j));
    if ((d - target).is_zero()) return j;
  }
  fail(ErrorKind::kJSearchExhausted, "no j <= " + std::to_string(bound) + " makes dphi(T^j) scalar");
}

bool lie_invariant(const TModule& m, const std::vector<std::vector<Scalar>>& basis) {
  const auto& fq = m.constants();
  const int dim = m.dimension();
  const int k = static_cast<int>(basis.size());
  if (k == 0) return true;
  ScalarMatrix v(dim, k, Scalar::zero(fq));
  for (int j = 0; j < k; ++j) {
    if (static_cast<int>(basis[static_cast<std::size_t>(j)].size()) != dim) {
      fail(ErrorKind::kDimensionMismatch, "basis vector of the wrong length");
    }
    for (int i = 0; i < dim; ++i) v(i, j) = basis[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
  }
  const auto one = Scalar::one(fq);
  if (rank(v, one) < k) fail(ErrorKind::kDependentBasis, "basis vectors are linearly dependent");
  const auto image = m.dphi(FqPoly::variable(fq)) * v;
  ScalarMatrix both(dim, 2 * k, Scalar::zero(fq));
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < k; ++j) {
      both(i, j) = v(i, j);
      both(i, k + j) = image(i, j);
    }
  }
  return rank(both, one) == k;
}

std::vector<std::vector<TwistedPoly>> triangular_form(const TwistedPoly& p) {
  const int m = p.dimension();
  const auto& fq = p.constants();
  std::vector<std::vector<TwistedPoly>> e(static_cast<std::size_t>(m));
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < m; ++c) e[static_cast<std::size_t>(r)].push_back(entry(p, r, c));
  }
  auto at = [&](int r, int c) -> TwistedPoly& { return e[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]; };
  // row_r -= Q * row_s, with Q the leading quotient of at(r, col) by at(s, col).
  auto reduce_once = [&](int r, int s, int col) {
    const auto& a = at(s, col);
    const auto& b = at(r, col);
    const int shift = b.degree() - a.degree();
    std::vector<Scalar> qc(static_cast<std::size_t>(shift) + 1, Scalar::zero(fq));
    qc.back() = b.scalar_coeff(b.degree()) / a.scalar_coeff(a.degree()).frobenius(shift);
    const auto quotient = TwistedPoly::from_scalars(fq, qc);
    for (int c = 0; c < m; ++c) at(r, c) = at(r, c) - quotient * at(s, c);
  };
  long guard = 0;
  for (int col = 0; col < m; ++col) {
    while (true) {
      int pivot = -1;
      for (int r = col; r < m; ++r) {
        if (at(r, col).is_zero()) continue;
        if (pivot < 0 || at(r, col).degree() < at(pivot, col).degree()) pivot = r;
      }
      if (pivot < 0) fail(ErrorKind::kInseparable, "twisted matrix is singular");
      std::swap(e[static_cast<std::size_t>(col)], e[static_cast<std::size_t>(pivot)]);
      bool clear = true;
      for (int r = col + 1; r < m; ++r) {
        while (!at(r, col).is_zero() && at(r, col).degree() >= at(col, col).degree()) {
          if (++guard > 100000) fail(ErrorKind::kPrecisionExhausted, "triangular reduction does not terminate");
          reduce_once(r, col, col);
        }
        if (!at(r, col).is_zero()) clear = false;
      }
      if (clear) break;
    }
  }
  return e;
}

int torsion_degree(const TModule& m, const FqPoly& a) { return setup_torsion(m, a).degree; }

BigInt torsion_count(const TModule& m, const FqPoly& a) {
  return boost::multiprecision::pow(BigInt(m.q()), static_cast<unsigned>(torsion_degree(m, a)));
}

TorsionResult torsion_points(const TModule& m, const FqPoly& a, std::int64_t precision, ExtensionBudget budget) {
  const auto setup = setup_torsion(m, a);
  const BigInt expected = boost::multiprecision::pow(BigInt(m.q()), static_cast<unsigned>(setup.degree));
  const int p = m.constants().characteristic();
  std::optional<TorsionResult> best;
  for (int e = 1; e <= budget.e_max; ++e) {
    if (std::gcd(e, p) != 1) continue;
    for (int f = 1; f <= budget.f_max; ++f) {
      const auto field = LocalField::laurent(m.q(), e, f);
      auto points = points_in(setup, field, precision * e);
      const bool complete = BigInt(points.size()) == expected;
      if (!best || points.size() > best->points.size()) best = TorsionResult{field, std::move(points), expected, complete};
      if (complete) return *best;
    }
  }
  if (!best) fail(ErrorKind::kExtensionBudgetExceeded, "empty extension budget");
  return *best;
}

SubvarietyCount torsion_in_subvariety(const TModule& m, const std::vector<MPoly<QkElem>>& x, const FqPoly& a,
                                      std::int64_t precision, ExtensionBudget budget) {
  if (x.empty()) fail(ErrorKind::kInvalidArgument, "a subvariety needs at least one polynomial");
  for (const auto& poly : x) {
    if (poly.nvars() != m.dimension()) fail(ErrorKind::kDimensionMismatch, "subvariety polynomial in the wrong number of variables");
    if (poly.is_zero()) fail(ErrorKind::kInvalidArgument, "subvariety polynomials must be nonzero");
  }
  const auto torsion = torsion_points(m, a, precision, budget);
  const std::int64_t scaled = precision * torsion.field.ramification();
  SubvarietyCount out{0, torsion.complete, torsion.field};
  for (const auto& pt : torsion.points) {
    const bool on = std::all_of(x.begin(), x.end(), [&](const MPoly<QkElem>& poly) {
      return poly.evaluate(pt, torsion.field, scaled).valuation_bound() >= scaled - kResidualMargin;
    });
    if (on) ++out.count;
  }
  return out;
}

std::vector<LocalElem> solve_additive(const std::vector<Scalar>& coeffs, const LocalElem& b, std::int64_t precision,
                                      long node_budget) {
  const LocalField& field = b.field();
  int d = static_cast<int>(coeffs.size()) - 1;
  while (d > 0 && coeffs[static_cast<std::size_t>(d)].is_zero()) --d;
  if (d < 0 || coeffs[0].is_zero()) fail(ErrorKind::kInseparable, "additive polynomial without a linear term");
  const Scalar inv0 = coeffs[0].inverse();
  const LocalElem target = (Scalar(b) * inv0).local().with_precision(precision);
  if (d == 0) return {target};

  const std::int64_t q = field.q();
  std::vector<std::int64_t> qpow(static_cast<std::size_t>(d) + 1);
  for (int i = 0; i <= d; ++i) qpow[static_cast<std::size_t>(i)] = ipow64(q, i);
  std::vector<Scalar> ratio(static_cast<std::size_t>(d) + 1, Scalar::zero(coeffs[0].constants()));
  std::vector<std::int64_t> vb(static_cast<std::size_t>(d) + 1, kInfiniteValuation);
  vb[0] = 0;
  for (int i = 1; i <= d; ++i) {
    ratio[static_cast<std::size_t>(i)] = coeffs[static_cast<std::size_t>(i)] * inv0;
    if (!ratio[static_cast<std::size_t>(i)].is_zero()) vb[static_cast<std::size_t>(i)] = ratio[static_cast<std::size_t>(i)].valuation_in(field);
  }
  // Below every crossing with the top term, the top term dominates: no roots there.
  const std::int64_t vtop = vb[static_cast<std::size_t>(d)];
  std::int64_t start = kInfiniteValuation;
  for (int i = 0; i < d; ++i) {
    if (vb[static_cast<std::size_t>(i)] == kInfiniteValuation) continue;
    start = std::min(start, ceil_div(vb[static_cast<std::size_t>(i)] - vtop, qpow[static_cast<std::size_t>(d)] - qpow[static_cast<std::size_t>(i)]));
  }
  if (!target.is_zero()) start = std::min(start, ceil_div(target.valuation() - vtop, qpow[static_cast<std::size_t>(d)]));
  // Beyond `unique`, x dominates every other term and the remaining digits are forced.
  std::int64_t unique = std::numeric_limits<std::int64_t>::min();
  for (int i = 1; i <= d; ++i) {
    if (vb[static_cast<std::size_t>(i)] == kInfiniteValuation) continue;
    unique = std::max(unique, floor_div(-vb[static_cast<std::size_t>(i)], qpow[static_cast<std::size_t>(i)] - 1) + 1);
  }
  start = std::min(start, precision);

  std::int64_t low_vb = 0;
  std::vector<LocalElem> local(static_cast<std::size_t>(d) + 1, LocalElem::zero(field, precision));
  for (int i = 1; i <= d; ++i) {
    const auto& r = ratio[static_cast<std::size_t>(i)];
    if (r.is_zero()) continue;
    low_vb = std::min(low_vb, vb[static_cast<std::size_t>(i)]);
    local[static_cast<std::size_t>(i)] = r.to_local(field, precision - qpow[static_cast<std::size_t>(i)] * std::min<std::int64_t>(start, 0));
  }
  const std::int64_t pad = precision - low_vb;

  auto apply = [&](const LocalElem& x) {
    LocalElem acc = x.with_precision(precision);
    LocalElem power = x;
    for (int i = 1; i <= d; ++i) {
      power = power.frobenius(1);
      if (vb[static_cast<std::size_t>(i)] == kInfiniteValuation) continue;
      acc = acc + local[static_cast<std::size_t>(i)] * power;
    }
    return acc.with_precision(precision);
  };
  auto image_bound = [&](std::int64_t s) {
    std::int64_t n = s;
    for (int i = 1; i <= d; ++i) {
      if (vb[static_cast<std::size_t>(i)] == kInfiniteValuation) continue;
      n = std::min(n, vb[static_cast<std::size_t>(i)] + qpow[static_cast<std::size_t>(i)] * s);
    }
    return std::min(n, precision);
  };

  std::vector<LocalElem> roots;
  std::vector<LocalElem::Digit> digits;
  const int residue = field.residue().size();
  long nodes = 0;
  auto search = [&](auto&& self, std::int64_t s) -> void {
    if (++nodes > node_budget) fail(ErrorKind::kExtensionBudgetExceeded, "additive root search exceeded its node budget");
    const auto x0 = digits.empty() ? LocalElem::zero(field, pad) : LocalElem::from_digits(field, start, digits, pad);
    const auto r = apply(x0) - target;
    if (r.valuation_bound() < image_bound(s)) return;
    if (s >= unique || s >= precision) {
      // x0 + y with y = -r - sum B_i y^(q^i), a contraction on v(y) >= s.
      auto y = (-r).with_precision(precision);
      for (std::int64_t it = 0; it <= precision - s + 1; ++it) {
        const auto next = (apply(y) - y + r).with_precision(precision);
        const auto candidate = (-next).with_precision(precision);
        if (candidate.agrees_with(y)) break;
        y = candidate;
      }
      roots.push_back((x0 + y).with_precision(precision));
      return;
    }
    for (int dgt = 0; dgt < residue; ++dgt) {
      digits.push_back(static_cast<LocalElem::Digit>(dgt));
      self(self, s + 1);
      digits.pop_back();
    }
  };
  search(search, start);
  std::sort(roots.begin(), roots.end(), elem_less);
  return roots;
}

}  // namespace ffarith
