#include "ffarith/expmap/expmap.hpp"

#include <algorithm>
#include <string>

namespace ffarith {

namespace {

void check_truncation(int n) {
  if (n < 0) fail(ErrorKind::kInvalidArgument, "truncation must be non-negative, got " + std::to_string(n));
}

// X with X*b - a*X = r, as an m^2 x m^2 system in the entries of X.
ScalarMatrix solve_sylvester(const ScalarMatrix& a, const ScalarMatrix& b, const ScalarMatrix& r,
                             const GaloisField& fq, int n) {
  const int m = a.rows();
  const int mm = m * m;
  const Scalar zero = Scalar::zero(fq);
  const Scalar one = Scalar::one(fq);
  ScalarMatrix sys(mm, mm, zero);
  ScalarMatrix rhs(mm, 1, zero);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const int row = i * m + j;
      rhs(row, 0) = r(i, j);
      for (int k = 0; k < m; ++k) {
        if (!b(k, j).is_exact_zero()) sys(row, i * m + k) += b(k, j);
        if (!a(i, k).is_exact_zero()) sys(row, k * m + j) -= a(i, k);
      }
    }
  }
  auto x = solve(sys, rhs, one);
  if (!x) fail(ErrorKind::kSylvesterSingular, "no unique exponential coefficient at n = " + std::to_string(n));
  ScalarMatrix out(m, m, zero);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) out(i, j) = (*x)(i * m + j, 0);
  }
  return out;
}

// Matrix times point; exact zero entries contribute nothing.
LocalPoint act(const ScalarMatrix& a, std::span<const LocalElem> z) {
  constexpr std::int64_t kUnbounded = std::int64_t{1} << 40;
  const LocalField field = z[0].field();
  LocalPoint out(static_cast<std::size_t>(a.rows()), LocalElem::zero(field, kUnbounded));
  for (int r = 0; r < a.rows(); ++r) {
    for (int c = 0; c < a.cols(); ++c) {
      const Scalar& s = a(r, c);
      if (s.is_exact_zero()) continue;
      out[static_cast<std::size_t>(r)] =
          out[static_cast<std::size_t>(r)] + (s * Scalar(z[static_cast<std::size_t>(c)])).local();
    }
  }
  return out;
}

std::int64_t coefficient_valuation(const ScalarMatrix& c, const LocalField& field) {
  std::int64_t v = kInfiniteValuation;
  for (const auto& x : c.entries()) {
    if (!x.is_exact_zero()) v = std::min(v, x.valuation_in(field));
  }
  return v;
}

// Significant digits kept in every power so that each term's valuation is known.
constexpr std::int64_t kTermDigits = 8;

// Terms c_i z^(q^i), each correct to `precision`. The powers are truncated to
// what the remaining coefficients need, so Frobenius does not blow them up.
std::vector<LocalPoint> terms(const std::vector<ScalarMatrix>& coeffs, std::span<const LocalElem> z,
                              std::int64_t precision) {
  if (coeffs.empty()) fail(ErrorKind::kInvalidArgument, "empty series");
  if (static_cast<int>(z.size()) != coeffs[0].rows()) {
    fail(ErrorKind::kDimensionMismatch, "point of dimension " + std::to_string(z.size()) + " for a series of dimension " +
                                            std::to_string(coeffs[0].rows()));
  }
  const LocalField field = z[0].field();
  const std::int64_t q = field.q();
  std::vector<std::int64_t> need(coeffs.size(), 0);
  for (std::size_t k = coeffs.size(); k-- > 0;) {
    const auto v = coefficient_valuation(coeffs[k], field);
    std::int64_t n = v == kInfiniteValuation ? 0 : precision - v;
    if (k + 1 < coeffs.size()) n = std::max(n, (need[k + 1] + q - 1) / q);
    need[k] = std::max<std::int64_t>(n, 1);
  }
  std::vector<LocalPoint> out;
  LocalPoint power(z.begin(), z.end());
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (i > 0) {
      for (auto& y : power) y = y.frobenius(1);
    }
    // Zero coordinates stay untruncated: their bound is all they say about the term.
    for (auto& y : power) {
      if (y.is_zero()) continue;
      const auto keep = std::max(need[i], y.valuation_bound() + kTermDigits);
      if (y.precision() > keep) y = y.with_precision(keep);
    }
    out.push_back(act(coeffs[i], power));
  }
  return out;
}

bool all_zero(std::span<const LocalElem> z) {
  return std::all_of(z.begin(), z.end(), [](const LocalElem& x) { return x.is_zero(); });
}

LocalPoint sum_series(const std::vector<ScalarMatrix>& coeffs, std::span<const LocalElem> z, std::int64_t precision) {
  const auto ts = terms(coeffs, z, precision);
  LocalPoint out = ts[0];
  for (std::size_t i = 1; i < ts.size(); ++i) {
    for (std::size_t r = 0; r < out.size(); ++r) out[r] = out[r] + ts[i][r];
  }
  if (!all_zero(z)) {
    const int n = static_cast<int>(ts.size()) - 1;
    if (n < 2) fail(ErrorKind::kExpDivergence, "at least three terms are needed to test convergence");
    const auto v2 = min_valuation(ts[static_cast<std::size_t>(n - 2)]);
    const auto v1 = min_valuation(ts[static_cast<std::size_t>(n - 1)]);
    const auto v0 = min_valuation(ts[static_cast<std::size_t>(n)]);
    // The last two terms already vanish to the target precision.
    if (v1 >= precision && v0 >= precision) {
      for (auto& x : out) {
        if (x.precision() > precision) x = x.with_precision(precision);
      }
      return out;
    }
    if (!(v2 < v1 && v1 < v0)) {
      fail(ErrorKind::kExpDivergence, "term valuations " + std::to_string(v2) + ", " + std::to_string(v1) + ", " +
                                          std::to_string(v0) + " are not increasing");
    }
    const auto tail = 2 * v0 - v1;
    if (tail < precision) {
      fail(ErrorKind::kTruncationInsufficient,
           "tail estimate " + std::to_string(tail) + " below precision " + std::to_string(precision));
    }
  }
  for (auto& x : out) {
    if (x.precision() > precision) x = x.with_precision(precision);
  }
  return out;
}

}  // namespace

ExpSeries exp_coeffs(const TModule& m, int truncation) {
  check_truncation(truncation);
  const auto& fq = m.constants();
  const auto& phi = m.phi_t();
  const int dim = m.dimension();
  const ScalarMatrix a0 = phi.coeff(0);
  const bool diagonal = m.nilpotent_part().is_zero();
  const Scalar t = Scalar::variable(fq);

  ExpSeries out{m, {identity_matrix(fq, dim)}};
  for (int n = 1; n <= truncation; ++n) {
    ScalarMatrix r = zero_matrix(fq, dim);
    for (int j = 1; j <= std::min(n, phi.degree()); ++j) {
      r = r + phi.coeff(j) * frobenius(out.coeffs[static_cast<std::size_t>(n - j)], j);
    }
    if (diagonal) {
      out.coeffs.push_back((t.frobenius(n) - t).inverse() * r);
    } else {
      out.coeffs.push_back(solve_sylvester(a0, frobenius(a0, n), r, fq, n));
    }
  }
  return out;
}

LogSeries log_coeffs(const ExpSeries& e, int truncation) {
  check_truncation(truncation);
  if (truncation > e.truncation()) {
    fail(ErrorKind::kInvalidArgument, "logarithm truncation " + std::to_string(truncation) +
                                          " exceeds the exponential truncation " + std::to_string(e.truncation()));
  }
  const auto& fq = e.module.constants();
  const int dim = e.module.dimension();
  LogSeries out{{identity_matrix(fq, dim)}};
  for (int n = 1; n <= truncation; ++n) {
    ScalarMatrix acc = zero_matrix(fq, dim);
    for (int i = 1; i <= n; ++i) {
      acc = acc + e.coeffs[static_cast<std::size_t>(i)] * frobenius(out.coeffs[static_cast<std::size_t>(n - i)], i);
    }
    out.coeffs.push_back(-acc);
  }
  return out;
}

LocalPoint exp_eval(const ExpSeries& e, std::span<const LocalElem> z, std::int64_t precision) {
  return sum_series(e.coeffs, z, precision);
}

LocalPoint log_eval(const LogSeries& l, std::span<const LocalElem> w, std::int64_t precision) {
  return sum_series(l.coeffs, w, precision);
}

std::vector<std::int64_t> term_valuations(const std::vector<ScalarMatrix>& coeffs, std::span<const LocalElem> z) {
  std::vector<std::int64_t> out;
  for (const auto& t : terms(coeffs, z, 0)) out.push_back(all_zero(t) ? kInfiniteValuation : min_valuation(t));
  return out;
}

std::int64_t verify_functional_equation(const TModule& m, const ExpSeries& e, const FqPoly& a,
                                        std::span<const LocalElem> z, std::int64_t precision) {
  if (static_cast<int>(z.size()) != m.dimension()) {
    fail(ErrorKind::kDimensionMismatch, "point of dimension " + std::to_string(z.size()));
  }
  if (a.is_constant()) return kInfiniteValuation;
  const LocalField field = z[0].field();
  const TwistedPoly phi_a = m.phi(a);
  // Negative coefficient valuations of phi(a) cost digits; evaluate e with that much slack.
  std::int64_t slack = 0;
  for (const auto& c : phi_a.coeffs()) {
    for (const auto& x : c.entries()) {
      if (!x.is_exact_zero()) slack = std::max(slack, -x.valuation_in(field));
    }
  }
  const std::int64_t work = precision + slack;
  const LocalPoint lhs = phi_a.evaluate(exp_eval(e, z, work));
  const LocalPoint scaled = act(m.dphi(a), z);
  const LocalPoint rhs = exp_eval(e, scaled, work);
  LocalPoint diff;
  for (std::size_t i = 0; i < lhs.size(); ++i) diff.push_back(lhs[i] - rhs[i]);
  return min_valuation(diff);
}

namespace {

void check_lattice(const LatticeQuotientSpec& spec, const FqPoly& a) {
  if (spec.d < 1 || spec.free_dim < 0) {
    fail(ErrorKind::kInvalidArgument,
         "lattice rank " + std::to_string(spec.d) + " and free dimension " + std::to_string(spec.free_dim));
  }
  if (a.is_constant()) fail(ErrorKind::kConstantPolynomial, "a must be non-constant");
}

BigInt power(BigInt base, int exp) {
  BigInt out = 1;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

}  // namespace

BigInt lattice_quotient_count(const LatticeQuotientSpec& spec, const FqPoly& a) {
  check_lattice(spec, a);
  return power(a.field().size(), spec.d * a.degree());
}

BigInt lattice_quotient_enumerate(const LatticeQuotientSpec& spec, const FqPoly& a) {
  check_lattice(spec, a);
  BigInt per_coordinate = 0;
  for (const auto& beta : monic_divisors(a)) {
    for (const auto& alpha : all_polys_below_degree(a.field(), beta.degree())) {
      if (gcd(alpha, beta).degree() == 0) per_coordinate += 1;
    }
  }
  return power(per_coordinate, spec.d);
}

BigInt bounded_height_count(const LatticeQuotientSpec& spec, const FqPoly& a) {
  check_lattice(spec, a);
  // Reduced alpha / beta with beta monic of degree n >= 1: q^(2n) - q^(2n-1).
  const BigInt q = a.field().size();
  BigInt per_coordinate = 1;
  for (int n = 1; n <= a.degree(); ++n) per_coordinate += power(q, 2 * n) - power(q, 2 * n - 1);
  return power(per_coordinate, spec.d);
}

bool check_torsion_lattice_bijection(const TModule& m, const FqPoly& a, int d) {
  const LatticeQuotientSpec spec{d, 0};
  check_lattice(spec, a);
  const auto& fq = m.constants();
  if (!(m.dphi(a) == scalar_matrix(fq, m.dimension(), Scalar(RationalFn(a))))) {
    fail(ErrorKind::kHypothesisFailed, "dphi(" + a.render() + ") is not scalar multiplication");
  }
  const BigInt lattice = lattice_quotient_count(spec, a);
  return torsion_count(m, a) == lattice && lattice <= bounded_height_count(spec, a);
}

}  // namespace ffarith
