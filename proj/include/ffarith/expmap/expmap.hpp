#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ffarith/tmodule/tmodule.hpp"

namespace ffarith {

/// Truncated exponential e(z) = sum_{n <= N} e_n z^(q^n) of a T-module,
/// normalized by e_0 = 1_m and determined by phi_T(e(z)) = e(a0 z).
struct ExpSeries {
  TModule module;
  std::vector<ScalarMatrix> coeffs;

  int truncation() const noexcept { return static_cast<int>(coeffs.size()) - 1; }
};

/// Compositional inverse of an exponential, l_0 = 1_m.
struct LogSeries {
  std::vector<ScalarMatrix> coeffs;

  int truncation() const noexcept { return static_cast<int>(coeffs.size()) - 1; }
};

/// Solves e_n a0^(q^n) - a0 e_n = sum_{j >= 1} a_j e_{n-j}^(q^j) for n <= N.
/// Throws SylvesterSingular if some step has no unique solution.
ExpSeries exp_coeffs(const TModule& m, int truncation);

/// Compositional inverse modulo tau^(N+1); needs N <= E.truncation().
LogSeries log_coeffs(const ExpSeries& e, int truncation);

/// Sum of the coefficient series at z to absolute precision `precision`.
/// Throws ExpDivergence unless the last three term valuations strictly
/// increase, and TruncationInsufficient when the estimated tail
/// 2 v_N - v_{N-1} falls below `precision`.
LocalPoint exp_eval(const ExpSeries& e, std::span<const LocalElem> z, std::int64_t precision);
LocalPoint log_eval(const LogSeries& l, std::span<const LocalElem> w, std::int64_t precision);

/// Valuations v(c_i z^(q^i)) of the individual terms (kInfiniteValuation for zero terms).
std::vector<std::int64_t> term_valuations(const std::vector<ScalarMatrix>& coeffs, std::span<const LocalElem> z);

/// v(phi(a)(e(z)) - e(dphi(a) z)); kInfiniteValuation for constant a, where
/// both sides are a e(z) by F_q-linearity.
std::int64_t verify_functional_equation(const TModule& m, const ExpSeries& e, const FqPoly& a,
                                        std::span<const LocalElem> z, std::int64_t precision);

/// Shape of a period lattice: rank d and the dimension of the free summand.
struct LatticeQuotientSpec {
  int d = 1;
  int free_dim = 0;
};

/// Number of tuples (alpha_i / beta_i) in (k/A)^d with lcm(beta_i) | a, in
/// lowest terms with deg alpha_i < deg beta_i: q^(d deg a).
/// Throws ConstantPolynomial.
BigInt lattice_quotient_count(const LatticeQuotientSpec& spec, const FqPoly& a);
/// The same count by enumerating monic divisors and their coprime residues.
BigInt lattice_quotient_enumerate(const LatticeQuotientSpec& spec, const FqPoly& a);
/// Number of points of (k/A)^d of height at most |a|, i.e. with every
/// denominator of degree at most deg a.
BigInt bounded_height_count(const LatticeQuotientSpec& spec, const FqPoly& a);

/// torsion_count(m, a) == lattice_quotient_count(d, a), together with
/// lattice_quotient_count(d, a) <= bounded_height_count(d, a).
/// Throws HypothesisFailed unless dphi(a) = a 1_m.
bool check_torsion_lattice_bijection(const TModule& m, const FqPoly& a, int d);

}  // namespace ffarith
