#pragma once

#include <random>
#include <vector>

#include "ffarith/localfield/global.hpp"
#include "ffarith/localfield/local_field.hpp"

namespace ffarith::testing {

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240917);
  return gen;
}

inline int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng()); }

/// Random element with valuation in [vlo, vhi] and absolute precision `prec`
/// (or zero at that precision, with probability 1/16).
inline LocalElem random_elem(const LocalField& f, int vlo, int vhi, std::int64_t prec) {
  if (uniform(0, 15) == 0) return LocalElem::zero(f, prec);
  const int v = uniform(vlo, vhi);
  if (v >= prec) return LocalElem::zero(f, prec);
  const int size = f.residue().size();
  std::vector<LocalElem::Digit> d(static_cast<std::size_t>(prec - v));
  for (auto& x : d) x = static_cast<LocalElem::Digit>(uniform(0, size - 1));
  d[0] = static_cast<LocalElem::Digit>(uniform(1, size - 1));
  return LocalElem::from_digits(f, v, std::move(d), prec);
}

inline FqPoly random_poly(const GaloisField& f, int max_degree) {
  std::vector<GaloisField::Elem> c(static_cast<std::size_t>(uniform(0, max_degree) + 1));
  for (auto& x : c) x = static_cast<GaloisField::Elem>(uniform(0, f.size() - 1));
  return FqPoly(f, std::move(c));
}

inline FqPoly random_nonzero_poly(const GaloisField& f, int max_degree) {
  for (;;) {
    FqPoly a = random_poly(f, max_degree);
    if (!a.is_zero()) return a;
  }
}

inline RationalFn random_fn(const GaloisField& f, int max_degree) {
  return RationalFn(random_poly(f, max_degree), random_nonzero_poly(f, max_degree));
}

}  // namespace ffarith::testing
