#include "ffarith/localfield/scalar.hpp"

#include <limits>

#include "ffarith/error.hpp"

namespace ffarith {

Scalar::Scalar(LocalElem x) : v_(std::move(x)) {
  if (!local().field().is_laurent()) fail(ErrorKind::kFlavorMismatch, "twisted coefficients must lie in a Laurent field");
}

const GaloisField& Scalar::constants() const {
  if (is_exact()) return exact().field();
  return local().field().base();
}

std::optional<LocalField> Scalar::local_field() const {
  if (is_exact()) return std::nullopt;
  return local().field();
}

bool Scalar::is_zero() const noexcept { return is_exact() ? exact().is_zero() : local().is_zero(); }

bool Scalar::is_one() const noexcept {
  return is_exact() && exact().is_polynomial() && exact().num().degree() == 0 && exact().num().coeff(0) == 1;
}

Scalar Scalar::operator-() const {
  if (is_exact()) return -exact();
  return -local();
}

namespace {

LocalElem embed_for_product(const RationalFn& exact, const LocalElem& other) {
  const auto& f = other.field();
  const std::int64_t va = exact_valuation(exact, f);
  return embed(exact, f, other.precision() + va - other.valuation_bound());
}

}  // namespace

Scalar operator+(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) return a.exact() + b.exact();
  if (a.is_exact_zero()) return b;
  if (b.is_exact_zero()) return a;
  if (a.is_exact()) return embed(a.exact(), b.local().field(), b.local().precision()) + b.local();
  if (b.is_exact()) return a.local() + embed(b.exact(), a.local().field(), a.local().precision());
  return a.local() + b.local();
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) return a.exact() * b.exact();
  if (a.is_exact_zero() || b.is_exact_zero()) return Scalar::zero(a.constants());
  if (a.is_exact()) {
    if (b.local().is_zero()) return LocalElem::zero(b.local().field(), b.local().precision() + exact_valuation(a.exact(), b.local().field()));
    return embed_for_product(a.exact(), b.local()) * b.local();
  }
  if (b.is_exact()) {
    if (a.local().is_zero()) return LocalElem::zero(a.local().field(), a.local().precision() + exact_valuation(b.exact(), a.local().field()));
    return a.local() * embed_for_product(b.exact(), a.local());
  }
  return a.local() * b.local();
}

Scalar Scalar::inverse() const {
  if (is_exact()) return exact().inverse();
  return local().inverse();
}

Scalar Scalar::pow(int n) const {
  if (is_exact()) return exact().pow(n);
  if (n < 0) return inverse().pow(-n);
  if (n == 0) return one(constants());
  std::optional<LocalElem> r;
  LocalElem b = local();
  while (n > 0) {
    if (n & 1) r = r ? *r * b : b;
    n >>= 1;
    if (n > 0) b = b * b;
  }
  return *r;
}

Scalar Scalar::frobenius(int j) const {
  if (is_exact()) return exact().frobenius(j);
  return local().frobenius(j);
}

LocalElem Scalar::to_local(const LocalField& field, std::int64_t precision) const {
  if (is_exact()) return embed(exact(), field, precision);
  if (!(local().field() == field)) fail(ErrorKind::kFlavorMismatch, local().field().describe() + " vs " + field.describe());
  return local().with_precision(precision);
}

std::int64_t Scalar::valuation_in(const LocalField& field) const {
  if (is_exact()) return exact_valuation(exact(), field);
  return local().valuation_bound();
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.is_exact() != b.is_exact()) return false;
  if (a.is_exact()) return a.exact() == b.exact();
  return a.local() == b.local();
}

std::string Scalar::render() const { return is_exact() ? exact().render() : local().render(); }

std::int64_t pivot_weight(const Scalar& x) {
  if (x.is_exact()) return std::numeric_limits<std::int64_t>::min();
  return x.local().valuation_bound();
}

std::int64_t pivot_weight(const LocalElem& x) { return x.valuation_bound(); }

}  // namespace ffarith
