#include "ffarith/localfield/global.hpp"

#include <algorithm>

#include "ffarith/error.hpp"

namespace ffarith {

GlobalField GlobalField::function_field(int q) {
  GlobalField k;
  k.fq_ = &GaloisField::of_size(q);
  return k;
}

GlobalField GlobalField::rationals() { return GlobalField{}; }

GlobalField GlobalField::of(const LocalField& local) {
  if (local.is_laurent()) return function_field(local.q());
  return rationals();
}

const GaloisField& GlobalField::constants() const {
  if (fq_ == nullptr) fail(ErrorKind::kFlavorMismatch, "Q has no finite constant field");
  return *fq_;
}

int GlobalField::q() const { return fq_ == nullptr ? 0 : fq_->size(); }

QkElem QkElem::zero(const GlobalField& k) { return from_int(k, 0); }
QkElem QkElem::one(const GlobalField& k) { return from_int(k, 1); }

QkElem QkElem::from_int(const GlobalField& k, long long n) {
  if (k.is_function_field()) return RationalFn::constant(k.constants(), k.constants().from_int(n));
  return Rational(n);
}

GlobalField QkElem::field() const {
  if (is_function_field()) return GlobalField::function_field(fn().field().size());
  return GlobalField::rationals();
}

bool QkElem::is_zero() const { return is_function_field() ? fn().is_zero() : rat() == 0; }

namespace {

void check_same(const QkElem& a, const QkElem& b) {
  if (a.is_function_field() != b.is_function_field()) fail(ErrorKind::kFlavorMismatch, "F_q(T) element mixed with Q element");
  if (a.is_function_field() && &a.fn().field() != &b.fn().field()) {
    fail(ErrorKind::kFlavorMismatch, "elements of F_q(T) for different q");
  }
}

}  // namespace

QkElem QkElem::operator-() const {
  if (is_function_field()) return -fn();
  return Rational(-rat());
}

QkElem operator+(const QkElem& a, const QkElem& b) {
  check_same(a, b);
  if (a.is_function_field()) return a.fn() + b.fn();
  return Rational(a.rat() + b.rat());
}

QkElem operator-(const QkElem& a, const QkElem& b) {
  check_same(a, b);
  if (a.is_function_field()) return a.fn() - b.fn();
  return Rational(a.rat() - b.rat());
}

QkElem operator*(const QkElem& a, const QkElem& b) {
  check_same(a, b);
  if (a.is_function_field()) return a.fn() * b.fn();
  return Rational(a.rat() * b.rat());
}

QkElem operator/(const QkElem& a, const QkElem& b) { return a * b.inverse(); }

QkElem QkElem::inverse() const {
  if (is_zero()) fail(ErrorKind::kInvalidArgument, "inverse of zero");
  if (is_function_field()) return fn().inverse();
  return Rational(1 / rat());
}

QkElem QkElem::pow(int n) const {
  if (is_function_field()) return fn().pow(n);
  if (n < 0) return inverse().pow(-n);
  Rational r = 1;
  for (int i = 0; i < n; ++i) r *= rat();
  return r;
}

bool operator==(const QkElem& a, const QkElem& b) {
  if (a.is_function_field() != b.is_function_field()) return false;
  if (a.is_function_field()) return a.fn() == b.fn();
  return a.rat() == b.rat();
}

std::strong_ordering operator<=>(const QkElem& a, const QkElem& b) {
  check_same(a, b);
  if (a.is_function_field()) return a.fn() <=> b.fn();
  const BigInt da = denominator(a.rat());
  const BigInt db = denominator(b.rat());
  if (da != db) return da < db ? std::strong_ordering::less : std::strong_ordering::greater;
  const BigInt na = numerator(a.rat());
  const BigInt nb = numerator(b.rat());
  if (na == nb) return std::strong_ordering::equal;
  return na < nb ? std::strong_ordering::less : std::strong_ordering::greater;
}

BigInt QkElem::size() const {
  if (is_function_field()) {
    const int d = std::max(fn().num().degree(), fn().den().degree());
    return ipow(fn().field().size(), std::max(d, 0));
  }
  BigInt n = abs(numerator(rat()));
  BigInt d = denominator(rat());
  return std::max(n, d);
}

std::string render(const Rational& x) {
  if (denominator(x) == 1) return numerator(x).str();
  return numerator(x).str() + "/" + denominator(x).str();
}

std::string QkElem::render() const {
  if (is_function_field()) return fn().render();
  return ffarith::render(rat());
}

Height height(std::span<const QkElem> z) {
  Height h{1};
  for (const auto& c : z) h.value = std::max(h.value, c.size());
  return h;
}

Height height(const QkElem& z) { return height(std::span<const QkElem>(&z, 1)); }

std::int64_t padic_valuation(BigInt n, int p) {
  if (n == 0) return kInfiniteValuation;
  std::int64_t v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

namespace {

// a(T) as an exact Laurent element at the given absolute precision.
LocalElem embed_poly(const FqPoly& a, const LocalField& field, std::int64_t precision) {
  const int e = field.ramification();
  const auto& res = field.residue();
  const auto& base = a.field();
  const int d = a.degree();
  std::vector<LocalElem::Digit> digits(static_cast<std::size_t>(e) * static_cast<std::size_t>(d) + 1, 0);
  for (int i = 0; i <= d; ++i) {
    const auto c = a.coeff(i);
    if (c == 0) continue;
    digits[static_cast<std::size_t>(e) * static_cast<std::size_t>(d - i)] = res.embed_from(base, c);
  }
  return LocalElem::from_digits(field, -static_cast<std::int64_t>(e) * d, std::move(digits), precision);
}

}  // namespace

std::int64_t exact_valuation(const RationalFn& x, const LocalField& field) {
  if (x.is_zero()) return kInfiniteValuation;
  return static_cast<std::int64_t>(field.ramification()) * x.valuation_at_infinity();
}

std::int64_t exact_valuation(const QkElem& x, const LocalField& field) {
  if (x.is_function_field()) return exact_valuation(x.fn(), field);
  if (x.is_zero()) return kInfiniteValuation;
  return padic_valuation(numerator(x.rat()), field.characteristic()) -
         padic_valuation(denominator(x.rat()), field.characteristic());
}

LocalElem embed(const RationalFn& x, const LocalField& field, std::int64_t precision) {
  if (!field.is_laurent()) fail(ErrorKind::kFlavorMismatch, "cannot embed F_q(T) into " + field.describe());
  if (&x.field() != &field.base()) {
    fail(ErrorKind::kFlavorMismatch, "F_" + std::to_string(x.field().size()) + "(T) does not embed in " + field.describe());
  }
  if (x.is_zero()) return LocalElem::zero(field, precision);
  if (x.is_polynomial()) return embed_poly(x.num(), field, precision);
  const std::int64_t e = field.ramification();
  const std::int64_t v = exact_valuation(x, field);
  if (v >= precision) return LocalElem::zero(field, precision);
  const std::int64_t dd = e * x.den().degree();
  const LocalElem num = embed_poly(x.num(), field, precision - dd);
  // Relative precision precision - v for 1/den, which sits at valuation dd.
  const LocalElem den = embed_poly(x.den(), field, -dd + (precision - v));
  return num * den.inverse();
}

LocalElem lift_to_extension(const LocalElem& x, const LocalField& ext) {
  const LocalField& from = x.field();
  if (from == ext) return x;
  if (!from.is_laurent() || !ext.is_laurent() || from.q() != ext.q() || ext.ramification() % from.ramification() != 0 ||
      !ext.residue().has_subfield(from.residue())) {
    fail(ErrorKind::kFlavorMismatch, from.describe() + " does not embed in " + ext.describe());
  }
  const std::int64_t r = ext.ramification() / from.ramification();
  if (x.is_zero()) return LocalElem::zero(ext, x.precision() * r);
  std::vector<LocalElem::Digit> digits(static_cast<std::size_t>((x.precision() - x.first_exponent()) * r), 0);
  for (std::size_t i = 0; i < x.digits().size(); ++i) {
    digits[i * static_cast<std::size_t>(r)] = ext.residue().embed_from(from.residue(), x.digits()[i]);
  }
  return LocalElem::from_digits(ext, x.first_exponent() * r, std::move(digits), x.precision() * r);
}

LocalElem embed(const Rational& x, const LocalField& field, std::int64_t precision) {
  if (field.is_laurent()) fail(ErrorKind::kFlavorMismatch, "cannot embed Q into " + field.describe());
  if (x == 0) return LocalElem::zero(field, precision);
  const int p = field.characteristic();
  BigInt num = numerator(x);
  BigInt den = denominator(x);
  std::int64_t v = 0;
  while (num % p == 0) {
    num /= p;
    ++v;
  }
  while (den % p == 0) {
    den /= p;
    --v;
  }
  if (v >= precision) return LocalElem::zero(field, precision);
  const BigInt modulus = ipow(p, precision - v);
  BigInt unit = (num % modulus) * mod_inverse(den, modulus) % modulus;
  if (unit < 0) unit += modulus;
  return LocalElem::from_bigint(field, unit, precision - v).shifted(v);
}

LocalElem embed(const QkElem& x, const LocalField& field, std::int64_t precision) {
  if (x.is_function_field()) return embed(x.fn(), field, precision);
  return embed(x.rat(), field, precision);
}

LocalElem embed_significant(const QkElem& x, const LocalField& field, std::int64_t digits) {
  if (x.is_zero()) return LocalElem::zero(field, digits);
  return embed(x, field, exact_valuation(x, field) + digits);
}

}  // namespace ffarith
