#include "ffarith/localfield/local_field.hpp"

#include <algorithm>
#include <numeric>

#include "ffarith/error.hpp"

namespace ffarith {

BigInt ipow(long long base, std::int64_t exp) {
  BigInt r = 1;
  BigInt b = base;
  while (exp > 0) {
    if (exp & 1) r *= b;
    exp >>= 1;
    if (exp > 0) b *= b;
  }
  return r;
}

BigInt mod_inverse(const BigInt& a, const BigInt& m) {
  BigInt old_r = a % m;
  if (old_r < 0) old_r += m;
  BigInt r = m;
  BigInt old_s = 1;
  BigInt s = 0;
  while (r != 0) {
    BigInt quot = old_r / r;
    BigInt tmp = old_r - quot * r;
    old_r = r;
    r = tmp;
    tmp = old_s - quot * s;
    old_s = s;
    s = tmp;
  }
  if (old_r != 1) fail(ErrorKind::kInvalidArgument, "no modular inverse");
  BigInt res = old_s % m;
  if (res < 0) res += m;
  return res;
}

LocalField LocalField::laurent(int q, int e, int f) {
  auto [p, s] = prime_power(q);
  if (p == 0) fail(ErrorKind::kInvalidArgument, "q = " + std::to_string(q) + " is not a prime power");
  if (q > kMaxQ) fail(ErrorKind::kInvalidArgument, "q = " + std::to_string(q) + " exceeds " + std::to_string(kMaxQ));
  if (e < 1 || f < 1) fail(ErrorKind::kInvalidArgument, "ramification and residue degree must be positive");
  if (std::gcd(e, p) != 1) {
    fail(ErrorKind::kInvalidArgument, "wild ramification e = " + std::to_string(e) + " in characteristic " + std::to_string(p));
  }
  LocalField lf;
  lf.kind_ = Kind::kLaurent;
  lf.p_ = p;
  lf.q_ = q;
  lf.e_ = e;
  lf.f_ = f;
  lf.base_ = &GaloisField::get(p, s);
  lf.residue_ = &GaloisField::get(p, s * f);
  return lf;
}

LocalField LocalField::padic(int p) {
  if (!is_prime(p)) fail(ErrorKind::kInvalidArgument, std::to_string(p) + " is not prime");
  if (p > kMaxP) fail(ErrorKind::kInvalidArgument, "p = " + std::to_string(p) + " exceeds " + std::to_string(kMaxP));
  LocalField lf;
  lf.kind_ = Kind::kPadic;
  lf.p_ = p;
  lf.q_ = p;
  lf.base_ = &GaloisField::get(p, 1);
  lf.residue_ = lf.base_;
  return lf;
}

std::string LocalField::describe() const {
  if (kind_ == Kind::kPadic) return "Q_" + std::to_string(p_);
  std::string s = "F_" + std::to_string(residue_->size()) + "((u))";
  s += ", u^" + std::to_string(e_) + " = 1/T";
  return s;
}

LocalElem::LocalElem(const LocalField& field, std::int64_t first, std::int64_t prec, std::vector<Digit> digits)
    : field_(field), first_(first), prec_(prec), digits_(std::move(digits)) {
  normalize();
}

void LocalElem::normalize() {
  if (first_ >= prec_) {
    digits_.clear();
    first_ = prec_;
    return;
  }
  digits_.resize(static_cast<std::size_t>(prec_ - first_), 0);
  std::size_t lead = 0;
  while (lead < digits_.size() && digits_[lead] == 0) ++lead;
  if (lead == digits_.size()) {
    digits_.clear();
    first_ = prec_;
    return;
  }
  if (lead > 0) {
    digits_.erase(digits_.begin(), digits_.begin() + static_cast<std::ptrdiff_t>(lead));
    first_ += static_cast<std::int64_t>(lead);
  }
}

LocalElem LocalElem::zero(const LocalField& field, std::int64_t precision) { return LocalElem(field, precision, precision, {}); }

LocalElem LocalElem::padic_from_unit(const LocalField& field, std::int64_t val, std::int64_t prec, BigInt unit) {
  const int p = field.characteristic();
  if (val >= prec) return zero(field, prec);
  const BigInt modulus = ipow(p, prec - val);
  unit %= modulus;
  if (unit < 0) unit += modulus;
  std::vector<Digit> digits;
  digits.reserve(static_cast<std::size_t>(prec - val));
  for (std::int64_t i = val; i < prec; ++i) {
    digits.push_back(static_cast<Digit>(static_cast<int>(unit % p)));
    unit /= p;
  }
  return LocalElem(field, val, prec, std::move(digits));
}

LocalElem LocalElem::from_bigint(const LocalField& field, const BigInt& n, std::int64_t precision) {
  if (field.is_laurent()) {
    const BigInt r = n % field.characteristic();
    const long long small = static_cast<long long>(r);
    return from_residue(field, field.residue().from_int(small), precision);
  }
  if (n == 0) return zero(field, precision);
  const int p = field.characteristic();
  BigInt m = n;
  std::int64_t v = 0;
  while (m % p == 0) {
    m /= p;
    ++v;
  }
  return padic_from_unit(field, v, precision, m);
}

LocalElem LocalElem::from_int(const LocalField& field, long long n, std::int64_t precision) {
  return from_bigint(field, BigInt(n), precision);
}

LocalElem LocalElem::uniformizer_power(const LocalField& field, std::int64_t k, std::int64_t precision) {
  return LocalElem(field, k, precision, {1});
}

LocalElem LocalElem::from_digits(const LocalField& field, std::int64_t first, std::vector<Digit> digits,
                                 std::int64_t precision) {
  const int limit = field.residue().size();
  for (auto d : digits) {
    if (d >= limit) fail(ErrorKind::kInvalidArgument, "digit out of range for " + field.describe());
  }
  return LocalElem(field, first, precision, std::move(digits));
}

LocalElem LocalElem::from_residue(const LocalField& field, Digit d, std::int64_t precision) {
  return from_digits(field, 0, {d}, precision);
}

std::int64_t LocalElem::valuation() const {
  if (is_zero()) fail(ErrorKind::kInexactZero, "valuation of O(u^" + std::to_string(prec_) + ")");
  return first_;
}

LocalElem::Digit LocalElem::digit(std::int64_t exponent) const {
  if (exponent >= prec_) fail(ErrorKind::kPrecisionExhausted, "digit beyond precision");
  if (exponent < first_) return 0;
  return digits_[static_cast<std::size_t>(exponent - first_)];
}

AbsoluteValue LocalElem::absolute_value() const {
  const std::int64_t v = valuation();
  AbsoluteValue a{field_.q(), Rational(-v, field_.ramification())};
  return a;
}

LocalElem LocalElem::with_precision(std::int64_t precision) const {
  if (precision >= prec_) return *this;
  if (precision <= first_) return zero(field_, precision);
  std::vector<Digit> d(digits_.begin(), digits_.begin() + static_cast<std::ptrdiff_t>(precision - first_));
  return LocalElem(field_, first_, precision, std::move(d));
}

LocalElem LocalElem::padded_to(std::int64_t precision) const {
  if (precision <= prec_) return with_precision(precision);
  if (is_zero()) return zero(field_, precision);
  return LocalElem(field_, first_, precision, digits_);
}

LocalElem LocalElem::frobenius(int j) const {
  if (!field_.is_laurent()) fail(ErrorKind::kFlavorMismatch, "Frobenius is defined for the Laurent flavor only");
  if (j == 0) return *this;
  std::int64_t qj = 1;
  for (int i = 0; i < j; ++i) {
    qj *= field_.q();
    if (qj > (std::int64_t{1} << 24)) fail(ErrorKind::kOverflow, "Frobenius power too large");
  }
  const auto& res = field_.residue();
  const std::int64_t new_prec = prec_ * qj;
  if (is_zero()) return zero(field_, new_prec);
  const std::int64_t new_first = first_ * qj;
  std::vector<Digit> d(static_cast<std::size_t>(new_prec - new_first), 0);
  for (std::size_t i = 0; i < digits_.size(); ++i) {
    if (digits_[i] == 0) continue;
    d[i * static_cast<std::size_t>(qj)] = res.pow(digits_[i], static_cast<std::uint64_t>(qj));
  }
  return LocalElem(field_, new_first, new_prec, std::move(d));
}

BigInt LocalElem::unit_integer() const {
  const int p = field_.characteristic();
  BigInt u = 0;
  for (auto it = digits_.rbegin(); it != digits_.rend(); ++it) u = u * p + *it;
  return u;
}

LocalElem LocalElem::inverse() const {
  if (is_zero()) fail(ErrorKind::kInexactZeroInverse, "inverting O(u^" + std::to_string(prec_) + ")");
  const std::int64_t rel = relative_precision();
  if (!field_.is_laurent()) {
    const BigInt modulus = ipow(field_.characteristic(), rel);
    return padic_from_unit(field_, -first_, -first_ + rel, mod_inverse(unit_integer(), modulus));
  }
  const auto& f = field_.residue();
  const std::size_t n = static_cast<std::size_t>(rel);
  std::vector<Digit> b(n, 0);
  const Digit a0inv = f.inv(digits_[0]);
  b[0] = a0inv;
  for (std::size_t k = 1; k < n; ++k) {
    Digit acc = 0;
    for (std::size_t i = 1; i <= k; ++i) {
      if (digits_[i] == 0 || b[k - i] == 0) continue;
      acc = f.add(acc, f.mul(digits_[i], b[k - i]));
    }
    b[k] = f.neg(f.mul(a0inv, acc));
  }
  return LocalElem(field_, -first_, -first_ + rel, std::move(b));
}

LocalElem LocalElem::scaled(long long n) const {
  if (field_.is_laurent()) {
    const auto& f = field_.residue();
    const Digit c = f.from_int(n);
    if (c == 0) return zero(field_, prec_);
    std::vector<Digit> d = digits_;
    for (auto& x : d) x = f.mul(x, c);
    return LocalElem(field_, first_, prec_, std::move(d));
  }
  if (n == 0) return zero(field_, prec_);
  const int p = field_.characteristic();
  long long m = n;
  std::int64_t w = 0;
  while (m % p == 0) {
    m /= p;
    ++w;
  }
  if (is_zero()) return zero(field_, prec_ + w);
  return padic_from_unit(field_, first_ + w, prec_ + w, unit_integer() * m);
}

LocalElem LocalElem::shifted(std::int64_t k) const {
  if (is_zero()) return zero(field_, prec_ + k);
  return LocalElem(field_, first_ + k, prec_ + k, digits_);
}

LocalElem LocalElem::operator-() const {
  if (is_zero()) return *this;
  if (field_.is_laurent()) {
    std::vector<Digit> d = digits_;
    const auto& f = field_.residue();
    for (auto& x : d) x = f.neg(x);
    return LocalElem(field_, first_, prec_, std::move(d));
  }
  return padic_from_unit(field_, first_, prec_, -unit_integer());
}

namespace {

void check_same(const LocalField& a, const LocalField& b) {
  if (!(a == b)) fail(ErrorKind::kFlavorMismatch, a.describe() + " vs " + b.describe());
}

}  // namespace

LocalElem operator+(const LocalElem& a, const LocalElem& b) {
  check_same(a.field_, b.field_);
  const std::int64_t prec = std::min(a.prec_, b.prec_);
  const std::int64_t start = std::min(a.first_, b.first_);
  if (start >= prec) return LocalElem::zero(a.field_, prec);
  if (a.field_.is_laurent()) {
    const auto& f = a.field_.residue();
    std::vector<LocalElem::Digit> d(static_cast<std::size_t>(prec - start), 0);
    for (std::int64_t e = std::max(a.first_, start); e < prec && e - a.first_ < static_cast<std::int64_t>(a.digits_.size()); ++e) {
      d[static_cast<std::size_t>(e - start)] = a.digits_[static_cast<std::size_t>(e - a.first_)];
    }
    for (std::int64_t e = std::max(b.first_, start); e < prec && e - b.first_ < static_cast<std::int64_t>(b.digits_.size()); ++e) {
      auto& slot = d[static_cast<std::size_t>(e - start)];
      slot = f.add(slot, b.digits_[static_cast<std::size_t>(e - b.first_)]);
    }
    return LocalElem(a.field_, start, prec, std::move(d));
  }
  const int p = a.field_.characteristic();
  BigInt sum = 0;
  if (!a.is_zero()) sum += a.unit_integer() * ipow(p, a.first_ - start);
  if (!b.is_zero()) sum += b.unit_integer() * ipow(p, b.first_ - start);
  return LocalElem::padic_from_unit(a.field_, start, prec, sum);
}

LocalElem operator-(const LocalElem& a, const LocalElem& b) { return a + (-b); }

LocalElem operator*(const LocalElem& a, const LocalElem& b) {
  check_same(a.field_, b.field_);
  const std::int64_t prec = std::min(a.prec_ + b.first_, b.prec_ + a.first_);
  if (a.is_zero() || b.is_zero()) return LocalElem::zero(a.field_, prec);
  const std::int64_t first = a.first_ + b.first_;
  const std::int64_t rel = prec - first;
  if (a.field_.is_laurent()) {
    const auto& f = a.field_.residue();
    const std::size_t n = static_cast<std::size_t>(rel);
    std::vector<LocalElem::Digit> d(n, 0);
    const std::size_t na = std::min(n, a.digits_.size());
    const std::size_t nb = std::min(n, b.digits_.size());
    for (std::size_t i = 0; i < na; ++i) {
      const auto x = a.digits_[i];
      if (x == 0) continue;
      const std::size_t lim = std::min(nb, n - i);
      for (std::size_t j = 0; j < lim; ++j) {
        const auto y = b.digits_[j];
        if (y == 0) continue;
        d[i + j] = f.add(d[i + j], f.mul(x, y));
      }
    }
    return LocalElem(a.field_, first, prec, std::move(d));
  }
  return LocalElem::padic_from_unit(a.field_, first, prec, a.unit_integer() * b.unit_integer());
}

bool canonical_less(const LocalElem& a, const LocalElem& b) noexcept {
  if (a.first_ != b.first_) return a.first_ < b.first_;
  if (a.digits_ != b.digits_) return a.digits_ < b.digits_;
  return a.prec_ < b.prec_;
}

std::string LocalElem::render() const {
  const bool laurent = field_.is_laurent();
  const std::string base = laurent ? "u" : std::to_string(field_.characteristic());
  const std::string tail = "O(" + base + "^" + std::to_string(prec_) + ")";
  if (is_zero()) return tail;
  std::string out = base + "^" + std::to_string(first_) + "*";
  if (laurent) {
    const auto& f = field_.residue();
    out += "(";
    for (std::size_t i = 0; i < digits_.size(); ++i) {
      if (i > 0) out += " + ";
      out += f.render(digits_[i]);
      if (i == 1) out += "*u";
      if (i > 1) out += "*u^" + std::to_string(i);
    }
    out += ")";
  } else {
    out += "[";
    for (std::size_t i = 0; i < digits_.size(); ++i) {
      if (i > 0) out += ", ";
      out += std::to_string(digits_[i]);
    }
    out += "]";
  }
  return out + " + " + tail;
}

}  // namespace ffarith
