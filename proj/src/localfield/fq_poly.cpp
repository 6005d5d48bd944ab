#include "ffarith/localfield/fq_poly.hpp"

#include <algorithm>

#include "ffarith/error.hpp"

namespace ffarith {

FqPoly::FqPoly(const GaloisField& field, std::vector<Elem> coeffs) : field_(&field), coeffs_(std::move(coeffs)) {
  trim();
}

FqPoly FqPoly::constant(const GaloisField& field, Elem c) { return FqPoly(field, {c}); }

FqPoly FqPoly::monomial(const GaloisField& field, Elem c, int degree) {
  std::vector<Elem> v(static_cast<std::size_t>(degree) + 1, 0);
  v.back() = c;
  return FqPoly(field, std::move(v));
}

void FqPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

FqPoly::Elem FqPoly::coeff(int i) const noexcept {
  if (i < 0 || i >= static_cast<int>(coeffs_.size())) return 0;
  return coeffs_[i];
}

FqPoly FqPoly::operator-() const {
  FqPoly r = *this;
  for (auto& c : r.coeffs_) c = field_->neg(c);
  return r;
}

FqPoly& FqPoly::operator+=(const FqPoly& o) {
  if (field_ != o.field_) fail(ErrorKind::kFlavorMismatch, "polynomials over different fields");
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), 0);
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] = field_->add(coeffs_[i], o.coeffs_[i]);
  trim();
  return *this;
}

FqPoly& FqPoly::operator-=(const FqPoly& o) { return *this += -o; }

FqPoly operator*(const FqPoly& a, const FqPoly& b) {
  if (a.field_ != b.field_) fail(ErrorKind::kFlavorMismatch, "polynomials over different fields");
  if (a.is_zero() || b.is_zero()) return FqPoly(*a.field_);
  const auto& f = *a.field_;
  std::vector<FqPoly::Elem> r(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
      r[i + j] = f.add(r[i + j], f.mul(a.coeffs_[i], b.coeffs_[j]));
    }
  }
  return FqPoly(f, std::move(r));
}

FqPoly FqPoly::scaled(Elem c) const {
  FqPoly r = *this;
  for (auto& x : r.coeffs_) x = field_->mul(x, c);
  r.trim();
  return r;
}

std::pair<FqPoly, FqPoly> FqPoly::divmod(const FqPoly& d) const {
  if (d.is_zero()) fail(ErrorKind::kInvalidArgument, "polynomial division by zero");
  const auto& f = *field_;
  FqPoly q(f);
  FqPoly r = *this;
  if (r.degree() < d.degree()) return {q, r};
  q.coeffs_.assign(static_cast<std::size_t>(r.degree() - d.degree()) + 1, 0);
  const Elem lead_inv = f.inv(d.leading());
  while (!r.is_zero() && r.degree() >= d.degree()) {
    const int shift = r.degree() - d.degree();
    const Elem c = f.mul(r.leading(), lead_inv);
    q.coeffs_[shift] = c;
    for (std::size_t i = 0; i < d.coeffs_.size(); ++i) {
      r.coeffs_[i + shift] = f.sub(r.coeffs_[i + shift], f.mul(c, d.coeffs_[i]));
    }
    r.trim();
  }
  q.trim();
  return {q, r};
}

FqPoly FqPoly::monic() const {
  if (is_zero()) return *this;
  return scaled(field_->inv(leading()));
}

FqPoly FqPoly::pow(unsigned n) const {
  FqPoly result = constant(*field_, 1);
  FqPoly base = *this;
  while (n > 0) {
    if (n & 1U) result = result * base;
    n >>= 1U;
    if (n > 0) base = base * base;
  }
  return result;
}

FqPoly FqPoly::compose_power(int j) const {
  if (j < 1) fail(ErrorKind::kInvalidArgument, "compose_power needs j >= 1");
  if (is_zero()) return *this;
  std::vector<Elem> r(static_cast<std::size_t>(degree()) * j + 1, 0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) r[i * j] = coeffs_[i];
  return FqPoly(*field_, std::move(r));
}

FqPoly::Elem FqPoly::evaluate(Elem x) const {
  Elem acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = field_->add(field_->mul(acc, x), *it);
  return acc;
}

std::strong_ordering operator<=>(const FqPoly& a, const FqPoly& b) noexcept {
  if (auto c = a.degree() <=> b.degree(); c != 0) return c;
  for (int i = a.degree(); i >= 0; --i) {
    if (auto c = a.coeffs_[i] <=> b.coeffs_[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

std::string FqPoly::render() const {
  if (is_zero()) return "0";
  std::string out;
  for (int i = degree(); i >= 0; --i) {
    const Elem c = coeffs_[i];
    if (c == 0) continue;
    if (!out.empty()) out += " + ";
    const std::string cs = field_->render(c);
    if (i == 0) {
      out += cs;
      continue;
    }
    if (c != 1) out += cs + "*";
    out += "T";
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out;
}

FqPoly gcd(FqPoly a, FqPoly b) {
  while (!b.is_zero()) {
    auto r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

std::vector<FqPoly> all_polys_below_degree(const GaloisField& field, int n) {
  std::vector<FqPoly> out;
  if (n <= 0) {
    out.emplace_back(field);
    return out;
  }
  long long total = 1;
  for (int i = 0; i < n; ++i) total *= field.size();
  out.reserve(static_cast<std::size_t>(total));
  std::vector<FqPoly::Elem> c(n, 0);
  for (long long code = 0; code < total; ++code) {
    long long r = code;
    for (int i = 0; i < n; ++i) {
      c[i] = static_cast<FqPoly::Elem>(r % field.size());
      r /= field.size();
    }
    out.emplace_back(field, c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<FqPoly> monic_polys_of_degree(const GaloisField& field, int n) {
  std::vector<FqPoly> out;
  for (auto& low : all_polys_below_degree(field, n)) out.push_back(low + FqPoly::monomial(field, 1, n));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<FqPoly> monic_divisors(const FqPoly& a) {
  if (a.is_zero()) fail(ErrorKind::kInvalidArgument, "divisors of zero");
  std::vector<FqPoly> out;
  for (int d = 0; d <= a.degree(); ++d) {
    for (auto& cand : monic_polys_of_degree(a.field(), d)) {
      if (a.divmod(cand).second.is_zero()) out.push_back(cand);
    }
  }
  return out;
}

}  // namespace ffarith
