#include "ffarith/localfield/rational_fn.hpp"

#include "ffarith/error.hpp"

namespace ffarith {

RationalFn::RationalFn(FqPoly num) : num_(std::move(num)), den_(FqPoly::constant(num_.field(), 1)) {}

RationalFn::RationalFn(FqPoly num, FqPoly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

RationalFn RationalFn::constant(const GaloisField& field, GaloisField::Elem c) {
  return RationalFn(FqPoly::constant(field, c));
}

void RationalFn::normalize() {
  if (den_.is_zero()) fail(ErrorKind::kInvalidArgument, "rational function with zero denominator");
  if (num_.is_zero()) {
    den_ = FqPoly::constant(num_.field(), 1);
    return;
  }
  FqPoly g = gcd(num_, den_);
  if (g.degree() > 0) {
    num_ = num_.divmod(g).first;
    den_ = den_.divmod(g).first;
  }
  const auto lead = den_.leading();
  if (lead != 1) {
    const auto inv = num_.field().inv(lead);
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
  }
}

int RationalFn::valuation_at_infinity() const {
  if (is_zero()) fail(ErrorKind::kInexactZero, "valuation of zero");
  return den_.degree() - num_.degree();
}

RationalFn operator+(const RationalFn& a, const RationalFn& b) {
  if (a.den_ == b.den_) return RationalFn(a.num_ + b.num_, a.den_);
  return RationalFn(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFn operator*(const RationalFn& a, const RationalFn& b) {
  if (a.is_zero() || b.is_zero()) return RationalFn(a.field());
  return RationalFn(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFn RationalFn::inverse() const {
  if (is_zero()) fail(ErrorKind::kInvalidArgument, "inverse of zero rational function");
  return RationalFn(den_, num_);
}

RationalFn RationalFn::pow(int n) const {
  if (n < 0) return inverse().pow(-n);
  RationalFn r(num_.pow(static_cast<unsigned>(n)), den_.pow(static_cast<unsigned>(n)));
  return r;
}

RationalFn RationalFn::frobenius(int j) const {
  if (j == 0 || is_zero()) return *this;
  long long qj = 1;
  for (int i = 0; i < j; ++i) {
    qj *= field().size();
    if (qj > (1LL << 20)) fail(ErrorKind::kOverflow, "Frobenius power too large");
  }
  const int e = static_cast<int>(qj);
  RationalFn r(field());
  r.num_ = num_.compose_power(e);
  r.den_ = den_.compose_power(e);
  return r;
}

std::strong_ordering operator<=>(const RationalFn& a, const RationalFn& b) noexcept {
  if (auto c = a.den_ <=> b.den_; c != 0) return c;
  return a.num_ <=> b.num_;
}

std::string RationalFn::render() const {
  if (is_polynomial()) return num_.render();
  std::string n = num_.render();
  if (num_.coeffs().size() > 1 && n.find(' ') != std::string::npos) n = "(" + n + ")";
  std::string d = den_.render();
  if (d.find(' ') != std::string::npos || d.find('*') != std::string::npos || d.find('^') != std::string::npos) {
    d = "(" + d + ")";
  }
  return n + "/" + d;
}

}  // namespace ffarith
