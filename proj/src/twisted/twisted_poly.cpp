#include "ffarith/twisted/twisted_poly.hpp"

#include <limits>

#include "ffarith/error.hpp"
#include "ffarith/localfield/expr.hpp"

namespace ffarith {

ScalarMatrix zero_matrix(const GaloisField& fq, int m) { return ScalarMatrix(m, m, Scalar::zero(fq)); }

ScalarMatrix identity_matrix(const GaloisField& fq, int m) {
  return ScalarMatrix::identity(m, Scalar::zero(fq), Scalar::one(fq));
}

ScalarMatrix scalar_matrix(const GaloisField& fq, int m, const Scalar& c) {
  return ScalarMatrix::scalar(m, Scalar::zero(fq), c);
}

ScalarMatrix frobenius(const ScalarMatrix& a, int j) {
  if (j == 0) return a;
  return a.map([j](const Scalar& x) { return x.frobenius(j); });
}

namespace {

bool needs_parens(const std::string& s) {
  int depth = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (depth == 0 && (c == '+' || c == '/' || (c == '-' && i > 0))) return true;
  }
  return false;
}

}  // namespace

std::string render(const ScalarMatrix& a) {
  std::string out = "[";
  for (int i = 0; i < a.rows(); ++i) {
    if (i > 0) out += ", ";
    out += "[";
    for (int j = 0; j < a.cols(); ++j) {
      if (j > 0) out += ", ";
      out += a(i, j).render();
    }
    out += "]";
  }
  return out + "]";
}

TwistedPoly::TwistedPoly(const GaloisField& fq, int m, std::vector<ScalarMatrix> coeffs)
    : fq_(&fq), m_(m), coeffs_(std::move(coeffs)) {
  for (const auto& c : coeffs_) {
    if (c.rows() != m || c.cols() != m) fail(ErrorKind::kDimensionMismatch, "coefficient " + c.shape() + " in dimension " + std::to_string(m));
  }
  trim();
}

void TwistedPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

TwistedPoly TwistedPoly::constant(const ScalarMatrix& a0) {
  if (!a0.is_square()) fail(ErrorKind::kDimensionMismatch, "constant term must be square");
  return TwistedPoly(a0(0, 0).constants(), a0.rows(), {a0});
}

TwistedPoly TwistedPoly::one(const GaloisField& fq, int m) { return TwistedPoly(fq, m, {identity_matrix(fq, m)}); }

TwistedPoly TwistedPoly::tau(const GaloisField& fq, int m, int k) {
  std::vector<ScalarMatrix> c(static_cast<std::size_t>(k) + 1, zero_matrix(fq, m));
  c.back() = identity_matrix(fq, m);
  return TwistedPoly(fq, m, std::move(c));
}

TwistedPoly TwistedPoly::from_scalars(const GaloisField& fq, const std::vector<Scalar>& coeffs) {
  std::vector<ScalarMatrix> c;
  c.reserve(coeffs.size());
  for (const auto& x : coeffs) c.emplace_back(1, 1, x);
  return TwistedPoly(fq, 1, std::move(c));
}

ScalarMatrix TwistedPoly::coeff(int i) const {
  if (i < 0 || i > degree()) return zero_matrix(*fq_, m_);
  return coeffs_[static_cast<std::size_t>(i)];
}

Scalar TwistedPoly::scalar_coeff(int i) const {
  if (m_ != 1) fail(ErrorKind::kDimensionMismatch, "scalar coefficient of a matrix twisted polynomial");
  return coeff(i)(0, 0);
}

void TwistedPoly::check_compatible(const TwistedPoly& o) const {
  if (m_ != o.m_) fail(ErrorKind::kDimensionMismatch, "twisted polynomials of dimensions " + std::to_string(m_) + " and " + std::to_string(o.m_));
  if (fq_ != o.fq_) fail(ErrorKind::kFlavorMismatch, "twisted polynomials over different constant fields");
}

TwistedPoly TwistedPoly::operator-() const {
  TwistedPoly r(*fq_, m_);
  for (const auto& c : coeffs_) r.coeffs_.push_back(-c);
  return r;
}

TwistedPoly operator+(const TwistedPoly& a, const TwistedPoly& b) {
  a.check_compatible(b);
  const int n = std::max(a.degree(), b.degree()) + 1;
  std::vector<ScalarMatrix> c;
  c.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    if (i > a.degree()) {
      c.push_back(b.coeffs_[static_cast<std::size_t>(i)]);
    } else if (i > b.degree()) {
      c.push_back(a.coeffs_[static_cast<std::size_t>(i)]);
    } else {
      c.push_back(a.coeffs_[static_cast<std::size_t>(i)] + b.coeffs_[static_cast<std::size_t>(i)]);
    }
  }
  return TwistedPoly(*a.fq_, a.m_, std::move(c));
}

TwistedPoly operator*(const TwistedPoly& a, const TwistedPoly& b) {
  a.check_compatible(b);
  if (a.is_zero() || b.is_zero()) return TwistedPoly(*a.fq_, a.m_);
  const int n = a.degree() + b.degree() + 1;
  std::vector<ScalarMatrix> c(static_cast<std::size_t>(n), zero_matrix(*a.fq_, a.m_));
  for (int i = 0; i <= a.degree(); ++i) {
    const auto& ai = a.coeffs_[static_cast<std::size_t>(i)];
    if (ai.is_zero()) continue;
    for (int j = 0; j <= b.degree(); ++j) {
      const auto& bj = b.coeffs_[static_cast<std::size_t>(j)];
      if (bj.is_zero()) continue;
      auto& slot = c[static_cast<std::size_t>(i + j)];
      slot = slot + ai * frobenius(bj, i);
    }
  }
  return TwistedPoly(*a.fq_, a.m_, std::move(c));
}

TwistedPoly TwistedPoly::pow(int n) const {
  if (n < 0) fail(ErrorKind::kInvalidArgument, "negative power of a twisted polynomial");
  TwistedPoly r = one(*fq_, m_);
  for (int i = 0; i < n; ++i) r = r * *this;
  return r;
}

TwistedPoly TwistedPoly::left_scaled(const ScalarMatrix& a) const {
  std::vector<ScalarMatrix> c;
  c.reserve(coeffs_.size());
  for (const auto& x : coeffs_) c.push_back(a * x);
  return TwistedPoly(*fq_, m_, std::move(c));
}

std::vector<LocalElem> TwistedPoly::evaluate(std::span<const LocalElem> x) const {
  if (static_cast<int>(x.size()) != m_) fail(ErrorKind::kDimensionMismatch, "point of dimension " + std::to_string(x.size()));
  if (m_ == 0) return {};
  const LocalField field = x[0].field();
  if (!field.is_laurent() || field.q() != fq_->size()) {
    fail(ErrorKind::kFlavorMismatch, "cannot evaluate over F_" + std::to_string(fq_->size()) + " at a point of " + field.describe());
  }
  // An exact zero: the additive identity at every precision we can reach.
  constexpr std::int64_t kUnbounded = std::int64_t{1} << 40;
  std::vector<LocalElem> out(static_cast<std::size_t>(m_), LocalElem::zero(field, kUnbounded));
  std::vector<LocalElem> power(x.begin(), x.end());
  for (int i = 0; i <= degree(); ++i) {
    if (i > 0) {
      for (auto& y : power) y = y.frobenius(1);
    }
    const auto& a = coeffs_[static_cast<std::size_t>(i)];
    for (int r = 0; r < m_; ++r) {
      for (int c = 0; c < m_; ++c) {
        const Scalar& s = a(r, c);
        if (s.is_exact_zero()) continue;
        const Scalar term = s * Scalar(power[static_cast<std::size_t>(c)]);
        out[static_cast<std::size_t>(r)] = out[static_cast<std::size_t>(r)] + term.local();
      }
    }
  }
  return out;
}

LocalElem TwistedPoly::evaluate(const LocalElem& x) const { return evaluate(std::span<const LocalElem>(&x, 1))[0]; }

bool operator==(const TwistedPoly& a, const TwistedPoly& b) {
  return a.fq_ == b.fq_ && a.m_ == b.m_ && a.coeffs_ == b.coeffs_;
}

std::string TwistedPoly::render() const {
  if (is_zero()) return m_ == 1 ? "0" : ffarith::render(zero_matrix(*fq_, m_));
  std::string out;
  for (int i = 0; i <= degree(); ++i) {
    const auto& a = coeffs_[static_cast<std::size_t>(i)];
    if (a.is_zero()) continue;
    std::string c = m_ == 1 ? a(0, 0).render() : ffarith::render(a);
    const std::string t = i == 0 ? "" : (i == 1 ? "t" : "t^" + std::to_string(i));
    if (!out.empty()) out += " + ";
    if (i == 0) {
      out += c;
    } else if (m_ == 1 && c == "1") {
      out += t;
    } else {
      if (m_ == 1 && needs_parens(c)) c = "(" + c + ")";
      out += c + "*" + t;
    }
  }
  return out;
}

namespace {

struct TwistedEnv {
  const GaloisField& fq;
  int m;
  GlobalField k;

  TwistedPoly constant(const QkElem& c) const {
    return TwistedPoly::constant(scalar_matrix(fq, m, Scalar(c.fn())));
  }

  TwistedPoly number(const BigInt&, const Expr& e) const { return constant(eval_qk(e, k)); }

  TwistedPoly name(const Expr& e) const {
    if (e.name == "t") return TwistedPoly::tau(fq, m);
    return constant(eval_qk(e, k));
  }

  TwistedPoly matrix(const Expr& e) const {
    if (e.rows != m || e.cols != m) {
      e.error("expected a " + std::to_string(m) + "x" + std::to_string(m) + " matrix, got " + std::to_string(e.rows) + "x" + std::to_string(e.cols));
    }
    std::vector<Scalar> entries;
    entries.reserve(e.args.size());
    for (const auto& x : e.args) entries.emplace_back(eval_qk(x, k).fn());
    return TwistedPoly::constant(ScalarMatrix(m, m, std::move(entries)));
  }

  TwistedPoly call(const Expr& e) const { e.error("unknown function '" + e.name + "'"); }

  static const ScalarMatrix* as_constant(const TwistedPoly& p) {
    if (p.degree() != 0) return nullptr;
    return &p.coeffs()[0];
  }

  TwistedPoly divide(const TwistedPoly& a, const TwistedPoly& b, const Expr& e) const {
    const ScalarMatrix* c = as_constant(b);
    if (c == nullptr) e.error("division by a non-constant twisted polynomial");
    auto inv = inverse(*c, Scalar::zero(fq), Scalar::one(fq));
    if (!inv) e.error("division by a singular matrix");
    return a * TwistedPoly::constant(*inv);
  }

  TwistedPoly power(const TwistedPoly& a, long long n, const Expr& e) const {
    if (n < 0) {
      const ScalarMatrix* c = as_constant(a);
      if (c == nullptr) e.error("negative power of a non-constant twisted polynomial");
      auto inv = inverse(*c, Scalar::zero(fq), Scalar::one(fq));
      if (!inv) e.error("negative power of a singular matrix");
      return TwistedPoly::constant(*inv).pow(static_cast<int>(-n));
    }
    if (n > 64) e.error("exponent too large");
    return a.pow(static_cast<int>(n));
  }
};

}  // namespace

TwistedPoly parse_twisted(std::string_view text, const GaloisField& fq, int m, int line) {
  if (m < 1 || m > 4) fail(ErrorKind::kInvalidArgument, "dimension must be between 1 and 4");
  TwistedEnv env{fq, m, GlobalField::function_field(fq.size())};
  return fold_expr<TwistedPoly>(parse_expr(text, line), env);
}

}  // namespace ffarith
