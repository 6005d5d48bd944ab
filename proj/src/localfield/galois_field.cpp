#include "ffarith/localfield/galois_field.hpp"

#include <map>
#include <memory>
#include <mutex>

#include "ffarith/error.hpp"

namespace ffarith {

bool is_prime(int n) noexcept {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::pair<int, int> prime_power(int q) noexcept {
  if (q < 2) return {0, 0};
  int p = 2;
  while (q % p != 0) ++p;
  int k = 0;
  int r = q;
  while (r % p == 0) {
    r /= p;
    ++k;
  }
  if (r != 1) return {0, 0};
  return {p, k};
}

namespace {

// Polynomials over F_p as coefficient vectors, low degree first.
using PolyP = std::vector<int>;

PolyP mulmod(const PolyP& a, const PolyP& b, const PolyP& modulus, int p) {
  const int k = static_cast<int>(modulus.size()) - 1;
  std::vector<int> prod(2 * k, 0);
  for (int i = 0; i < k; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
  }
  // modulus is monic
  for (int d = 2 * k - 1; d >= k; --d) {
    const int c = prod[d];
    if (c == 0) continue;
    for (int i = 0; i <= k; ++i) {
      prod[d - k + i] = ((prod[d - k + i] - c * modulus[i]) % p + p) % p;
    }
  }
  prod.resize(k);
  return prod;
}

// Order of g in F_p[g]/(modulus) if every power stays nonzero and the order
// is p^k - 1; otherwise 0.
bool is_primitive(const PolyP& modulus, int p) {
  const int k = static_cast<int>(modulus.size()) - 1;
  int size = 1;
  for (int i = 0; i < k; ++i) size *= p;
  PolyP g(k, 0);
  if (k == 1) {
    g[0] = (p - modulus[0]) % p;  // root of x + c is -c
    if (g[0] == 0) return false;
  } else {
    g[1] = 1;
  }
  PolyP x = g;
  for (int n = 1; n < size - 1; ++n) {
    bool one = x[0] == 1;
    for (int i = 1; i < k && one; ++i) one = x[i] == 0;
    if (one) return false;
    bool zero = true;
    for (int c : x) zero = zero && c == 0;
    if (zero) return false;
    x = mulmod(x, g, modulus, p);
  }
  bool one = x[0] == 1;
  for (int i = 1; i < k && one; ++i) one = x[i] == 0;
  return one;
}

struct Registry {
  std::mutex mu;
  std::map<std::pair<int, int>, std::unique_ptr<GaloisField>> fields;
  std::map<std::pair<const GaloisField*, const GaloisField*>, std::vector<GaloisField::Elem>> embeddings;
};

Registry& registry() {
  static Registry r;
  return r;
}

}  // namespace

GaloisField::GaloisField(int p, int k) : p_(p), k_(k), size_(1) {
  for (int i = 0; i < k; ++i) {
    pow_p_.push_back(size_);
    size_ *= p;
  }
  // First primitive monic polynomial in lexicographic order of (c_0, ..., c_{k-1}).
  PolyP candidate(k + 1, 0);
  candidate[k] = 1;
  bool found = false;
  for (int code = 0; code < size_ && !found; ++code) {
    int rest = code;
    for (int i = 0; i < k; ++i) {
      candidate[i] = rest % p;
      rest /= p;
    }
    if (is_primitive(candidate, p)) found = true;
  }
  if (!found) fail(ErrorKind::kInvalidArgument, "no primitive polynomial found");
  modulus_ = candidate;

  PolyP g(k, 0);
  if (k == 1) {
    g[0] = (p - modulus_[0]) % p;
  } else {
    g[1] = 1;
  }
  auto encode = [&](const PolyP& v) {
    int idx = 0;
    for (int i = k - 1; i >= 0; --i) idx = idx * p + v[i];
    return static_cast<Elem>(idx);
  };
  generator_ = encode(g);
  exp_.assign(2 * (size_ - 1), 0);
  log_.assign(size_, -1);
  PolyP x(k, 0);
  x[0] = 1;
  for (int i = 0; i < size_ - 1; ++i) {
    const Elem e = encode(x);
    exp_[i] = e;
    exp_[i + size_ - 1] = e;
    log_[e] = i;
    x = mulmod(x, g, modulus_, p);
  }

  neg_.resize(size_);
  for (int a = 0; a < size_; ++a) {
    auto c = coordinates(static_cast<Elem>(a));
    for (int& d : c) d = (p - d) % p;
    neg_[a] = from_coordinates(c);
  }
  if (size_ <= 256) {
    add_.resize(static_cast<std::size_t>(size_) * size_);
    for (int a = 0; a < size_; ++a) {
      for (int b = 0; b < size_; ++b) {
        int idx = 0;
        int ra = a;
        int rb = b;
        for (int i = 0; i < k; ++i) {
          idx += ((ra % p + rb % p) % p) * pow_p_[i];
          ra /= p;
          rb /= p;
        }
        add_[static_cast<std::size_t>(a) * size_ + b] = static_cast<Elem>(idx);
      }
    }
  }
}

const GaloisField& GaloisField::get(int p, int k) {
  if (!is_prime(p) || k < 1) fail(ErrorKind::kInvalidArgument, "invalid field F_" + std::to_string(p) + "^" + std::to_string(k));
  long long size = 1;
  for (int i = 0; i < k; ++i) {
    size *= p;
    if (size > kMaxSize) fail(ErrorKind::kInvalidArgument, "field too large for table representation");
  }
  auto& reg = registry();
  std::lock_guard<std::mutex> lock(reg.mu);
  auto& slot = reg.fields[{p, k}];
  if (!slot) slot = std::make_unique<GaloisField>(p, k);
  return *slot;
}

const GaloisField& GaloisField::of_size(int q) {
  auto [p, k] = prime_power(q);
  if (p == 0) fail(ErrorKind::kInvalidArgument, std::to_string(q) + " is not a prime power");
  return get(p, k);
}

GaloisField::Elem GaloisField::add(Elem a, Elem b) const {
  if (!add_.empty()) return add_[static_cast<std::size_t>(a) * size_ + b];
  if (p_ == 2) return static_cast<Elem>(a ^ b);
  int idx = 0;
  int ra = a;
  int rb = b;
  for (int i = 0; i < k_; ++i) {
    idx += ((ra % p_ + rb % p_) % p_) * pow_p_[i];
    ra /= p_;
    rb /= p_;
  }
  return static_cast<Elem>(idx);
}

GaloisField::Elem GaloisField::neg(Elem a) const { return neg_[a]; }

GaloisField::Elem GaloisField::sub(Elem a, Elem b) const { return add(a, neg_[b]); }

GaloisField::Elem GaloisField::mul(Elem a, Elem b) const {
  if (a == 0 || b == 0) return 0;
  return exp_[log_[a] + log_[b]];
}

GaloisField::Elem GaloisField::inv(Elem a) const {
  if (a == 0) fail(ErrorKind::kInvalidArgument, "inverse of zero in F_" + std::to_string(size_));
  return exp_[(size_ - 1 - log_[a]) % (size_ - 1)];
}

GaloisField::Elem GaloisField::pow(Elem a, std::uint64_t n) const {
  if (n == 0) return 1;
  if (a == 0) return 0;
  const std::uint64_t order = static_cast<std::uint64_t>(size_ - 1);
  return exp_[static_cast<std::size_t>((static_cast<std::uint64_t>(log_[a]) * (n % order)) % order)];
}

GaloisField::Elem GaloisField::frobenius(Elem a, int s) const {
  std::uint64_t e = 1;
  for (int i = 0; i < s % k_; ++i) e *= static_cast<std::uint64_t>(p_);
  return pow(a, e);
}

GaloisField::Elem GaloisField::from_int(long long n) const {
  long long r = n % p_;
  if (r < 0) r += p_;
  return static_cast<Elem>(r);
}

std::vector<int> GaloisField::coordinates(Elem a) const {
  std::vector<int> c(k_);
  int r = a;
  for (int i = 0; i < k_; ++i) {
    c[i] = r % p_;
    r /= p_;
  }
  return c;
}

GaloisField::Elem GaloisField::from_coordinates(const std::vector<int>& coords) const {
  int idx = 0;
  for (int i = static_cast<int>(coords.size()) - 1; i >= 0; --i) {
    int c = coords[i] % p_;
    if (c < 0) c += p_;
    idx = idx * p_ + c;
  }
  return static_cast<Elem>(idx);
}

std::string GaloisField::render(Elem a) const {
  if (k_ == 1) return std::to_string(a);
  if (a == 0) return "0";
  auto c = coordinates(a);
  std::string out;
  for (int i = k_ - 1; i >= 0; --i) {
    if (c[i] == 0) continue;
    if (!out.empty()) out += "+";
    if (i == 0) {
      out += std::to_string(c[i]);
      continue;
    }
    if (c[i] != 1) out += std::to_string(c[i]) + "*";
    out += "g";
    if (i > 1) out += "^" + std::to_string(i);
  }
  if (out.find('+') != std::string::npos || out.find('*') != std::string::npos) return "(" + out + ")";
  return out;
}

bool GaloisField::has_subfield(const GaloisField& sub) const noexcept {
  return sub.p_ == p_ && k_ % sub.k_ == 0;
}

GaloisField::Elem GaloisField::embed_from(const GaloisField& sub, Elem x) const {
  if (&sub == this) return x;
  if (!has_subfield(sub)) fail(ErrorKind::kFlavorMismatch, "F_" + std::to_string(sub.size_) + " is not a subfield of F_" + std::to_string(size_));
  if (sub.k_ == 1) return x;
  auto& reg = registry();
  std::lock_guard<std::mutex> lock(reg.mu);
  auto& table = reg.embeddings[{&sub, this}];
  if (table.empty()) {
    Elem root = 0;
    bool found = false;
    for (int b = 1; b < size_ && !found; ++b) {
      Elem acc = 0;
      for (int i = sub.k_; i >= 0; --i) acc = add(mul(acc, static_cast<Elem>(b)), from_int(sub.modulus_[i]));
      if (acc == 0) {
        root = static_cast<Elem>(b);
        found = true;
      }
    }
    if (!found) fail(ErrorKind::kInvalidArgument, "subfield embedding failed");
    table.resize(sub.size_);
    for (int a = 0; a < sub.size_; ++a) {
      auto c = sub.coordinates(static_cast<Elem>(a));
      Elem acc = 0;
      for (int i = sub.k_ - 1; i >= 0; --i) acc = add(mul(acc, root), from_int(c[i]));
      table[a] = acc;
    }
  }
  return table[x];
}

}  // namespace ffarith
