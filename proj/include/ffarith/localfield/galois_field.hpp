#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ffarith {

/// The finite field F_{p^k}, held as lookup tables.
///
/// An element is an index c_0 + c_1 p + ... + c_{k-1} p^{k-1}, standing for
/// c_0 + c_1 g + ... + c_{k-1} g^{k-1} in F_p[g]/(modulus). The modulus is
/// the first primitive polynomial in lexicographic order, so g generates the
/// multiplicative group. Instances are built once, never mutated, and shared
/// through `get`; references stay valid for the lifetime of the program.
class GaloisField {
 public:
  using Elem = std::uint16_t;

  /// Largest supported field size.
  static constexpr int kMaxSize = 4096;

  static const GaloisField& get(int p, int k);
  /// Field with q elements; q must be a prime power.
  static const GaloisField& of_size(int q);

  int characteristic() const noexcept { return p_; }
  int degree() const noexcept { return k_; }
  int size() const noexcept { return size_; }
  bool is_prime_field() const noexcept { return k_ == 1; }

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t n) const;
  /// a^(p^s).
  Elem frobenius(Elem a, int s) const;
  Elem from_int(long long n) const;
  /// The class of the modulus variable (a primitive element).
  Elem generator() const noexcept { return generator_; }

  /// Polynomial-basis coordinates of `a` over F_p, low degree first.
  std::vector<int> coordinates(Elem a) const;
  Elem from_coordinates(const std::vector<int>& coords) const;

  /// Renders prime-field elements as integers, others as polynomials in `g`.
  std::string render(Elem a) const;

  /// Image of `x` under the fixed embedding `sub` -> this field. The embedding
  /// sends the generator of `sub` to the smallest-index root of its modulus.
  Elem embed_from(const GaloisField& sub, Elem x) const;
  bool has_subfield(const GaloisField& sub) const noexcept;

  const std::vector<int>& modulus() const noexcept { return modulus_; }

  GaloisField(int p, int k);

 private:
  int p_;
  int k_;
  int size_;
  Elem generator_ = 0;
  std::vector<int> modulus_;
  std::vector<int> pow_p_;
  std::vector<Elem> exp_;    // exp_[i] = g^i, length 2(size-1)
  std::vector<int> log_;     // log_[a] for a != 0
  std::vector<Elem> add_;    // size^2 table, only when small
  std::vector<Elem> neg_;
};

bool is_prime(int n) noexcept;
/// Returns {p, k} with q = p^k, or {0, 0} if q is not a prime power.
std::pair<int, int> prime_power(int q) noexcept;

}  // namespace ffarith
