#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace ldt {

/// Element of F_q, stored as the canonical index sum_i c_i p^i of its
/// coefficient vector over the polynomial basis {1, x, x^2, ...}.
/// Index 0 is the additive identity and index 1 the multiplicative identity.
struct Elem {
  std::uint32_t idx = 0;

  constexpr Elem() = default;
  constexpr explicit Elem(std::uint32_t i) : idx(i) {}

  friend constexpr bool operator==(Elem, Elem) = default;
  friend constexpr auto operator<=>(Elem, Elem) = default;
};

inline constexpr std::uint32_t kDefaultFieldCap = 1u << 16;

/// Exact arithmetic in F_q, q = p^ell, backed by log/antilog and Zech tables.
///
/// The modulus is the lexicographically smallest monic irreducible of degree
/// ell over F_p (lower coefficients compared with x^{ell-1} most significant)
/// and the generator is the smallest index of order q-1. Immutable after
/// construction, so one instance can be shared across threads.
class Field {
 public:
  /// Throws std::invalid_argument when p is not prime or ell == 0, and
  /// std::out_of_range when p^ell exceeds `cap`.
  static std::shared_ptr<const Field> make(std::uint32_t p, std::uint32_t ell,
                                           std::uint32_t cap = kDefaultFieldCap);

  std::uint32_t p() const { return p_; }
  std::uint32_t ell() const { return ell_; }
  std::uint32_t q() const { return q_; }
  bool is_prime() const { return ell_ == 1; }
  /// Coefficients c_0..c_ell of the monic modulus, low degree first.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  Elem generator() const { return Elem{generator_}; }

  bool same_as(const Field& other) const {
    return p_ == other.p_ && ell_ == other.ell_;
  }

  static constexpr Elem zero() { return Elem{0}; }
  static constexpr Elem one() { return Elem{1}; }

  Elem add(Elem a, Elem b) const {
    if (a.idx == 0) return b;
    if (b.idx == 0) return a;
    // a + b = a * (1 + b/a)
    std::uint32_t k = log_[b.idx] + (q_ - 1) - log_[a.idx];
    if (k >= q_ - 1) k -= q_ - 1;
    const std::uint32_t z = zech_[k];
    if (z == 0) return zero();
    return Elem{exp_[log_[a.idx] + log_[z]]};
  }
  Elem neg(Elem a) const { return Elem{neg_[a.idx]}; }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const {
    if (a.idx == 0 || b.idx == 0) return zero();
    return Elem{exp_[log_[a.idx] + log_[b.idx]]};
  }
  /// Throws std::domain_error on a == 0.
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  /// a^e with the exponent reduced modulo q-1 for nonzero bases; 0^0 = 1.
  Elem pow(Elem a, std::uint64_t e) const {
    if (e == 0) return one();
    if (a.idx == 0) return zero();
    const std::uint64_t r = (static_cast<std::uint64_t>(log_[a.idx]) * (e % (q_ - 1))) % (q_ - 1);
    return Elem{exp_[r]};
  }
  /// The image of an integer under Z -> F_p -> F_q.
  Elem from_int(std::int64_t v) const;

  /// Discrete log base the generator; a must be nonzero.
  std::uint32_t log(Elem a) const { return log_[a.idx]; }

  /// Sum over all alpha in F_q of alpha^i via the closed form: -1 when
  /// i = q-1, otherwise 0. Throws std::out_of_range when i > q-1.
  Elem power_sum(std::uint32_t i) const;

  /// Base-p digits of the element, low order first (length ell).
  std::vector<std::uint32_t> digits(Elem a) const;
  Elem from_digits(std::span<const std::uint32_t> digits) const;

  std::string describe() const;

 private:
  Field(std::uint32_t p, std::uint32_t ell, std::vector<std::uint32_t> modulus);

  std::uint32_t p_;
  std::uint32_t ell_;
  std::uint32_t q_;
  std::vector<std::uint32_t> modulus_;
  std::uint32_t generator_ = 1;
  std::vector<std::uint32_t> exp_;   // length 2(q-1), exp_[i] = g^i
  std::vector<std::uint32_t> log_;   // log_[0] unused
  std::vector<std::uint32_t> zech_;  // zech_[k] = index of 1 + g^k
  std::vector<std::uint32_t> neg_;
};

using FieldRef = std::shared_ptr<const Field>;

inline FieldRef make_field(std::uint32_t p, std::uint32_t ell,
                           std::uint32_t cap = kDefaultFieldCap) {
  return Field::make(p, ell, cap);
}

bool is_prime(std::uint64_t n);

/// Splits q = p^ell; throws std::invalid_argument when q is not a prime power.
std::pair<std::uint32_t, std::uint32_t> prime_power_split(std::uint64_t q);

/// Throws std::invalid_argument unless both fields are the same F_q.
void require_same_field(const Field& a, const Field& b);

}  // namespace ldt
