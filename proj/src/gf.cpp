#include "ldt/gf.hpp"

#include <sstream>
#include <stdexcept>

namespace ldt {
namespace {

using Poly = std::vector<std::uint32_t>;  // coefficients over F_p, low first

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo a monic b over F_p.
Poly poly_mod(Poly a, const Poly& b, std::uint32_t p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    const std::uint32_t lead = a.back();
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i) {
      const std::uint64_t sub = static_cast<std::uint64_t>(lead) * b[i] % p;
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

bool is_irreducible(const Poly& f, std::uint32_t p) {
  const std::size_t deg = f.size() - 1;
  if (deg <= 1) return true;
  // Trial division by every monic polynomial of degree 1..deg/2.
  for (std::size_t d = 1; d <= deg / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
      Poly g(d + 1, 0);
      g[d] = 1;
      std::uint64_t c = code;
      for (std::size_t i = 0; i < d; ++i) {
        g[i] = static_cast<std::uint32_t>(c % p);
        c /= p;
      }
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t f = 2; f * f <= n; ++f) {
    if (n % f == 0) {
      out.push_back(f);
      while (n % f == 0) n /= f;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Multiplication by schoolbook polynomial product; only used to build tables.
struct SlowArith {
  std::uint32_t p;
  std::uint32_t ell;
  Poly modulus;

  Poly unpack(std::uint32_t idx) const {
    Poly a(ell, 0);
    for (std::uint32_t i = 0; i < ell; ++i) {
      a[i] = idx % p;
      idx /= p;
    }
    return a;
  }
  std::uint32_t pack(const Poly& a) const {
    std::uint32_t idx = 0;
    for (std::size_t i = a.size(); i-- > 0;) idx = idx * p + a[i];
    return idx;
  }
  std::uint32_t mul(std::uint32_t x, std::uint32_t y) const {
    const Poly a = unpack(x);
    const Poly b = unpack(y);
    Poly c(2 * ell - 1, 0);
    for (std::uint32_t i = 0; i < ell; ++i)
      for (std::uint32_t j = 0; j < ell; ++j)
        c[i + j] = static_cast<std::uint32_t>((c[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p);
    Poly r = poly_mod(std::move(c), modulus, p);
    r.resize(ell, 0);
    return pack(r);
  }
  std::uint32_t pow(std::uint32_t x, std::uint64_t e) const {
    std::uint32_t r = 1;
    while (e > 0) {
      if (e & 1) r = mul(r, x);
      x = mul(x, x);
      e >>= 1;
    }
    return r;
  }
  std::uint32_t add(std::uint32_t x, std::uint32_t y) const {
    Poly a = unpack(x);
    const Poly b = unpack(y);
    for (std::uint32_t i = 0; i < ell; ++i) a[i] = (a[i] + b[i]) % p;
    return pack(a);
  }
};

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t f = 2; f * f <= n; ++f)
    if (n % f == 0) return false;
  return true;
}

std::pair<std::uint32_t, std::uint32_t> prime_power_split(std::uint64_t q) {
  if (q < 2) throw std::invalid_argument("field order must be >= 2");
  for (std::uint64_t f = 2; f <= q; ++f) {
    if (q % f != 0) continue;
    std::uint32_t ell = 0;
    std::uint64_t r = q;
    while (r % f == 0) {
      r /= f;
      ++ell;
    }
    if (r != 1) throw std::invalid_argument("field order " + std::to_string(q) + " is not a prime power");
    return {static_cast<std::uint32_t>(f), ell};
  }
  throw std::invalid_argument("field order is not a prime power");
}

void require_same_field(const Field& a, const Field& b) {
  if (!a.same_as(b))
    throw std::invalid_argument("mixed field contexts: " + a.describe() + " vs " + b.describe());
}

std::shared_ptr<const Field> Field::make(std::uint32_t p, std::uint32_t ell, std::uint32_t cap) {
  if (!ldt::is_prime(p)) throw std::invalid_argument("characteristic " + std::to_string(p) + " is not prime");
  if (ell == 0) throw std::invalid_argument("extension degree must be >= 1");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < ell; ++i) {
    q *= p;
    if (q > cap) throw std::out_of_range("field order exceeds cap " + std::to_string(cap));
  }

  // Smallest monic irreducible: enumerate lower coefficients as a base-p
  // number with x^{ell-1} most significant.
  Poly modulus;
  for (std::uint64_t code = 0; code < q; ++code) {
    Poly f(ell + 1, 0);
    f[ell] = 1;
    std::uint64_t c = code;
    for (std::uint32_t i = 0; i < ell; ++i) {
      f[i] = static_cast<std::uint32_t>(c % p);
      c /= p;
    }
    if (ell > 1 && f[0] == 0) continue;  // divisible by x
    if (is_irreducible(f, p)) {
      modulus = std::move(f);
      break;
    }
  }
  return std::shared_ptr<const Field>(new Field(p, ell, std::move(modulus)));
}

Field::Field(std::uint32_t p, std::uint32_t ell, std::vector<std::uint32_t> modulus)
    : p_(p), ell_(ell), q_(1), modulus_(std::move(modulus)) {
  for (std::uint32_t i = 0; i < ell; ++i) q_ *= p;
  const SlowArith slow{p, ell, modulus_};
  const std::uint64_t order = q_ - 1;
  const auto factors = prime_factors(order);

  generator_ = 0;
  for (std::uint32_t g = 1; g < q_; ++g) {
    bool ok = slow.pow(g, order) == 1;
    for (std::uint64_t f : factors) {
      if (!ok) break;
      if (slow.pow(g, order / f) == 1) ok = false;
    }
    if (ok) {
      generator_ = g;
      break;
    }
  }

  exp_.assign(2 * order, 0);
  log_.assign(q_, 0);
  std::uint32_t x = 1;
  for (std::uint64_t i = 0; i < order; ++i) {
    exp_[i] = x;
    exp_[i + order] = x;
    log_[x] = static_cast<std::uint32_t>(i);
    x = slow.mul(x, generator_);
  }
  zech_.assign(order, 0);
  for (std::uint64_t k = 0; k < order; ++k) zech_[k] = slow.add(1, exp_[k]);

  neg_.assign(q_, 0);
  for (std::uint32_t a = 0; a < q_; ++a) {
    Poly d = slow.unpack(a);
    for (auto& c : d) c = (p - c) % p;
    neg_[a] = slow.pack(d);
  }
}

Elem Field::inv(Elem a) const {
  if (a.idx == 0) throw std::domain_error("inverse of zero");
  const std::uint32_t l = log_[a.idx];
  return Elem{exp_[l == 0 ? 0 : (q_ - 1) - l]};
}

Elem Field::from_int(std::int64_t v) const {
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return Elem{static_cast<std::uint32_t>(r)};
}

Elem Field::power_sum(std::uint32_t i) const {
  if (i > q_ - 1) throw std::out_of_range("power_sum exponent out of range");
  return i == q_ - 1 ? neg(one()) : zero();
}

std::vector<std::uint32_t> Field::digits(Elem a) const {
  std::vector<std::uint32_t> d(ell_, 0);
  std::uint32_t v = a.idx;
  for (std::uint32_t i = 0; i < ell_; ++i) {
    d[i] = v % p_;
    v /= p_;
  }
  return d;
}

Elem Field::from_digits(std::span<const std::uint32_t> digits) const {
  std::uint32_t idx = 0;
  for (std::size_t i = digits.size(); i-- > 0;) idx = idx * p_ + digits[i] % p_;
  return Elem{idx};
}

std::string Field::describe() const {
  std::ostringstream os;
  os << "F_" << q_;
  if (ell_ > 1) {
    os << " mod ";
    bool first = true;
    for (std::size_t i = modulus_.size(); i-- > 0;) {
      if (modulus_[i] == 0) continue;
      if (!first) os << '+';
      first = false;
      if (modulus_[i] != 1 || i == 0) os << modulus_[i];
      if (i >= 1) os << 'x';
      if (i >= 2) os << '^' << i;
    }
  }
  return os.str();
}

}  // namespace ldt
