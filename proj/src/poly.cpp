#include "ldt/poly.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace ldt {

std::uint64_t weight(const Exponent& e) {
  return std::accumulate(e.begin(), e.end(), std::uint64_t{0});
}

std::uint64_t reduce_exponent(std::uint64_t a, std::uint32_t q) {
  if (a == 0) return 0;
  return (a - 1) % (q - 1) + 1;
}

Elem monomial_value(const Field& f, const Exponent& e, std::span<const Elem> alpha) {
  Elem v = Field::one();
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    v = f.mul(v, f.pow(alpha[i], e[i]));
    if (v.idx == 0) break;
  }
  return v;
}

namespace {

void enumerate_rec(std::size_t pos, std::uint32_t q, std::int64_t remaining, Exponent& cur,
                   std::vector<Exponent>& out) {
  if (pos == cur.size()) {
    out.push_back(cur);
    return;
  }
  const std::int64_t hi = std::min<std::int64_t>(q - 1, remaining);
  for (std::int64_t a = 0; a <= hi; ++a) {
    cur[pos] = static_cast<std::uint32_t>(a);
    enumerate_rec(pos + 1, q, remaining - a, cur, out);
  }
  cur[pos] = 0;
}

}  // namespace

std::vector<Exponent> enumerate_exponents(std::size_t n, std::uint32_t q, std::int64_t max_weight) {
  std::vector<Exponent> out;
  if (max_weight < 0) return out;
  Exponent cur(n, 0);
  enumerate_rec(0, q, max_weight, cur, out);
  return out;
}

std::uint64_t count_exponents(std::size_t n, std::uint32_t q, std::int64_t max_weight) {
  if (max_weight < 0) return 0;
  const auto w = static_cast<std::size_t>(std::min<std::int64_t>(max_weight, static_cast<std::int64_t>(n) * (q - 1)));
  // ways[s] = number of prefixes with weight exactly s
  std::vector<std::uint64_t> ways(w + 1, 0);
  ways[0] = 1;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::uint64_t> next(w + 1, 0);
    for (std::size_t s = 0; s <= w; ++s) {
      if (ways[s] == 0) continue;
      for (std::size_t a = 0; a < q && s + a <= w; ++a) next[s + a] += ways[s];
    }
    ways = std::move(next);
  }
  return std::accumulate(ways.begin(), ways.end(), std::uint64_t{0});
}

// ---------------------------------------------------------------------------

SparsePolynomial SparsePolynomial::monomial(FieldRef field, Exponent e, Elem coef) {
  SparsePolynomial f(std::move(field), e.size());
  f.add_term(std::move(e), coef);
  return f;
}

void SparsePolynomial::add_term(Exponent e, Elem coef) {
  if (e.size() != n_) throw std::invalid_argument("exponent arity mismatch");
  for (auto& a : e) a = static_cast<std::uint32_t>(reduce_exponent(a, field_->q()));
  if (coef.idx == 0) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(std::move(e), coef);
    return;
  }
  it->second = field_->add(it->second, coef);
  if (it->second.idx == 0) terms_.erase(it);
}

Elem SparsePolynomial::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Field::zero() : it->second;
}

std::int64_t SparsePolynomial::degree() const {
  std::int64_t d = -1;
  for (const auto& [e, c] : terms_) d = std::max<std::int64_t>(d, static_cast<std::int64_t>(weight(e)));
  return d;
}

Elem SparsePolynomial::evaluate(std::span<const Elem> x) const {
  if (x.size() != n_) throw std::invalid_argument("evaluate: arity mismatch");
  const Field& f = *field_;
  Elem acc = Field::zero();
  for (const auto& [e, c] : terms_) acc = f.add(acc, f.mul(c, monomial_value(f, e, x)));
  return acc;
}

SparsePolynomial& SparsePolynomial::operator+=(const SparsePolynomial& other) {
  require_same_field(*field_, *other.field_);
  if (other.n_ != n_) throw std::invalid_argument("polynomial arity mismatch");
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

SparsePolynomial SparsePolynomial::scaled(Elem c) const {
  SparsePolynomial out(field_, n_);
  if (c.idx == 0) return out;
  for (const auto& [e, v] : terms_) out.terms_.emplace(e, field_->mul(v, c));
  return out;
}

// ---------------------------------------------------------------------------

std::uint64_t domain_size(std::uint32_t q, std::size_t k) {
  std::uint64_t n = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (n > UINT64_MAX / q) return UINT64_MAX;
    n *= q;
  }
  return n;
}

void for_each_point(std::uint32_t q, std::size_t k, const std::function<void(const Point&)>& fn) {
  Point x(k, Elem{0});
  while (true) {
    fn(x);
    std::size_t i = k;
    while (i > 0) {
      --i;
      if (++x[i].idx < q) break;
      x[i].idx = 0;
      if (i == 0) return;
    }
    if (k == 0) return;
  }
}

DenseTable::DenseTable(FieldRef field, std::size_t k, std::uint64_t cap) : field_(std::move(field)), k_(k) {
  const std::uint64_t n = domain_size(field_->q(), k);
  if (n > cap) throw std::out_of_range("dense table of " + std::to_string(field_->q()) + "^" + std::to_string(k) +
                                       " points exceeds cap");
  values_.assign(n, Field::zero());
}

DenseTable::DenseTable(FieldRef field, std::size_t k, std::vector<Elem> values)
    : field_(std::move(field)), k_(k), values_(std::move(values)) {
  if (values_.size() != domain_size(field_->q(), k)) throw std::invalid_argument("table length must be q^k");
}

std::uint64_t DenseTable::index_of(std::span<const Elem> x) const {
  if (x.size() != k_) throw std::invalid_argument("table point arity mismatch");
  std::uint64_t idx = 0;
  for (Elem c : x) idx = idx * field_->q() + c.idx;
  return idx;
}

Point DenseTable::point_at(std::uint64_t index) const {
  Point x(k_);
  for (std::size_t i = k_; i-- > 0;) {
    x[i] = Elem{static_cast<std::uint32_t>(index % field_->q())};
    index /= field_->q();
  }
  return x;
}

void SupportFunction::set(const Point& x, Elem v) {
  if (x.size() != k_) throw std::invalid_argument("support point arity mismatch");
  if (v.idx == 0) {
    entries_.erase(x);
  } else {
    entries_[x] = v;
  }
}

Elem SupportFunction::at(const Point& x) const {
  auto it = entries_.find(x);
  return it == entries_.end() ? Field::zero() : it->second;
}

DenseTable SupportFunction::to_table(std::uint64_t cap) const {
  DenseTable t(field_, k_, cap);
  for (const auto& [x, v] : entries_) t.set(x, v);
  return t;
}

DenseTable table_from_poly(const SparsePolynomial& f, std::uint64_t cap) {
  DenseTable t(f.field(), f.arity(), cap);
  std::uint64_t i = 0;
  for_each_point(f.field()->q(), f.arity(), [&](const Point& x) { t.values()[i++] = f.evaluate(x); });
  return t;
}

SparsePolynomial interpolate(const DenseTable& t) {
  const Field& f = *t.field();
  const std::uint32_t q = f.q();
  const std::size_t k = t.arity();

  // Univariate transform: c_0 = g(0), c_j = -sum_a g(a) a^{q-1-j} for j >= 1.
  std::vector<Elem> m(static_cast<std::size_t>(q) * q);
  for (std::uint32_t j = 0; j < q; ++j) {
    for (std::uint32_t a = 0; a < q; ++a) {
      Elem v;
      if (j == 0) {
        v = a == 0 ? Field::one() : Field::zero();
      } else {
        v = f.neg(f.pow(Elem{a}, q - 1 - j));
      }
      m[static_cast<std::size_t>(j) * q + a] = v;
    }
  }

  std::vector<Elem> coef = t.values();
  std::vector<Elem> line(q), out(q);
  std::uint64_t stride = 1;
  for (std::size_t axis = 0; axis < k; ++axis) {
    const std::uint64_t block = stride * q;
    for (std::uint64_t base = 0; base < coef.size(); base += block) {
      for (std::uint64_t off = 0; off < stride; ++off) {
        for (std::uint32_t a = 0; a < q; ++a) line[a] = coef[base + off + a * stride];
        for (std::uint32_t j = 0; j < q; ++j) {
          Elem acc = Field::zero();
          const Elem* row = &m[static_cast<std::size_t>(j) * q];
          for (std::uint32_t a = 0; a < q; ++a)
            if (line[a].idx != 0 && row[a].idx != 0) acc = f.add(acc, f.mul(row[a], line[a]));
          out[j] = acc;
        }
        for (std::uint32_t j = 0; j < q; ++j) coef[base + off + j * stride] = out[j];
      }
    }
    stride = block;
  }

  SparsePolynomial p(t.field(), k);
  for (std::uint64_t i = 0; i < coef.size(); ++i) {
    if (coef[i].idx == 0) continue;
    const Point e = t.point_at(i);
    Exponent ex(k);
    for (std::size_t j = 0; j < k; ++j) ex[j] = e[j].idx;
    p.add_term(std::move(ex), coef[i]);
  }
  return p;
}

Elem monomial_inner_product(const Field& field, const Exponent& e, const Exponent& e2) {
  if (e.size() != e2.size()) throw std::invalid_argument("monomial_inner_product: arity mismatch");
  const std::uint64_t top = field.q() - 1;
  for (std::size_t i = 0; i < e.size(); ++i) {
    const std::uint64_t s = std::uint64_t{e[i]} + e2[i];
    if (s != top && s != 2 * top) return Field::zero();
  }
  return e.size() % 2 == 0 ? Field::one() : field.neg(Field::one());
}

namespace {

void check_compatible(const Field& a, std::size_t ka, const Field& b, std::size_t kb) {
  require_same_field(a, b);
  if (ka != kb) throw std::invalid_argument("inner product arity mismatch");
}

}  // namespace

Elem inner_product(const DenseTable& a, const DenseTable& b) {
  check_compatible(*a.field(), a.arity(), *b.field(), b.arity());
  const Field& f = *a.field();
  Elem acc = Field::zero();
  for (std::uint64_t i = 0; i < a.size(); ++i) acc = f.add(acc, f.mul(a.at(i), b.at(i)));
  return acc;
}

Elem inner_product(const DenseTable& a, const SparsePolynomial& b) {
  return inner_product(a, table_from_poly(b));
}

Elem inner_product(const SupportFunction& a, const DenseTable& b) {
  check_compatible(*a.field(), a.arity(), *b.field(), b.arity());
  const Field& f = *a.field();
  Elem acc = Field::zero();
  for (const auto& [x, v] : a.entries()) acc = f.add(acc, f.mul(v, b.at(x)));
  return acc;
}

Elem inner_product(const SupportFunction& a, const SparsePolynomial& b) {
  check_compatible(*a.field(), a.arity(), *b.field(), b.arity());
  const Field& f = *a.field();
  Elem acc = Field::zero();
  for (const auto& [x, v] : a.entries()) acc = f.add(acc, f.mul(v, b.evaluate(x)));
  return acc;
}

// ---------------------------------------------------------------------------

Rational distance_to_rm(const DenseTable& t, std::int64_t d, std::uint64_t cap) {
  const Field& f = *t.field();
  const std::size_t k = t.arity();
  const auto exps = enumerate_exponents(k, f.q(), d);

  // Enumerate codewords additively: the code is an F_p-space with basis
  // {p^i-th basis element of F_q} x {monomials of weight <= d}.
  std::uint64_t codewords = 1;
  for (std::size_t i = 0; i < exps.size(); ++i) {
    if (codewords > cap / f.q()) throw std::out_of_range("RM code too large for exhaustive distance");
    codewords *= f.q();
  }
  if (codewords > cap) throw std::out_of_range("RM code too large for exhaustive distance");

  std::vector<std::vector<Elem>> basis;
  for (const auto& e : exps) {
    const auto mono = table_from_poly(SparsePolynomial::monomial(t.field(), e));
    std::uint32_t scalar = 1;
    for (std::uint32_t i = 0; i < f.ell(); ++i, scalar *= f.p()) {
      std::vector<Elem> v(mono.size());
      for (std::uint64_t j = 0; j < mono.size(); ++j) v[j] = f.mul(Elem{scalar}, mono.at(j));
      basis.push_back(std::move(v));
    }
  }

  const auto& target = t.values();
  std::vector<Elem> cur(target.size(), Field::zero());
  auto mismatches = [&] {
    std::uint64_t c = 0;
    for (std::uint64_t i = 0; i < cur.size(); ++i) c += cur[i] != target[i];
    return c;
  };
  std::uint64_t best = mismatches();
  std::vector<std::uint32_t> digit(basis.size(), 0);
  while (best > 0) {
    std::size_t j = 0;
    bool done = false;
    while (true) {
      if (j == basis.size()) {
        done = true;
        break;
      }
      for (std::uint64_t i = 0; i < cur.size(); ++i) cur[i] = f.add(cur[i], basis[j][i]);
      if (++digit[j] < f.p()) break;
      digit[j] = 0;
      ++j;
    }
    if (done) break;
    best = std::min(best, mismatches());
  }

  const std::uint64_t den = target.size();
  const std::uint64_t g = std::gcd(best, den);
  return Rational{best / g, den / g};
}

SparsePolynomial random_polynomial(FieldRef field, std::size_t n, std::int64_t d, double density,
                                   std::mt19937_64& rng) {
  if (d > static_cast<std::int64_t>(n) * (field->q() - 1))
    throw std::invalid_argument("random_polynomial: degree exceeds n(q-1)");
  SparsePolynomial out(field, n);
  if (density <= 0.0) return out;
  std::bernoulli_distribution keep(std::min(density, 1.0));
  std::uniform_int_distribution<std::uint32_t> coef(0, field->q() - 1);
  for (auto& e : enumerate_exponents(n, field->q(), d)) {
    if (!keep(rng)) continue;
    out.add_term(std::move(e), Elem{coef(rng)});
  }
  return out;
}

}  // namespace ldt
