#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "ldt/gf.hpp"

namespace ldt {

/// A point of F_q^n, coordinate 1 first.
using Point = std::vector<Elem>;

struct PointHash {
  std::size_t operator()(const Point& x) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ull;
    for (Elem e : x) {
      h ^= e.idx + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

/// Reduced exponent vector, every coordinate in {0..q-1}.
using Exponent = std::vector<std::uint32_t>;

std::uint64_t weight(const Exponent& e);

/// The reduction induced by alpha^q = alpha: a >= 1 maps into {1..q-1},
/// 0 stays 0.
std::uint64_t reduce_exponent(std::uint64_t a, std::uint32_t q);

/// alpha^e = prod_i alpha_i^{e_i} with 0^0 = 1.
Elem monomial_value(const Field& f, const Exponent& e, std::span<const Elem> alpha);

/// All reduced exponent vectors of length n and weight <= max_weight in
/// lexicographic order.
std::vector<Exponent> enumerate_exponents(std::size_t n, std::uint32_t q, std::int64_t max_weight);
/// Number of vectors enumerate_exponents would return, without listing them.
std::uint64_t count_exponents(std::size_t n, std::uint32_t q, std::int64_t max_weight);

/// Sparse multivariate polynomial sum_e C_e x^e over F_q with reduced
/// exponents and no stored zero coefficients.
class SparsePolynomial {
 public:
  SparsePolynomial(FieldRef field, std::size_t n) : field_(std::move(field)), n_(n) {}

  static SparsePolynomial monomial(FieldRef field, Exponent e, Elem coef = Field::one());

  const FieldRef& field() const { return field_; }
  std::size_t arity() const { return n_; }
  const std::map<Exponent, Elem>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Adds coef * x^e; exponents above q-1 are reduced first.
  void add_term(Exponent e, Elem coef);
  Elem coefficient(const Exponent& e) const;

  /// Maximum term weight; -1 for the zero polynomial.
  std::int64_t degree() const;

  /// Throws std::invalid_argument on arity mismatch.
  Elem evaluate(std::span<const Elem> x) const;

  SparsePolynomial& operator+=(const SparsePolynomial& other);
  SparsePolynomial scaled(Elem c) const;

  friend bool operator==(const SparsePolynomial& a, const SparsePolynomial& b) {
    return a.field_->same_as(*b.field_) && a.n_ == b.n_ && a.terms_ == b.terms_;
  }

 private:
  FieldRef field_;
  std::size_t n_;
  std::map<Exponent, Elem> terms_;
};

inline constexpr std::uint64_t kDefaultTableCap = 1ull << 20;

/// Full truth table over F_q^k, points in lexicographic order with
/// coordinate 1 most significant.
class DenseTable {
 public:
  /// Zero table. Throws std::out_of_range when q^k exceeds `cap`.
  DenseTable(FieldRef field, std::size_t k, std::uint64_t cap = kDefaultTableCap);
  DenseTable(FieldRef field, std::size_t k, std::vector<Elem> values);

  const FieldRef& field() const { return field_; }
  std::size_t arity() const { return k_; }
  std::uint64_t size() const { return values_.size(); }
  const std::vector<Elem>& values() const { return values_; }
  std::vector<Elem>& values() { return values_; }

  Elem at(std::uint64_t index) const { return values_[index]; }
  Elem at(std::span<const Elem> x) const { return values_[index_of(x)]; }
  void set(std::span<const Elem> x, Elem v) { values_[index_of(x)] = v; }

  std::uint64_t index_of(std::span<const Elem> x) const;
  Point point_at(std::uint64_t index) const;

  friend bool operator==(const DenseTable& a, const DenseTable& b) {
    return a.field_->same_as(*b.field_) && a.k_ == b.k_ && a.values_ == b.values_;
  }

 private:
  FieldRef field_;
  std::size_t k_;
  std::vector<Elem> values_;
};

/// Number of points of F_q^k, or nullopt-like saturation at UINT64_MAX.
std::uint64_t domain_size(std::uint32_t q, std::size_t k);

/// Calls fn(point) for every point of F_q^k in lexicographic order.
void for_each_point(std::uint32_t q, std::size_t k, const std::function<void(const Point&)>& fn);

/// A function on F_q^k given by its nonzero values on a finite support.
class SupportFunction {
 public:
  SupportFunction(FieldRef field, std::size_t k) : field_(std::move(field)), k_(k) {}

  const FieldRef& field() const { return field_; }
  std::size_t arity() const { return k_; }
  const std::map<Point, Elem>& entries() const { return entries_; }
  std::size_t support_size() const { return entries_.size(); }

  /// Stores v at x; a zero value removes x from the support.
  void set(const Point& x, Elem v);
  Elem at(const Point& x) const;

  DenseTable to_table(std::uint64_t cap = kDefaultTableCap) const;

 private:
  FieldRef field_;
  std::size_t k_;
  std::map<Point, Elem> entries_;
};

DenseTable table_from_poly(const SparsePolynomial& f, std::uint64_t cap = kDefaultTableCap);

/// Unique reduced polynomial agreeing with the table, by coordinate-wise
/// univariate interpolation.
SparsePolynomial interpolate(const DenseTable& t);

/// Closed form of <x^e, x^e2> over F_q^n: (-1)^n when every coordinate sum
/// is q-1 or 2(q-1), otherwise 0.
Elem monomial_inner_product(const Field& field, const Exponent& e, const Exponent& e2);

Elem inner_product(const DenseTable& a, const DenseTable& b);
Elem inner_product(const DenseTable& a, const SparsePolynomial& b);
Elem inner_product(const SupportFunction& a, const DenseTable& b);
Elem inner_product(const SupportFunction& a, const SparsePolynomial& b);

struct Rational {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Rational&, const Rational&) = default;
};

inline constexpr std::uint64_t kDefaultCodewordCap = 1ull << 24;

/// Exact minimum fractional Hamming distance from t to RM[k,q,d] by
/// exhaustive enumeration of codewords. Throws std::out_of_range when the
/// code has more than `cap` codewords.
Rational distance_to_rm(const DenseTable& t, std::int64_t d, std::uint64_t cap = kDefaultCodewordCap);

/// Random polynomial of degree <= d: each exponent of weight <= d is kept
/// with probability `density` and given a uniform coefficient.
SparsePolynomial random_polynomial(FieldRef field, std::size_t n, std::int64_t d, double density,
                                   std::mt19937_64& rng);

/// Text form `q=<q> n=<n>; <coef>*x1^a1*x3^a3 + ...` (coefficients are
/// element indices; `0` denotes the zero polynomial).
std::string to_text(const SparsePolynomial& f);
/// Throws std::invalid_argument with the offending token on malformed input.
SparsePolynomial parse_polynomial(const std::string& text);

}  // namespace ldt
