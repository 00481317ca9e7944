#pragma once

#include <cstddef>
#include <vector>

#include "ldt/gf.hpp"
#include "ldt/poly.hpp"
#include "ldt/query.hpp"
#include "ldt/rng.hpp"

namespace ldt {

/// Affine map T: F_q^k -> F_q^n, T(x) = A x + b.
class AffineMap {
 public:
  /// `matrix` is n x k, row-major.
  AffineMap(FieldRef field, std::size_t n, std::size_t k, std::vector<Elem> matrix, Point offset);

  const FieldRef& field() const { return field_; }
  std::size_t source_dim() const { return k_; }
  std::size_t target_dim() const { return n_; }
  Elem entry(std::size_t row, std::size_t col) const { return matrix_[row * k_ + col]; }
  const Point& offset() const { return offset_; }

  Point apply(std::span<const Elem> x) const;
  /// Rank of the linear part.
  std::size_t rank() const;

 private:
  FieldRef field_;
  std::size_t n_;
  std::size_t k_;
  std::vector<Elem> matrix_;
  Point offset_;
};

enum class AffineSampling { kUniform, kInjective };

/// Uniform over all affine maps (kUniform) or over those with an injective
/// linear part (kInjective, by rejection). Throws std::invalid_argument
/// unless 1 <= k <= n.
AffineMap sample_affine(FieldRef field, std::size_t n, std::size_t k, Rng& rng,
                        AffineSampling mode = AffineSampling::kUniform);

/// x -> (x_1, ..., x_k, 0, ..., 0).
AffineMap identity_embedding(FieldRef field, std::size_t n, std::size_t k);

/// f o T: each query at x issues exactly one query to the ambient oracle at
/// T(x) and forwards its response, erasures included.
class RestrictedOracle final : public QueryAccess {
 public:
  RestrictedOracle(QueryAccess& ambient, AffineMap map);

  Response query(std::span<const Elem> x) override { return ambient_.query(map_.apply(x)); }
  std::size_t arity() const override { return map_.source_dim(); }
  const FieldRef& field() const override { return map_.field(); }
  const AffineMap& map() const { return map_; }

 private:
  QueryAccess& ambient_;
  AffineMap map_;
};

inline RestrictedOracle restrict(QueryAccess& ambient, AffineMap map) {
  return RestrictedOracle(ambient, std::move(map));
}

/// Plain, unattacked query access to a polynomial.
class PolynomialOracle final : public QueryAccess {
 public:
  explicit PolynomialOracle(SparsePolynomial f) : f_(std::move(f)) {}

  Response query(std::span<const Elem> x) override { return f_.evaluate(x); }
  std::size_t arity() const override { return f_.arity(); }
  const FieldRef& field() const override { return f_.field(); }

 private:
  SparsePolynomial f_;
};

/// Rank of a rows x cols matrix over F_q (row-major).
std::size_t matrix_rank(const Field& f, std::vector<Elem> m, std::size_t rows, std::size_t cols);

}  // namespace ldt
