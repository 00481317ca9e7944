#include "ldt/space.hpp"

#include <stdexcept>

namespace ldt {

AffineMap::AffineMap(FieldRef field, std::size_t n, std::size_t k, std::vector<Elem> matrix, Point offset)
    : field_(std::move(field)), n_(n), k_(k), matrix_(std::move(matrix)), offset_(std::move(offset)) {
  if (matrix_.size() != n * k) throw std::invalid_argument("affine map matrix must be n x k");
  if (offset_.size() != n) throw std::invalid_argument("affine map offset must have length n");
}

Point AffineMap::apply(std::span<const Elem> x) const {
  if (x.size() != k_) throw std::invalid_argument("affine map input arity mismatch");
  const Field& f = *field_;
  Point y = offset_;
  for (std::size_t r = 0; r < n_; ++r) {
    Elem acc = y[r];
    const Elem* row = &matrix_[r * k_];
    for (std::size_t c = 0; c < k_; ++c)
      if (row[c].idx != 0 && x[c].idx != 0) acc = f.add(acc, f.mul(row[c], x[c]));
    y[r] = acc;
  }
  return y;
}

std::size_t AffineMap::rank() const { return matrix_rank(*field_, matrix_, n_, k_); }

std::size_t matrix_rank(const Field& f, std::vector<Elem> m, std::size_t rows, std::size_t cols) {
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && m[piv * cols + c].idx == 0) ++piv;
    if (piv == rows) continue;
    if (piv != rank)
      for (std::size_t j = 0; j < cols; ++j) std::swap(m[piv * cols + j], m[rank * cols + j]);
    const Elem inv = f.inv(m[rank * cols + c]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      const Elem factor = f.mul(m[r * cols + c], inv);
      if (factor.idx == 0) continue;
      for (std::size_t j = c; j < cols; ++j)
        m[r * cols + j] = f.sub(m[r * cols + j], f.mul(factor, m[rank * cols + j]));
    }
    ++rank;
  }
  return rank;
}

AffineMap sample_affine(FieldRef field, std::size_t n, std::size_t k, Rng& rng, AffineSampling mode) {
  if (k < 1 || k > n) throw std::invalid_argument("sample_affine requires 1 <= k <= n");
  std::uniform_int_distribution<std::uint32_t> coord(0, field->q() - 1);
  while (true) {
    std::vector<Elem> a(n * k);
    for (auto& v : a) v = Elem{coord(rng)};
    Point b(n);
    for (auto& v : b) v = Elem{coord(rng)};
    AffineMap t(field, n, k, std::move(a), std::move(b));
    if (mode == AffineSampling::kUniform || t.rank() == k) return t;
  }
}

AffineMap identity_embedding(FieldRef field, std::size_t n, std::size_t k) {
  if (k > n) throw std::invalid_argument("identity_embedding requires k <= n");
  std::vector<Elem> a(n * k, Field::zero());
  for (std::size_t i = 0; i < k; ++i) a[i * k + i] = Field::one();
  return AffineMap(field, n, k, std::move(a), Point(n, Field::zero()));
}

RestrictedOracle::RestrictedOracle(QueryAccess& ambient, AffineMap map) : ambient_(ambient), map_(std::move(map)) {
  require_same_field(*ambient_.field(), *map_.field());
  if (ambient_.arity() != map_.target_dim()) throw std::invalid_argument("restriction arity mismatch");
}

}  // namespace ldt
