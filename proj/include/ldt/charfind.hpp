#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ldt/gf.hpp"
#include "ldt/poly.hpp"
#include "ldt/rng.hpp"

namespace ldt {

/// Checked binomial coefficient; throws std::overflow_error past 2^63.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// C(d+k+1, k) + 1 points always carry a local characterization over F_p
/// once k >= d+1.
std::uint64_t sample_size_prime(std::int64_t d, std::uint64_t k);

/// d+1 = s (q - q/p) + r with 0 <= r < q - q/p.
struct DegreeDecomposition {
  std::uint64_t s = 0;
  std::uint64_t r = 0;
};

DegreeDecomposition decompose_degree(std::int64_t d, std::uint32_t q, std::uint32_t p);

/// (q-q/p) repeated s times, then q-1, then zeros. Throws
/// std::invalid_argument when k <= s.
Exponent target_exponent_nonprime(std::int64_t d, std::uint32_t q, std::uint32_t p, std::size_t k);

/// ceil(2 q^{s+1} ln(q) C(k+d*, d*)) with d* the weight of the target exponent.
std::uint64_t sample_size_nonprime(std::int64_t d, std::uint32_t q, std::uint32_t p, std::size_t k);

/// Linear system in the unknowns z_alpha (alpha in S):
///   sum_alpha z_alpha alpha^e = 0   for every reduced e with |e| <= cap,
///   sum_alpha z_alpha alpha^target = 1  (last row).
struct ConstraintSystem {
  FieldRef field;
  std::vector<Point> columns;
  std::vector<Exponent> rows;  // zero rows, then the target row last
  std::vector<Elem> matrix;    // rows.size() x columns.size(), row-major
  Exponent target;

  std::size_t num_rows() const { return rows.size(); }
  std::size_t num_cols() const { return columns.size(); }
  Elem at(std::size_t r, std::size_t c) const { return matrix[r * columns.size() + c]; }
  Elem rhs(std::size_t r) const { return r + 1 == rows.size() ? Field::one() : Field::zero(); }
};

ConstraintSystem build_system(FieldRef field, std::vector<Point> points, std::int64_t weight_cap, Exponent target);

/// Affine solution set: particular + span(basis).
struct SolutionSpace {
  std::vector<Elem> particular;
  std::vector<std::vector<Elem>> basis;
  std::size_t rank = 0;

  /// Uniform element of the affine space.
  std::vector<Elem> sample(const Field& f, Rng& rng) const;
};

/// Gauss-Jordan elimination with the first nonzero entry of each column as
/// pivot. Returns nullopt when the system is inconsistent.
std::optional<SolutionSpace> solve(const ConstraintSystem& sys);

enum class CharMode { kPrime, kNonprime };

const char* to_string(CharMode m);

struct Characterization {
  SupportFunction h;
  Exponent witness;
  std::int64_t d = 0;
  CharMode mode = CharMode::kPrime;
};

/// First solvable witness e* (|e*| = d+1, lexicographic) on S, then a
/// uniform sample of that system's solutions. Requires a prime field.
std::optional<Characterization> find_characterization_prime(FieldRef field, const std::vector<Point>& points,
                                                            std::int64_t d, Rng& rng);

/// Solve for h1 against the target exponent, then multiply pointwise by
/// sum_{r'=r}^{q-1} x_{s+1}^{q-1-r'}. Requires a non-prime field and
/// k >= s+2.
std::optional<Characterization> find_characterization_nonprime(FieldRef field, const std::vector<Point>& points,
                                                               std::int64_t d, Rng& rng);

/// Dispatches on whether the field is prime.
std::optional<Characterization> find_characterization(FieldRef field, const std::vector<Point>& points,
                                                      std::int64_t d, Rng& rng);

struct VerifyResult {
  bool ok = false;
  std::string reason;

  explicit operator bool() const { return ok; }
};

/// Independent certificate for a characterization, from its tabulated
/// interpolation and direct inner products.
VerifyResult verify_characterization(const Characterization& c, std::uint64_t cap = kDefaultTableCap);

}  // namespace ldt
