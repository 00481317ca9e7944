#include "ldt/charfind.hpp"

#include <cmath>
#include <stdexcept>

namespace ldt {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 c = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    c = c * (n - i) / (i + 1);
    if (c > (static_cast<unsigned __int128>(1) << 63)) throw std::overflow_error("binomial coefficient overflow");
  }
  return static_cast<std::uint64_t>(c);
}

std::uint64_t sample_size_prime(std::int64_t d, std::uint64_t k) {
  if (d < 0) throw std::invalid_argument("degree must be >= 0");
  if (k < static_cast<std::uint64_t>(d) + 1) throw std::invalid_argument("sample_size_prime requires k >= d+1");
  const std::uint64_t c = binomial(static_cast<std::uint64_t>(d) + k + 1, k);
  if (c >= (std::uint64_t{1} << 63)) throw std::overflow_error("sample size overflow");
  return c + 1;
}

DegreeDecomposition decompose_degree(std::int64_t d, std::uint32_t q, std::uint32_t p) {
  if (d < 0) throw std::invalid_argument("degree must be >= 0");
  const std::uint64_t w = q - q / p;
  const std::uint64_t total = static_cast<std::uint64_t>(d) + 1;
  return {total / w, total % w};
}

Exponent target_exponent_nonprime(std::int64_t d, std::uint32_t q, std::uint32_t p, std::size_t k) {
  const auto [s, r] = decompose_degree(d, q, p);
  if (k <= s) throw std::invalid_argument("target exponent needs k >= s+1 (s = " + std::to_string(s) + ")");
  Exponent e(k, 0);
  for (std::size_t i = 0; i < s; ++i) e[i] = q - q / p;
  e[s] = q - 1;
  return e;
}

std::uint64_t sample_size_nonprime(std::int64_t d, std::uint32_t q, std::uint32_t p, std::size_t k) {
  const auto [s, r] = decompose_degree(d, q, p);
  const Exponent e = target_exponent_nonprime(d, q, p, k);
  const std::uint64_t dstar = weight(e);
  const double c = static_cast<double>(binomial(k + dstar, dstar));
  const double v = std::ceil(2.0 * std::pow(static_cast<double>(q), static_cast<double>(s + 1)) *
                             std::log(static_cast<double>(q)) * c);
  if (!(v < 9.2e18)) throw std::overflow_error("sample size overflow");
  return static_cast<std::uint64_t>(v);
}

ConstraintSystem build_system(FieldRef field, std::vector<Point> points, std::int64_t weight_cap, Exponent target) {
  ConstraintSystem sys;
  const std::size_t k = target.size();
  for (const auto& x : points)
    if (x.size() != k) throw std::invalid_argument("build_system: point arity mismatch");
  sys.rows = enumerate_exponents(k, field->q(), weight_cap);
  sys.rows.push_back(target);
  sys.target = std::move(target);
  sys.columns = std::move(points);
  sys.matrix.resize(sys.rows.size() * sys.columns.size());
  for (std::size_t r = 0; r < sys.rows.size(); ++r)
    for (std::size_t c = 0; c < sys.columns.size(); ++c)
      sys.matrix[r * sys.columns.size() + c] = monomial_value(*field, sys.rows[r], sys.columns[c]);
  sys.field = std::move(field);
  return sys;
}

std::vector<Elem> SolutionSpace::sample(const Field& f, Rng& rng) const {
  std::vector<Elem> z = particular;
  std::uniform_int_distribution<std::uint32_t> coef(0, f.q() - 1);
  for (const auto& b : basis) {
    const Elem c{coef(rng)};
    if (c.idx == 0) continue;
    for (std::size_t i = 0; i < z.size(); ++i)
      if (b[i].idx != 0) z[i] = f.add(z[i], f.mul(c, b[i]));
  }
  return z;
}

std::optional<SolutionSpace> solve(const ConstraintSystem& sys) {
  const Field& f = *sys.field;
  const std::size_t rows = sys.num_rows();
  const std::size_t cols = sys.num_cols();
  const std::size_t width = cols + 1;
  std::vector<Elem> m(rows * width);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) m[r * width + c] = sys.at(r, c);
    m[r * width + cols] = sys.rhs(r);
  }

  std::vector<std::size_t> pivot_col;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && m[piv * width + c].idx == 0) ++piv;
    if (piv == rows) continue;
    if (piv != rank)
      for (std::size_t j = 0; j < width; ++j) std::swap(m[piv * width + j], m[rank * width + j]);
    Elem* prow = &m[rank * width];
    const Elem inv = f.inv(prow[c]);
    for (std::size_t j = c; j < width; ++j) prow[j] = f.mul(prow[j], inv);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank) continue;
      Elem* row = &m[r * width];
      const Elem factor = row[c];
      if (factor.idx == 0) continue;
      for (std::size_t j = c; j < width; ++j)
        if (prow[j].idx != 0) row[j] = f.sub(row[j], f.mul(factor, prow[j]));
    }
    pivot_col.push_back(c);
    ++rank;
  }
  for (std::size_t r = rank; r < rows; ++r)
    if (m[r * width + cols].idx != 0) return std::nullopt;

  SolutionSpace out;
  out.rank = rank;
  out.particular.assign(cols, Field::zero());
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t i = 0; i < rank; ++i) {
    out.particular[pivot_col[i]] = m[i * width + cols];
    is_pivot[pivot_col[i]] = true;
  }
  for (std::size_t fc = 0; fc < cols; ++fc) {
    if (is_pivot[fc]) continue;
    std::vector<Elem> v(cols, Field::zero());
    v[fc] = Field::one();
    for (std::size_t i = 0; i < rank; ++i) v[pivot_col[i]] = f.neg(m[i * width + fc]);
    out.basis.push_back(std::move(v));
  }
  return out;
}

const char* to_string(CharMode m) { return m == CharMode::kPrime ? "prime" : "nonprime"; }

namespace {

// Weight-w exponents with entries <= top, lexicographic.
void exact_weight_rec(std::size_t pos, std::uint32_t top, std::uint64_t remaining, Exponent& cur,
                      std::vector<Exponent>& out) {
  if (pos == cur.size()) {
    if (remaining == 0) out.push_back(cur);
    return;
  }
  const std::uint64_t room = static_cast<std::uint64_t>(cur.size() - pos - 1) * top;
  const std::uint64_t lo = remaining > room ? remaining - room : 0;
  const std::uint64_t hi = std::min<std::uint64_t>(top, remaining);
  for (std::uint64_t a = lo; a <= hi; ++a) {
    cur[pos] = static_cast<std::uint32_t>(a);
    exact_weight_rec(pos + 1, top, remaining - a, cur, out);
  }
  cur[pos] = 0;
}

// Row-reduced copy of the zero rows, used to screen witness candidates
// without re-solving the full system for each.
struct ZeroRowBasis {
  std::vector<std::vector<Elem>> rows;
  std::vector<std::size_t> pivots;

  bool spans(const Field& f, std::vector<Elem> v) const {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const Elem factor = v[pivots[i]];
      if (factor.idx == 0) continue;
      for (std::size_t j = 0; j < v.size(); ++j)
        if (rows[i][j].idx != 0) v[j] = f.sub(v[j], f.mul(factor, rows[i][j]));
    }
    for (Elem e : v)
      if (e.idx != 0) return false;
    return true;
  }
};

ZeroRowBasis reduce_zero_rows(const Field& f, const std::vector<Point>& points, std::int64_t cap) {
  ZeroRowBasis b;
  const std::size_t k = points.empty() ? 0 : points.front().size();
  for (const auto& e : enumerate_exponents(k, f.q(), cap)) {
    std::vector<Elem> v(points.size());
    for (std::size_t c = 0; c < points.size(); ++c) v[c] = monomial_value(f, e, points[c]);
    for (std::size_t i = 0; i < b.rows.size(); ++i) {
      const Elem factor = v[b.pivots[i]];
      if (factor.idx == 0) continue;
      for (std::size_t j = 0; j < v.size(); ++j)
        if (b.rows[i][j].idx != 0) v[j] = f.sub(v[j], f.mul(factor, b.rows[i][j]));
    }
    std::size_t piv = 0;
    while (piv < v.size() && v[piv].idx == 0) ++piv;
    if (piv == v.size()) continue;
    const Elem inv = f.inv(v[piv]);
    for (auto& x : v) x = f.mul(x, inv);
    // Keep earlier rows reduced against the new pivot.
    for (auto& row : b.rows) {
      const Elem factor = row[piv];
      if (factor.idx == 0) continue;
      for (std::size_t j = 0; j < v.size(); ++j)
        if (v[j].idx != 0) row[j] = f.sub(row[j], f.mul(factor, v[j]));
    }
    b.rows.push_back(std::move(v));
    b.pivots.push_back(piv);
  }
  return b;
}

SupportFunction support_from(const FieldRef& field, std::size_t k, const std::vector<Point>& points,
                             const std::vector<Elem>& z) {
  SupportFunction h(field, k);
  for (std::size_t i = 0; i < points.size(); ++i) h.set(points[i], z[i]);
  return h;
}

std::size_t points_arity(const std::vector<Point>& points, std::size_t fallback) {
  return points.empty() ? fallback : points.front().size();
}

}  // namespace

std::optional<Characterization> find_characterization_prime(FieldRef field, const std::vector<Point>& points,
                                                            std::int64_t d, Rng& rng) {
  if (!field->is_prime()) throw std::invalid_argument("prime-field finder called on " + field->describe());
  if (d < 0) throw std::invalid_argument("degree must be >= 0");
  if (points.empty()) return std::nullopt;
  const Field& f = *field;
  const std::size_t k = points.front().size();

  std::vector<Exponent> candidates;
  Exponent cur(k, 0);
  exact_weight_rec(0, f.p() - 1, static_cast<std::uint64_t>(d) + 1, cur, candidates);

  const ZeroRowBasis zero_rows = reduce_zero_rows(f, points, d);
  for (const auto& e : candidates) {
    std::vector<Elem> v(points.size());
    for (std::size_t c = 0; c < points.size(); ++c) v[c] = monomial_value(f, e, points[c]);
    if (zero_rows.spans(f, std::move(v))) continue;
    const auto space = solve(build_system(field, points, d, e));
    if (!space) continue;
    return Characterization{support_from(field, k, points, space->sample(f, rng)), e, d, CharMode::kPrime};
  }
  return std::nullopt;
}

std::optional<Characterization> find_characterization_nonprime(FieldRef field, const std::vector<Point>& points,
                                                               std::int64_t d, Rng& rng) {
  if (field->is_prime()) throw std::invalid_argument("non-prime finder called on " + field->describe());
  const Field& f = *field;
  const std::size_t k = points_arity(points, 0);
  const auto [s, r] = decompose_degree(d, f.q(), f.p());
  if (points.empty()) return std::nullopt;
  if (k < s + 2) throw std::invalid_argument("non-prime finder requires k >= s+2 = " + std::to_string(s + 2));

  const Exponent target = target_exponent_nonprime(d, f.q(), f.p(), k);
  const auto dstar = static_cast<std::int64_t>(weight(target));
  const auto space = solve(build_system(field, points, dstar - 1, target));
  if (!space) return std::nullopt;
  const std::vector<Elem> h1 = space->sample(f, rng);

  SupportFunction h(field, k);
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (h1[i].idx == 0) continue;
    const Elem y = points[i][s];
    Elem factor = Field::zero();
    for (std::uint64_t rp = r; rp <= f.q() - 1; ++rp) factor = f.add(factor, f.pow(y, f.q() - 1 - rp));
    h.set(points[i], f.mul(h1[i], factor));
  }
  return Characterization{std::move(h), target, d, CharMode::kNonprime};
}

std::optional<Characterization> find_characterization(FieldRef field, const std::vector<Point>& points,
                                                      std::int64_t d, Rng& rng) {
  if (field->is_prime()) return find_characterization_prime(std::move(field), points, d, rng);
  return find_characterization_nonprime(std::move(field), points, d, rng);
}

namespace {

Elem support_inner(const SupportFunction& h, const Exponent& e) {
  const Field& f = *h.field();
  Elem acc = Field::zero();
  for (const auto& [x, v] : h.entries()) acc = f.add(acc, f.mul(v, monomial_value(f, e, x)));
  return acc;
}

std::string fmt_exponent(const Exponent& e) {
  std::string s = "(";
  for (std::size_t i = 0; i < e.size(); ++i) s += (i ? "," : "") + std::to_string(e[i]);
  return s + ")";
}

}  // namespace

VerifyResult verify_characterization(const Characterization& c, std::uint64_t cap) {
  const Field& f = *c.h.field();
  const std::size_t k = c.h.arity();
  if (domain_size(f.q(), k) > cap) throw std::out_of_range("verify_characterization: q^k exceeds table cap");
  if (c.h.support_size() == 0) return {false, "zero function cannot satisfy the witness condition"};
  if (c.witness.size() != k) return {false, "witness arity differs from h"};

  const SparsePolynomial poly = interpolate(c.h.to_table(cap));
  const std::int64_t qm1 = f.q() - 1;
  const std::int64_t dual_degree = static_cast<std::int64_t>(k) * qm1 - (c.d + 1);

  if (c.mode == CharMode::kPrime) {
    if (!f.is_prime()) return {false, "prime-mode characterization over a non-prime field"};
    if (static_cast<std::int64_t>(weight(c.witness)) != c.d + 1)
      return {false, "witness " + fmt_exponent(c.witness) + " does not have weight d+1"};
    if (support_inner(c.h, c.witness) != Field::one())
      return {false, "<h, x^witness> != 1 for witness " + fmt_exponent(c.witness)};
    for (const auto& e : enumerate_exponents(k, f.q(), c.d))
      if (support_inner(c.h, e).idx != 0) return {false, "<h, x^e> != 0 for e = " + fmt_exponent(e)};
    if (poly.degree() != dual_degree)
      return {false, "deg(h) = " + std::to_string(poly.degree()) + ", expected " + std::to_string(dual_degree)};
    return {true, ""};
  }

  const auto [s, r] = decompose_degree(c.d, f.q(), f.p());
  if (k < s + 2) return {false, "k < s+2"};
  if (poly.degree() > dual_degree)
    return {false, "deg(h) = " + std::to_string(poly.degree()) + " exceeds " + std::to_string(dual_degree)};
  for (std::uint64_t rp = r; rp <= f.q() - 1; ++rp) {
    Exponent e(k, 0);
    for (std::size_t i = 0; i < s; ++i) e[i] = f.q() / f.p() - 1;
    e[s] = static_cast<std::uint32_t>(f.q() - 1 - rp);
    for (std::size_t j = s + 1; j < k; ++j) e[j] = f.q() - 1;
    if (poly.coefficient(e).idx == 0) return {false, "h lacks the monomial x^" + fmt_exponent(e)};
  }
  return {true, ""};
}

}  // namespace ldt
