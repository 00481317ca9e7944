#include "ldt/tester.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace ldt {

const char* to_string(Decision d) { return d == Decision::kAccept ? "accept" : "reject"; }

const char* to_string(Cause c) {
  switch (c) {
    case Cause::kHitViolation:
      return "hit-violation";
    case Cause::kAllRoundsPassed:
      return "all-rounds-passed";
    case Cause::kCheckPassed:
      return "check-passed";
    case Cause::kEmptyH:
      return "empty-H";
    case Cause::kErasedRound:
      return "erased-round";
    case Cause::kIncompleteFlat:
      return "incomplete-flat";
    case Cause::kFlatPassed:
      return "flat-passed";
  }
  return "unknown";
}

std::size_t minimal_k(const Field& field, std::int64_t d) {
  if (field.is_prime()) return static_cast<std::size_t>(d) + 1;
  return decompose_degree(d, field.q(), field.p()).s + 2;
}

std::uint64_t required_sample_size(const Field& field, std::int64_t d, std::size_t k) {
  if (field.is_prime()) return sample_size_prime(d, k);
  return sample_size_nonprime(d, field.q(), field.p(), k);
}

TestParams default_params(const Field& field, std::int64_t d, double delta, std::uint64_t t, std::size_t n,
                          std::optional<std::uint64_t> max_repetitions) {
  TestParams p;
  p.d = d;
  p.delta = delta;
  p.t = t;
  const double q = field.q();
  const double tt = static_cast<double>(t);
  if (field.is_prime()) {
    // k = 20 d log_p(30 t / delta), valid for t <= (delta/30) p^{n/(20d)}
    if (d > 0 && t > 0) p.theory_k = 20.0 * d * std::log(30.0 * tt / delta) / std::log(q);
    if (d > 0) p.outside_guarantee = tt > (delta / 30.0) * std::pow(q, static_cast<double>(n) / (20.0 * d));
  } else {
    // k = 100 d* log_q(100 t q / delta), valid for t <= (delta/100) q^{n/(100(d+q)) - 1}
    const double dstar = static_cast<double>(weight(target_exponent_nonprime(d, field.q(), field.p(), minimal_k(field, d))));
    if (t > 0) p.theory_k = 100.0 * dstar * std::log(100.0 * tt * q / delta) / std::log(q);
    p.outside_guarantee = tt > (delta / 100.0) * std::pow(q, static_cast<double>(n) / (100.0 * (d + q)) - 1.0);
  }
  const double theory = std::max(0.0, std::ceil(p.theory_k - 1e-9));
  const std::size_t legal = minimal_k(field, d);
  p.k = theory > static_cast<double>(legal) ? static_cast<std::size_t>(std::min(theory, 1e9)) : legal;
  p.impractical = p.k > n;

  const std::uint64_t domain = domain_size(field.q(), p.k);
  std::uint64_t need = UINT64_MAX;
  try {
    need = required_sample_size(field, d, p.k);
  } catch (const std::overflow_error&) {
  }
  p.m = std::min(need, domain);
  const double reps = std::ceil(100.0 * static_cast<double>(p.m) * static_cast<double>(p.m) / delta);
  p.repetitions = reps >= 1.8e19 ? UINT64_MAX : static_cast<std::uint64_t>(reps);
  if (max_repetitions) p.repetitions = std::min(p.repetitions, *max_repetitions);
  return p;
}

void validate_params(const Field& field, const TestParams& p, std::size_t n) {
  if (p.d < 0) throw std::invalid_argument("degree d must be >= 0");
  const std::size_t legal = minimal_k(field, p.d);
  if (p.k < legal) throw std::invalid_argument("k = " + std::to_string(p.k) + " is below the minimum " + std::to_string(legal));
  if (p.k > n) throw std::invalid_argument("k = " + std::to_string(p.k) + " exceeds n = " + std::to_string(n));
  if (p.m == 0) throw std::invalid_argument("sample size m must be >= 1");
  if (p.m > domain_size(field.q(), p.k)) throw std::invalid_argument("sample size m exceeds q^k");
  if (!(p.delta > 0.0 && p.delta <= 1.0)) throw std::invalid_argument("delta must lie in (0, 1]");
}

namespace {

Point point_from_index(std::uint64_t idx, std::uint32_t q, std::size_t k) {
  Point x(k);
  for (std::size_t i = k; i-- > 0;) {
    x[i] = Elem{static_cast<std::uint32_t>(idx % q)};
    idx /= q;
  }
  return x;
}

}  // namespace

std::vector<Point> sample_distinct_points(const Field& f, std::size_t k, std::uint64_t m, Rng& rng) {
  if (m > domain_size(f.q(), k)) throw std::invalid_argument("sample size m exceeds q^k");
  const std::uint64_t domain = domain_size(f.q(), k);
  std::vector<Point> out;
  out.reserve(m);
  if (domain != UINT64_MAX && domain <= 4 * m) {
    std::vector<std::uint64_t> idx(domain);
    std::iota(idx.begin(), idx.end(), 0);
    for (std::uint64_t i = 0; i < m; ++i) {
      std::uniform_int_distribution<std::uint64_t> pick(i, domain - 1);
      std::swap(idx[i], idx[pick(rng)]);
      out.push_back(point_from_index(idx[i], f.q(), k));
    }
  } else {
    std::uniform_int_distribution<std::uint32_t> coord(0, f.q() - 1);
    std::unordered_set<Point, PointHash> seen;
    while (out.size() < m) {
      Point x(k);
      for (auto& c : x) c = Elem{coord(rng)};
      if (seen.insert(x).second) out.push_back(std::move(x));
    }
  }
  std::shuffle(out.begin(), out.end(), rng);
  return out;
}

RoundOutcome random_points_test(QueryAccess& oracle, const TestParams& params, Rng& rng) {
  const FieldRef& field = oracle.field();
  const Field& f = *field;
  AffineMap map = sample_affine(field, oracle.arity(), params.k, rng, params.sampling);
  std::vector<Point> points = sample_distinct_points(f, params.k, params.m, rng);

  RestrictedOracle restricted(oracle, std::move(map));
  std::unordered_map<Point, Elem, PointHash> answers;
  RoundOutcome out;
  for (const auto& x : points) {
    const Response r = restricted.query(x);
    ++out.queries;
    if (r) {
      answers.emplace(x, *r);
    } else {
      ++out.erased;
    }
  }
  if (out.erased > 0) {
    out.cause = Cause::kErasedRound;
    return out;
  }

  std::sort(points.begin(), points.end());
  const auto ch = find_characterization(field, points, params.d, rng);
  if (!ch) {
    out.cause = Cause::kEmptyH;
    return out;
  }
  out.support = ch->h.support_size();
  Elem acc = Field::zero();
  for (const auto& [x, v] : ch->h.entries()) acc = f.add(acc, f.mul(answers.at(x), v));
  if (acc.idx != 0) {
    out.decision = Decision::kReject;
    out.cause = Cause::kHitViolation;
  }
  return out;
}

namespace {

Verdict repeat_rounds(AdversarialOracle& oracle, const TestParams& params, Rng& rng, bool keep_audit) {
  validate_params(*oracle.field(), params, oracle.arity());
  Verdict v;
  for (std::uint64_t r = 0; r < params.repetitions; ++r) {
    const RoundOutcome o = random_points_test(oracle, params, rng);
    ++v.rounds_run;
    if (keep_audit) v.audit.push_back(o);
    if (o.decision == Decision::kReject) {
      v.decision = Decision::kReject;
      v.cause = Cause::kHitViolation;
      v.round = r;
      v.stats = oracle.stats();
      return v;
    }
  }
  v.round = v.rounds_run;
  v.stats = oracle.stats();
  return v;
}

}  // namespace

Verdict erasure_resilient_test(AdversarialOracle& oracle, const TestParams& params, Rng& rng, bool keep_audit) {
  if (oracle.mode() == AdversaryMode::kCorruption)
    throw std::invalid_argument("erasure_resilient_test needs an oracle in erasure or none mode");
  return repeat_rounds(oracle, params, rng, keep_audit);
}

Verdict corruption_test(AdversarialOracle& oracle, const TestParams& params, Rng& rng, bool keep_audit) {
  if (oracle.mode() != AdversaryMode::kCorruption)
    throw std::invalid_argument("corruption_test needs an oracle in corruption mode");
  return repeat_rounds(oracle, params, rng, keep_audit);
}

std::size_t classical_flat_dimension(const Field& field, std::int64_t d) {
  const std::uint64_t w = field.q() - field.q() / field.p();
  const std::uint64_t need = (static_cast<std::uint64_t>(d) + 1 + w - 1) / w;
  return static_cast<std::size_t>(need + (field.is_prime() ? 0 : 1));
}

Verdict classical_flat_test(AdversarialOracle& oracle, std::int64_t d, Rng& rng, std::uint64_t cap) {
  const FieldRef& field = oracle.field();
  const std::size_t dim = classical_flat_dimension(*field, d);
  if (dim > oracle.arity()) throw std::invalid_argument("flat dimension exceeds n");
  if (domain_size(field->q(), dim) > cap) throw std::out_of_range("flat has more points than the table cap");

  RestrictedOracle flat(oracle, sample_affine(field, oracle.arity(), dim, rng, AffineSampling::kInjective));
  DenseTable table(field, dim, cap);
  RoundOutcome round;
  std::uint64_t i = 0;
  for_each_point(field->q(), dim, [&](const Point& x) {
    const Response r = flat.query(x);
    ++round.queries;
    if (r) {
      table.values()[i] = *r;
    } else {
      ++round.erased;
    }
    ++i;
  });

  Verdict v;
  v.rounds_run = 1;
  if (round.erased > 0) {
    v.cause = round.cause = Cause::kIncompleteFlat;
  } else if (interpolate(table).degree() <= d) {
    v.cause = round.cause = Cause::kFlatPassed;
  } else {
    v.decision = round.decision = Decision::kReject;
    v.cause = round.cause = Cause::kHitViolation;
  }
  v.audit.push_back(round);
  v.stats = oracle.stats();
  return v;
}

}  // namespace ldt
