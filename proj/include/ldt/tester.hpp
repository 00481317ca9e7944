#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ldt/charfind.hpp"
#include "ldt/oracle.hpp"
#include "ldt/space.hpp"

namespace ldt {

struct TestParams {
  std::int64_t d = 1;
  std::size_t k = 2;
  std::uint64_t m = 4;            // |S|
  std::uint64_t repetitions = 1;  // R
  double delta = 0.25;
  std::uint64_t t = 0;            // adversary budget, informational
  AffineSampling sampling = AffineSampling::kUniform;

  // Set by default_params.
  double theory_k = 0.0;
  bool impractical = false;        // theory k exceeds n
  bool outside_guarantee = false;  // t above the proven bound
};

/// Theory-driven parameters: k from the degree/budget formula (at least the
/// smallest legal k), m = min(sample size, q^k), R = ceil(100 m^2 / delta)
/// clipped to `max_repetitions` when given. Never throws on out-of-regime
/// inputs; it flags them instead.
TestParams default_params(const Field& field, std::int64_t d, double delta, std::uint64_t t, std::size_t n,
                          std::optional<std::uint64_t> max_repetitions = std::nullopt);

/// Throws std::invalid_argument naming the violated constraint.
void validate_params(const Field& field, const TestParams& params, std::size_t n);

/// Smallest k the field's characterization finder accepts.
std::size_t minimal_k(const Field& field, std::int64_t d);
/// Sample size the finder needs at dimension k, before clamping to q^k.
std::uint64_t required_sample_size(const Field& field, std::int64_t d, std::size_t k);

/// m distinct uniform points of F_q^k in uniformly random order.
std::vector<Point> sample_distinct_points(const Field& field, std::size_t k, std::uint64_t m, Rng& rng);

enum class Decision { kAccept, kReject };

enum class Cause {
  kHitViolation,
  kAllRoundsPassed,
  kCheckPassed,  // single round whose inner product vanished
  kEmptyH,
  kErasedRound,
  kIncompleteFlat,
  kFlatPassed,
};

const char* to_string(Decision d);
const char* to_string(Cause c);

struct RoundOutcome {
  Decision decision = Decision::kAccept;
  Cause cause = Cause::kCheckPassed;
  std::uint64_t queries = 0;
  std::uint64_t erased = 0;
  std::size_t support = 0;
};

struct Verdict {
  Decision decision = Decision::kAccept;
  Cause cause = Cause::kAllRoundsPassed;
  std::uint64_t round = 0;  // index of the deciding round (rounds_run when none)
  std::uint64_t rounds_run = 0;
  std::vector<RoundOutcome> audit;
  OracleStats stats;
};

/// One round: sample T and S, query f o T on S in shuffled order, find a
/// characterization on S and reject iff <f o T, h> != 0. Only values
/// already queried enter the inner product.
RoundOutcome random_points_test(QueryAccess& oracle, const TestParams& params, Rng& rng);

/// R rounds of random_points_test, rejecting on the first rejecting round.
Verdict erasure_resilient_test(AdversarialOracle& oracle, const TestParams& params, Rng& rng,
                               bool keep_audit = true);

/// Same control flow on an oracle in corruption mode.
Verdict corruption_test(AdversarialOracle& oracle, const TestParams& params, Rng& rng, bool keep_audit = true);

/// Dimension of the flats queried by the classical tester.
std::size_t classical_flat_dimension(const Field& field, std::int64_t d);

/// Baseline: query every point of a random injective flat in lexicographic
/// order and check the degree of the restriction. An erased answer ends the
/// test with Accept / incomplete-flat.
Verdict classical_flat_test(AdversarialOracle& oracle, std::int64_t d, Rng& rng,
                            std::uint64_t cap = kDefaultTableCap);

}  // namespace ldt
