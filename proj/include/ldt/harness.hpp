#pragma once

#include <cstdint>
#include <map>
#include <nlohmann/json.hpp>
#include <string>

#include "ldt/tester.hpp"

namespace ldt {

/// Where each trial's ground truth comes from.
struct InstanceSpec {
  std::string kind = "random";  // random | monomial | file | text
  std::int64_t degree = 1;      // random: degree bound
  double density = 0.5;         // random: fraction of exponents kept
  Exponent exponent;            // monomial: padded with zeros up to n
  std::string path;             // file: polynomial text file
  std::string text;             // text: polynomial text inline
};

struct AdversarySpec {
  std::string name = "null";
  AdversaryMode mode = AdversaryMode::kNone;
  std::uint64_t t = 0;
  StrategyParams params;
  bool banking = false;
};

enum class TesterKind { kRandomPoints, kClassicalFlat };

struct ExperimentSpec {
  std::uint32_t p = 2;
  std::uint32_t ell = 1;
  std::size_t n = 2;
  InstanceSpec instance;
  TesterKind tester = TesterKind::kRandomPoints;
  TestParams params;  // d, k, m, repetitions, delta, sampling
  AdversarySpec adversary;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  unsigned workers = 1;
};

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

/// Wilson score interval for a binomial proportion (z = 1.96 by default).
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = 1.959963984540054);

struct ExperimentReport {
  ExperimentSpec spec;
  std::uint64_t trials = 0;
  std::uint64_t accepts = 0;
  std::uint64_t rejects = 0;
  Interval accept_ci;
  Interval reject_ci;
  double mean_queries = 0.0;
  std::uint64_t max_queries = 0;
  double mean_rounds = 0.0;
  std::uint64_t runs_with_erased_hit = 0;
  std::uint64_t runs_with_corrupted_hit = 0;
  double erased_hit_rate = 0.0;     // erased answers / queries
  double corrupted_hit_rate = 0.0;  // substituted answers / queries
  /// R m (R m t) / q^k from the spec's parameters.
  double union_bound = 0.0;
  /// Mean over runs of Q (Q t) / q^k with Q the run's actual query count.
  double mean_run_union_bound = 0.0;
  std::map<std::string, std::uint64_t> causes;
  double elapsed_seconds = 0.0;
};

/// Throws std::invalid_argument with a precise message when the spec cannot run.
void validate_spec(const ExperimentSpec& spec);

/// Runs spec.trials independent simulations; trial i draws all randomness
/// from derive_stream(spec.seed, i), so results do not depend on workers.
ExperimentReport run_experiment(const ExperimentSpec& spec);

/// Ground truth for one trial (random instances consume `rng`).
SparsePolynomial make_instance(const InstanceSpec& inst, const FieldRef& field, std::size_t n, Rng& rng);

nlohmann::json to_json(const ExperimentSpec& spec);
ExperimentSpec spec_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ExperimentReport& r, bool include_timing = true);
/// Header line plus one row of the report's scalar fields.
std::string to_csv(const ExperimentReport& r);

nlohmann::json to_json(const Characterization& c);
nlohmann::json to_json(const Verdict& v, const TestParams& params);

}  // namespace ldt
