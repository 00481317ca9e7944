#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "ldt/poly.hpp"
#include "ldt/query.hpp"
#include "ldt/rng.hpp"

namespace ldt {

enum class AdversaryMode { kNone, kErasure, kCorruption };

const char* to_string(AdversaryMode m);
/// Accepts "none", "erasure", "corruption".
AdversaryMode parse_adversary_mode(const std::string& s);

struct QueryRecord {
  std::uint64_t ordinal = 0;
  Point point;
  Response outcome;  // nullopt = erased

  friend bool operator==(const QueryRecord&, const QueryRecord&) = default;
};

using PointSet = std::unordered_set<Point, PointHash>;
using PointMap = std::unordered_map<Point, Elem, PointHash>;

/// Everything an information-theoretic adversary may look at between queries.
struct AdversaryView {
  AdversaryMode mode;
  const Field& field;
  std::size_t n;
  std::uint64_t allowance;  // edits permitted in this round
  const std::vector<QueryRecord>& log;
  const SparsePolynomial& truth;
  const PointSet& queried;
  const PointSet& erased;
  const PointMap& corrupted;
};

/// One adversary edit. In erasure mode the value is ignored; in corruption
/// mode a missing value means truth(x) + 1.
struct Edit {
  Point point;
  std::optional<Elem> value;
};

class AdversaryStrategy {
 public:
  virtual ~AdversaryStrategy() = default;
  /// Called after every query; may return at most view.allowance edits
  /// (extra edits are dropped by the oracle).
  virtual std::vector<Edit> step(const AdversaryView& view) = 0;
  virtual std::string name() const = 0;
};

struct StrategyParams {
  std::size_t window = 4;     // recent queries considered by flat-completing strategies
  std::uint32_t constant = 1; // value-corruptor offset (nonzero element index)
  std::uint64_t seed = 0;     // randomized strategies
};

/// One of: null, pairwise-sum, span-eraser, random-eraser, value-corruptor,
/// random-corruptor. Throws std::invalid_argument on an unknown name.
std::unique_ptr<AdversaryStrategy> builtin_strategy(const std::string& name, const StrategyParams& params = {});

const std::vector<std::string>& builtin_strategy_names();

struct OracleStats {
  std::uint64_t queries = 0;
  std::uint64_t erased_hits = 0;
  std::uint64_t corrupted_hits = 0;
  std::uint64_t distinct_points = 0;
  std::uint64_t budget_spent = 0;

  friend bool operator==(const OracleStats&, const OracleStats&) = default;
};

/// The t-online-erasure / t-online-corruption query interface. Answers come
/// from the current erased/corrupted state; the strategy's edits are applied
/// after each answer and only affect later queries. Strictly sequential.
class AdversarialOracle final : public QueryAccess {
 public:
  /// Without banking the adversary gets t edits after each query; with
  /// banking unused allowance carries over.
  AdversarialOracle(SparsePolynomial truth, AdversaryMode mode, std::uint64_t budget_t,
                    std::unique_ptr<AdversaryStrategy> strategy, bool banking = false);
  /// Small explicit truth tables are interpolated first.
  AdversarialOracle(const DenseTable& truth, AdversaryMode mode, std::uint64_t budget_t,
                    std::unique_ptr<AdversaryStrategy> strategy, bool banking = false);

  Response query(std::span<const Elem> x) override;
  std::size_t arity() const override { return truth_.arity(); }
  const FieldRef& field() const override { return truth_.field(); }

  AdversaryMode mode() const { return mode_; }
  std::uint64_t budget() const { return t_; }
  const SparsePolynomial& truth() const { return truth_; }
  const std::vector<QueryRecord>& log() const { return log_; }
  const PointSet& erased() const { return erased_; }
  const PointMap& corrupted() const { return corrupted_; }
  OracleStats stats() const;

 private:
  SparsePolynomial truth_;
  AdversaryMode mode_;
  std::uint64_t t_;
  std::unique_ptr<AdversaryStrategy> strategy_;
  bool banking_;
  PointSet queried_;
  PointSet erased_;
  PointMap corrupted_;
  std::vector<QueryRecord> log_;
  std::uint64_t erased_hits_ = 0;
  std::uint64_t corrupted_hits_ = 0;
  std::uint64_t spent_ = 0;
};

/// JSON lines, one {"ordinal", "point", "outcome"} object per query;
/// erased outcomes are the string "erased".
void write_query_log(std::ostream& os, const std::vector<QueryRecord>& log);
std::vector<QueryRecord> read_query_log(std::istream& is);

/// Re-issues the logged points in order; true when every outcome matches.
bool replay(AdversarialOracle& oracle, const std::vector<QueryRecord>& log);

}  // namespace ldt
