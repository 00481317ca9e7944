#include "ldt/oracle.hpp"

#include <istream>
#include <nlohmann/json.hpp>
#include <ostream>
#include <stdexcept>

namespace ldt {

const char* to_string(AdversaryMode m) {
  switch (m) {
    case AdversaryMode::kNone:
      return "none";
    case AdversaryMode::kErasure:
      return "erasure";
    case AdversaryMode::kCorruption:
      return "corruption";
  }
  return "none";
}

AdversaryMode parse_adversary_mode(const std::string& s) {
  if (s == "none") return AdversaryMode::kNone;
  if (s == "erasure") return AdversaryMode::kErasure;
  if (s == "corruption") return AdversaryMode::kCorruption;
  throw std::invalid_argument("unknown adversary mode '" + s + "'");
}

AdversarialOracle::AdversarialOracle(SparsePolynomial truth, AdversaryMode mode, std::uint64_t budget_t,
                                     std::unique_ptr<AdversaryStrategy> strategy, bool banking)
    : truth_(std::move(truth)), mode_(mode), t_(budget_t), strategy_(std::move(strategy)), banking_(banking) {}

AdversarialOracle::AdversarialOracle(const DenseTable& truth, AdversaryMode mode, std::uint64_t budget_t,
                                     std::unique_ptr<AdversaryStrategy> strategy, bool banking)
    : AdversarialOracle(interpolate(truth), mode, budget_t, std::move(strategy), banking) {}

Response AdversarialOracle::query(std::span<const Elem> x) {
  if (x.size() != truth_.arity()) throw std::invalid_argument("query arity mismatch");
  Point pt(x.begin(), x.end());
  Response out;
  if (mode_ == AdversaryMode::kErasure && erased_.contains(pt)) {
    ++erased_hits_;
  } else if (mode_ == AdversaryMode::kCorruption && corrupted_.contains(pt)) {
    ++corrupted_hits_;
    out = corrupted_.at(pt);
  } else {
    out = truth_.evaluate(pt);
  }
  log_.push_back(QueryRecord{log_.size(), pt, out});
  queried_.insert(std::move(pt));

  if (mode_ == AdversaryMode::kNone || !strategy_ || t_ == 0) return out;
  const std::uint64_t allowance = banking_ ? t_ * log_.size() - spent_ : t_;
  if (allowance == 0) return out;
  const AdversaryView view{mode_,  *truth_.field(), truth_.arity(), allowance, log_,
                           truth_, queried_,        erased_,        corrupted_};
  auto edits = strategy_->step(view);
  if (edits.size() > allowance) edits.resize(allowance);
  const Field& f = *truth_.field();
  for (auto& e : edits) {
    if (e.point.size() != truth_.arity()) throw std::logic_error("adversary edit with wrong arity");
    if (mode_ == AdversaryMode::kErasure) {
      erased_.insert(std::move(e.point));
    } else {
      const Elem v = e.value ? *e.value : f.add(truth_.evaluate(e.point), Field::one());
      corrupted_[std::move(e.point)] = v;
    }
    ++spent_;
  }
  return out;
}

OracleStats AdversarialOracle::stats() const {
  return OracleStats{log_.size(), erased_hits_, corrupted_hits_, queried_.size(), spent_};
}

void write_query_log(std::ostream& os, const std::vector<QueryRecord>& log) {
  for (const auto& r : log) {
    nlohmann::json j;
    j["ordinal"] = r.ordinal;
    auto& pt = j["point"] = nlohmann::json::array();
    for (Elem e : r.point) pt.push_back(e.idx);
    if (r.outcome) {
      j["outcome"] = r.outcome->idx;
    } else {
      j["outcome"] = "erased";
    }
    os << j.dump() << '\n';
  }
}

std::vector<QueryRecord> read_query_log(std::istream& is) {
  std::vector<QueryRecord> out;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto j = nlohmann::json::parse(line);
    QueryRecord r;
    r.ordinal = j.at("ordinal").get<std::uint64_t>();
    for (const auto& v : j.at("point")) r.point.push_back(Elem{v.get<std::uint32_t>()});
    const auto& o = j.at("outcome");
    if (o.is_string()) {
      if (o.get<std::string>() != "erased") throw std::invalid_argument("bad outcome in query log");
    } else {
      r.outcome = Elem{o.get<std::uint32_t>()};
    }
    out.push_back(std::move(r));
  }
  return out;
}

bool replay(AdversarialOracle& oracle, const std::vector<QueryRecord>& log) {
  bool same = true;
  for (const auto& r : log) same = (oracle.query(r.point) == r.outcome) && same;
  return same;
}

}  // namespace ldt
