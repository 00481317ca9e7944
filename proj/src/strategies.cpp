#include <stdexcept>

#include "ldt/oracle.hpp"

namespace ldt {
namespace {

bool usable(const AdversaryView& v, const Point& x, const PointSet& chosen) {
  return !v.queried.contains(x) && !v.erased.contains(x) && !v.corrupted.contains(x) && !chosen.contains(x);
}

Point uniform_point(const Field& f, std::size_t n, Rng& rng) {
  std::uniform_int_distribution<std::uint32_t> coord(0, f.q() - 1);
  Point x(n);
  for (auto& c : x) c = Elem{coord(rng)};
  return x;
}

class NullStrategy final : public AdversaryStrategy {
 public:
  std::vector<Edit> step(const AdversaryView&) override { return {}; }
  std::string name() const override { return "null"; }
};

// x_i + x_j over past queries, pairs with the newest query first.
class PairwiseSum final : public AdversaryStrategy {
 public:
  std::vector<Edit> step(const AdversaryView& v) override {
    std::vector<Edit> out;
    PointSet chosen;
    const auto& log = v.log;
    std::size_t examined = 0;
    for (std::size_t i = log.size(); i-- > 0 && out.size() < v.allowance;) {
      for (std::size_t j = i; j-- > 0 && out.size() < v.allowance;) {
        if (++examined > kMaxPairs) return out;
        Point s(v.n);
        for (std::size_t c = 0; c < v.n; ++c) s[c] = v.field.add(log[i].point[c], log[j].point[c]);
        if (!usable(v, s, chosen)) continue;
        chosen.insert(s);
        out.push_back(Edit{std::move(s), std::nullopt});
      }
    }
    return out;
  }
  std::string name() const override { return "pairwise-sum"; }

 private:
  static constexpr std::size_t kMaxPairs = 1u << 14;
};

// Points that complete small affine flats through the newest query and
// some of the other most recent distinct queries. A subset {x0, x1..xs}
// contributes x0 + sum_i l_i (x_i - x0) with every l_i nonzero, so points
// already on a smaller sub-flat are not revisited.
class FlatCompleter {
 public:
  explicit FlatCompleter(std::size_t window) : window_(window) {}

  std::vector<Point> candidates(const AdversaryView& v, std::size_t want) const {
    std::vector<Point> recent;
    PointSet seen;
    for (std::size_t i = v.log.size(); i-- > 0 && recent.size() < window_;)
      if (seen.insert(v.log[i].point).second) recent.push_back(v.log[i].point);

    std::vector<Point> out;
    PointSet chosen;
    std::size_t examined = 0;
    const std::size_t others = recent.empty() ? 0 : recent.size() - 1;
    for (std::size_t size = 1; size <= others && out.size() < want; ++size) {
      // Subsets of {1..others} of the given size, lexicographic.
      std::vector<std::size_t> idx(size);
      for (std::size_t i = 0; i < size; ++i) idx[i] = i + 1;
      while (out.size() < want) {
        std::vector<Point> dirs;
        for (std::size_t i : idx) {
          Point d(v.n);
          for (std::size_t c = 0; c < v.n; ++c) d[c] = v.field.sub(recent[i][c], recent[0][c]);
          dirs.push_back(std::move(d));
        }
        std::vector<std::uint32_t> lambda(size, 1);
        while (out.size() < want) {
          if (++examined > kMaxCandidates) return out;
          Point x = recent[0];
          for (std::size_t i = 0; i < size; ++i)
            for (std::size_t c = 0; c < v.n; ++c)
              x[c] = v.field.add(x[c], v.field.mul(Elem{lambda[i]}, dirs[i][c]));
          if (usable(v, x, chosen)) {
            chosen.insert(x);
            out.push_back(std::move(x));
          }
          std::size_t pos = 0;
          while (pos < size && ++lambda[pos] == v.field.q()) lambda[pos++] = 1;
          if (pos == size) break;
        }
        std::size_t pos = size;
        while (pos > 0 && idx[pos - 1] == others - (size - pos)) --pos;
        if (pos == 0) break;
        ++idx[pos - 1];
        for (std::size_t i = pos; i < size; ++i) idx[i] = idx[i - 1] + 1;
      }
    }
    return out;
  }

 private:
  static constexpr std::size_t kMaxCandidates = 1u << 12;
  std::size_t window_;
};

class SpanEraser final : public AdversaryStrategy {
 public:
  explicit SpanEraser(std::size_t window) : flats_(window) {}
  std::vector<Edit> step(const AdversaryView& v) override {
    std::vector<Edit> out;
    for (auto& x : flats_.candidates(v, v.allowance)) out.push_back(Edit{std::move(x), std::nullopt});
    return out;
  }
  std::string name() const override { return "span-eraser"; }

 private:
  FlatCompleter flats_;
};

class ValueCorruptor final : public AdversaryStrategy {
 public:
  ValueCorruptor(std::size_t window, std::uint32_t constant) : flats_(window), constant_(constant) {
    if (constant == 0) throw std::invalid_argument("value-corruptor needs a nonzero constant");
  }
  std::vector<Edit> step(const AdversaryView& v) override {
    if (constant_ >= v.field.q()) throw std::invalid_argument("value-corruptor constant is not a field element");
    std::vector<Edit> out;
    for (auto& x : flats_.candidates(v, v.allowance)) {
      const Elem value = v.field.add(v.truth.evaluate(x), Elem{constant_});
      out.push_back(Edit{std::move(x), value});
    }
    return out;
  }
  std::string name() const override { return "value-corruptor"; }

 private:
  FlatCompleter flats_;
  std::uint32_t constant_;
};

class RandomEraser final : public AdversaryStrategy {
 public:
  explicit RandomEraser(std::uint64_t seed, bool corrupt) : rng_(seed), corrupt_(corrupt) {}
  std::vector<Edit> step(const AdversaryView& v) override {
    std::vector<Edit> out;
    std::uniform_int_distribution<std::uint32_t> value(0, v.field.q() - 1);
    for (std::uint64_t i = 0; i < v.allowance; ++i) {
      Point x = uniform_point(v.field, v.n, rng_);
      if (v.queried.contains(x)) continue;
      std::optional<Elem> val;
      if (corrupt_) val = Elem{value(rng_)};
      out.push_back(Edit{std::move(x), val});
    }
    return out;
  }
  std::string name() const override { return corrupt_ ? "random-corruptor" : "random-eraser"; }

 private:
  Rng rng_;
  bool corrupt_;
};

}  // namespace

const std::vector<std::string>& builtin_strategy_names() {
  static const std::vector<std::string> names{"null",         "pairwise-sum",    "span-eraser",
                                              "random-eraser", "value-corruptor", "random-corruptor"};
  return names;
}

std::unique_ptr<AdversaryStrategy> builtin_strategy(const std::string& name, const StrategyParams& params) {
  if (name == "null") return std::make_unique<NullStrategy>();
  if (name == "pairwise-sum") return std::make_unique<PairwiseSum>();
  if (name == "span-eraser") return std::make_unique<SpanEraser>(params.window);
  if (name == "random-eraser") return std::make_unique<RandomEraser>(params.seed, false);
  if (name == "value-corruptor") return std::make_unique<ValueCorruptor>(params.window, params.constant);
  if (name == "random-corruptor") return std::make_unique<RandomEraser>(params.seed, true);
  throw std::invalid_argument("unknown adversary strategy '" + name + "'");
}

}  // namespace ldt
