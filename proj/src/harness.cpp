#include "ldt/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace ldt {

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (phat + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

namespace {

const char* to_string(TesterKind k) { return k == TesterKind::kRandomPoints ? "random-points" : "classical-flat"; }

TesterKind parse_tester(const std::string& s) {
  if (s == "random-points") return TesterKind::kRandomPoints;
  if (s == "classical-flat") return TesterKind::kClassicalFlat;
  throw std::invalid_argument("unknown tester kind '" + s + "'");
}

const char* to_string(AffineSampling s) { return s == AffineSampling::kUniform ? "uniform" : "injective"; }

AffineSampling parse_sampling(const std::string& s) {
  if (s == "uniform") return AffineSampling::kUniform;
  if (s == "injective") return AffineSampling::kInjective;
  throw std::invalid_argument("unknown affine sampling mode '" + s + "'");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open instance file '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct TrialResult {
  Decision decision = Decision::kAccept;
  Cause cause = Cause::kAllRoundsPassed;
  std::uint64_t rounds = 0;
  OracleStats stats;
};

}  // namespace

SparsePolynomial make_instance(const InstanceSpec& inst, const FieldRef& field, std::size_t n, Rng& rng) {
  if (inst.kind == "random") return random_polynomial(field, n, inst.degree, inst.density, rng);
  if (inst.kind == "monomial") {
    if (inst.exponent.size() > n) throw std::invalid_argument("monomial exponent longer than n");
    Exponent e = inst.exponent;
    e.resize(n, 0);
    for (auto a : e)
      if (a > field->q() - 1) throw std::invalid_argument("monomial exponent entries must be <= q-1");
    return SparsePolynomial::monomial(field, std::move(e));
  }
  if (inst.kind == "file" || inst.kind == "text") {
    SparsePolynomial f = parse_polynomial(inst.kind == "file" ? read_file(inst.path) : inst.text);
    if (!f.field()->same_as(*field))
      throw std::invalid_argument("instance field " + f.field()->describe() + " differs from " + field->describe());
    if (f.arity() != n)
      throw std::invalid_argument("instance arity " + std::to_string(f.arity()) + " differs from n = " + std::to_string(n));
    return f;
  }
  throw std::invalid_argument("unknown instance kind '" + inst.kind + "'");
}

void validate_spec(const ExperimentSpec& spec) {
  const FieldRef field = make_field(spec.p, spec.ell);
  if (spec.n == 0) throw std::invalid_argument("n must be >= 1");
  Rng probe(0);
  (void)make_instance(spec.instance, field, spec.n, probe);
  (void)builtin_strategy(spec.adversary.name, spec.adversary.params);
  if (spec.adversary.mode == AdversaryMode::kNone && spec.adversary.name != "null" && spec.adversary.t > 0)
    throw std::invalid_argument("adversary '" + spec.adversary.name + "' needs --mode erasure or corruption");
  if (spec.tester == TesterKind::kRandomPoints) {
    validate_params(*field, spec.params, spec.n);
  } else {
    if (spec.adversary.mode == AdversaryMode::kCorruption)
      throw std::invalid_argument("classical-flat tester runs in erasure or none mode only");
    if (classical_flat_dimension(*field, spec.params.d) > spec.n)
      throw std::invalid_argument("flat dimension exceeds n");
  }
  if (spec.workers == 0) throw std::invalid_argument("workers must be >= 1");
}

ExperimentReport run_experiment(const ExperimentSpec& spec) {
  validate_spec(spec);
  const auto start = std::chrono::steady_clock::now();
  const FieldRef field = make_field(spec.p, spec.ell);

  SparsePolynomial fixed(field, spec.n);
  if (spec.instance.kind != "random") {
    Rng unused(0);
    fixed = make_instance(spec.instance, field, spec.n, unused);
  }

  std::vector<TrialResult> results(spec.trials);
  auto run_trial = [&](std::uint64_t i) {
    Rng rng = derive_stream(spec.seed, i);
    SparsePolynomial truth = spec.instance.kind == "random" ? make_instance(spec.instance, field, spec.n, rng) : fixed;
    StrategyParams sp = spec.adversary.params;
    sp.seed = derive_seed(spec.seed ^ 0xadc0ffee5eedull, i);
    AdversarialOracle oracle(std::move(truth), spec.adversary.mode, spec.adversary.t,
                             builtin_strategy(spec.adversary.name, sp), spec.adversary.banking);
    Verdict v;
    if (spec.tester == TesterKind::kClassicalFlat) {
      v = classical_flat_test(oracle, spec.params.d, rng);
    } else if (spec.adversary.mode == AdversaryMode::kCorruption) {
      v = corruption_test(oracle, spec.params, rng, false);
    } else {
      v = erasure_resilient_test(oracle, spec.params, rng, false);
    }
    results[i] = TrialResult{v.decision, v.cause, v.rounds_run, v.stats};
  };

  const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(spec.workers, std::max<std::uint64_t>(spec.trials, 1)));
  if (workers <= 1) {
    for (std::uint64_t i = 0; i < spec.trials; ++i) run_trial(i);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex failure_mu;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        try {
          for (std::uint64_t i = next++; i < spec.trials; i = next++) run_trial(i);
        } catch (...) {
          std::lock_guard lock(failure_mu);
          if (!failure) failure = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
  }

  ExperimentReport rep;
  rep.spec = spec;
  rep.trials = spec.trials;
  const double domain = std::pow(static_cast<double>(field->q()), static_cast<double>(spec.params.k));
  const double t = static_cast<double>(spec.adversary.t);
  std::uint64_t total_queries = 0, total_erased = 0, total_corrupted = 0, total_rounds = 0;
  double run_bound_sum = 0.0;
  for (const auto& r : results) {
    (r.decision == Decision::kAccept ? rep.accepts : rep.rejects) += 1;
    ++rep.causes[to_string(r.cause)];
    total_queries += r.stats.queries;
    total_rounds += r.rounds;
    rep.max_queries = std::max(rep.max_queries, r.stats.queries);
    total_erased += r.stats.erased_hits;
    total_corrupted += r.stats.corrupted_hits;
    rep.runs_with_erased_hit += r.stats.erased_hits > 0;
    rep.runs_with_corrupted_hit += r.stats.corrupted_hits > 0;
    const double qr = static_cast<double>(r.stats.queries);
    run_bound_sum += qr * (qr * t) / domain;
  }
  if (rep.trials > 0) {
    const double n = static_cast<double>(rep.trials);
    rep.mean_queries = static_cast<double>(total_queries) / n;
    rep.mean_rounds = static_cast<double>(total_rounds) / n;
    rep.mean_run_union_bound = run_bound_sum / n;
  }
  if (total_queries > 0) {
    rep.erased_hit_rate = static_cast<double>(total_erased) / static_cast<double>(total_queries);
    rep.corrupted_hit_rate = static_cast<double>(total_corrupted) / static_cast<double>(total_queries);
  }
  rep.accept_ci = wilson_interval(rep.accepts, rep.trials);
  rep.reject_ci = wilson_interval(rep.rejects, rep.trials);
  const double rm = static_cast<double>(spec.params.repetitions) * static_cast<double>(spec.params.m);
  rep.union_bound = rm * (rm * t) / domain;
  rep.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

// ---------------------------------------------------------------------------

nlohmann::json to_json(const ExperimentSpec& s) {
  nlohmann::json inst{{"kind", s.instance.kind}};
  if (s.instance.kind == "random") {
    inst["degree"] = s.instance.degree;
    inst["density"] = s.instance.density;
  } else if (s.instance.kind == "monomial") {
    inst["exponent"] = s.instance.exponent;
  } else if (s.instance.kind == "file") {
    inst["path"] = s.instance.path;
  } else {
    inst["text"] = s.instance.text;
  }
  return nlohmann::json{
      {"field", {{"p", s.p}, {"ell", s.ell}}},
      {"n", s.n},
      {"instance", inst},
      {"tester",
       {{"kind", to_string(s.tester)},
        {"d", s.params.d},
        {"k", s.params.k},
        {"m", s.params.m},
        {"repetitions", s.params.repetitions},
        {"delta", s.params.delta},
        {"sampling", to_string(s.params.sampling)}}},
      {"adversary",
       {{"name", s.adversary.name},
        {"mode", to_string(s.adversary.mode)},
        {"t", s.adversary.t},
        {"window", s.adversary.params.window},
        {"constant", s.adversary.params.constant},
        {"banking", s.adversary.banking}}},
      {"trials", s.trials},
      {"seed", s.seed},
      {"workers", s.workers},
  };
}

ExperimentSpec spec_from_json(const nlohmann::json& j) {
  ExperimentSpec s;
  try {
    if (j.contains("field")) {
      s.p = j["field"].value("p", s.p);
      s.ell = j["field"].value("ell", s.ell);
    }
    s.n = j.value("n", s.n);
    if (j.contains("instance")) {
      const auto& in = j["instance"];
      s.instance.kind = in.value("kind", s.instance.kind);
      s.instance.degree = in.value("degree", s.instance.degree);
      s.instance.density = in.value("density", s.instance.density);
      if (in.contains("exponent")) s.instance.exponent = in["exponent"].get<Exponent>();
      s.instance.path = in.value("path", s.instance.path);
      s.instance.text = in.value("text", s.instance.text);
    }
    if (j.contains("tester")) {
      const auto& te = j["tester"];
      s.tester = parse_tester(te.value("kind", std::string("random-points")));
      s.params.d = te.value("d", s.params.d);
      s.params.k = te.value("k", s.params.k);
      s.params.m = te.value("m", s.params.m);
      s.params.repetitions = te.value("repetitions", s.params.repetitions);
      s.params.delta = te.value("delta", s.params.delta);
      s.params.sampling = parse_sampling(te.value("sampling", std::string("uniform")));
    }
    if (j.contains("adversary")) {
      const auto& a = j["adversary"];
      s.adversary.name = a.value("name", s.adversary.name);
      s.adversary.mode = parse_adversary_mode(a.value("mode", std::string("none")));
      s.adversary.t = a.value("t", s.adversary.t);
      s.adversary.params.window = a.value("window", s.adversary.params.window);
      s.adversary.params.constant = a.value("constant", s.adversary.params.constant);
      s.adversary.banking = a.value("banking", s.adversary.banking);
    }
    s.trials = j.value("trials", s.trials);
    s.seed = j.value("seed", s.seed);
    s.workers = j.value("workers", s.workers);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed experiment spec: ") + e.what());
  }
  s.params.t = s.adversary.t;
  return s;
}

nlohmann::json to_json(const ExperimentReport& r, bool include_timing) {
  nlohmann::json j{
      {"schema", 1},
      {"spec", to_json(r.spec)},
      {"trials", r.trials},
      {"accepts", r.accepts},
      {"rejects", r.rejects},
      {"accept_rate", r.trials ? static_cast<double>(r.accepts) / static_cast<double>(r.trials) : 0.0},
      {"accept_ci", {r.accept_ci.lo, r.accept_ci.hi}},
      {"reject_ci", {r.reject_ci.lo, r.reject_ci.hi}},
      {"mean_queries", r.mean_queries},
      {"max_queries", r.max_queries},
      {"mean_rounds", r.mean_rounds},
      {"runs_with_erased_hit", r.runs_with_erased_hit},
      {"runs_with_corrupted_hit", r.runs_with_corrupted_hit},
      {"erased_hit_rate", r.erased_hit_rate},
      {"corrupted_hit_rate", r.corrupted_hit_rate},
      {"union_bound", r.union_bound},
      {"mean_run_union_bound", r.mean_run_union_bound},
      {"causes", r.causes},
  };
  if (include_timing) j["elapsed_seconds"] = r.elapsed_seconds;
  return j;
}

std::string to_csv(const ExperimentReport& r) {
  std::ostringstream os;
  os << "p,ell,n,d,k,m,repetitions,delta,adversary,mode,t,trials,seed,accepts,rejects,accept_lo,accept_hi,"
        "reject_lo,reject_hi,mean_queries,max_queries,runs_with_erased_hit,runs_with_corrupted_hit,"
        "erased_hit_rate,corrupted_hit_rate,union_bound,elapsed_seconds\n";
  const auto& s = r.spec;
  os << s.p << ',' << s.ell << ',' << s.n << ',' << s.params.d << ',' << s.params.k << ',' << s.params.m << ','
     << s.params.repetitions << ',' << s.params.delta << ',' << s.adversary.name << ',' << to_string(s.adversary.mode)
     << ',' << s.adversary.t << ',' << r.trials << ',' << s.seed << ',' << r.accepts << ',' << r.rejects << ','
     << r.accept_ci.lo << ',' << r.accept_ci.hi << ',' << r.reject_ci.lo << ',' << r.reject_ci.hi << ','
     << r.mean_queries << ',' << r.max_queries << ',' << r.runs_with_erased_hit << ',' << r.runs_with_corrupted_hit
     << ',' << r.erased_hit_rate << ',' << r.corrupted_hit_rate << ',' << r.union_bound << ',' << r.elapsed_seconds
     << '\n';
  return os.str();
}

nlohmann::json to_json(const Characterization& c) {
  nlohmann::json support = nlohmann::json::array();
  for (const auto& [x, v] : c.h.entries()) {
    nlohmann::json pt = nlohmann::json::array();
    for (Elem e : x) pt.push_back(e.idx);
    support.push_back({{"point", pt}, {"value", v.idx}});
  }
  return nlohmann::json{{"k", c.h.arity()},     {"q", c.h.field()->q()}, {"d", c.d},
                        {"mode", to_string(c.mode)}, {"witness", c.witness}, {"support", support}};
}

nlohmann::json to_json(const Verdict& v, const TestParams& params) {
  nlohmann::json audit = nlohmann::json::array();
  for (const auto& r : v.audit)
    audit.push_back({{"decision", to_string(r.decision)},
                     {"cause", to_string(r.cause)},
                     {"queries", r.queries},
                     {"erased", r.erased},
                     {"support", r.support}});
  return nlohmann::json{
      {"decision", to_string(v.decision)},
      {"cause", to_string(v.cause)},
      {"round", v.round},
      {"rounds_run", v.rounds_run},
      {"queries", v.stats.queries},
      {"erased_hits", v.stats.erased_hits},
      {"corrupted_hits", v.stats.corrupted_hits},
      {"budget_spent", v.stats.budget_spent},
      {"params",
       {{"d", params.d},
        {"k", params.k},
        {"m", params.m},
        {"repetitions", params.repetitions},
        {"delta", params.delta},
        {"t", params.t},
        {"theory_k", params.theory_k},
        {"impractical", params.impractical},
        {"outside_guarantee", params.outside_guarantee}}},
      {"audit", audit},
  };
}

}  // namespace ldt
