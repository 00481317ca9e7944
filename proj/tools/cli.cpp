#include "cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "ldt/harness.hpp"

namespace ldt {
namespace {

struct Options {
  std::uint32_t p = 2;
  std::uint32_t ell = 1;
  std::optional<std::size_t> n;
  std::optional<std::size_t> k;
  std::int64_t d = 1;
  double delta = 0.25;
  std::uint64_t t = 0;
  std::optional<std::uint64_t> m;
  std::optional<std::uint64_t> trials;
  std::uint64_t seed = 0;
  std::string adversary = "null";
  std::optional<std::string> mode;
  std::string out = "json";
  std::string spec;
  std::optional<std::uint64_t> reps;
  std::string instance = "random";
  std::optional<std::int64_t> instance_degree;
  double density = 0.5;
  std::string points;
  unsigned workers = 1;
  std::string tester = "random-points";
  std::string sampling = "uniform";
  std::size_t window = 4;
  std::uint32_t constant = 1;
  bool banking = false;
};

std::vector<std::uint32_t> parse_list(const std::string& s, char sep) {
  std::vector<std::uint32_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (item.empty()) continue;
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) throw std::invalid_argument("not a non-negative integer: '" + item + "'");
    out.push_back(static_cast<std::uint32_t>(v));
  }
  return out;
}

// random | monomial:E1,E2,... | file:PATH | text:POLY | PATH
InstanceSpec parse_instance(const Options& o) {
  InstanceSpec inst;
  const std::string& s = o.instance;
  if (s == "random") {
    inst.kind = "random";
    inst.degree = o.instance_degree.value_or(o.d);
    inst.density = o.density;
  } else if (s.rfind("monomial:", 0) == 0) {
    inst.kind = "monomial";
    inst.exponent = parse_list(s.substr(9), ',');
  } else if (s.rfind("text:", 0) == 0) {
    inst.kind = "text";
    inst.text = s.substr(5);
  } else {
    inst.kind = "file";
    inst.path = s.rfind("file:", 0) == 0 ? s.substr(5) : s;
  }
  return inst;
}

AdversaryMode resolve_mode(const Options& o) {
  if (o.mode) return parse_adversary_mode(*o.mode);
  if (o.adversary == "null") return AdversaryMode::kNone;
  if (o.adversary == "value-corruptor" || o.adversary == "random-corruptor") return AdversaryMode::kCorruption;
  return AdversaryMode::kErasure;
}

AdversarySpec make_adversary(const Options& o) {
  AdversarySpec a;
  a.name = o.adversary;
  a.mode = resolve_mode(o);
  a.t = o.t;
  a.params.window = o.window;
  a.params.constant = o.constant;
  a.banking = o.banking;
  return a;
}

std::uint64_t repetitions_for(std::uint64_t m, double delta) {
  const double r = std::ceil(100.0 * static_cast<double>(m) * static_cast<double>(m) / delta);
  return r >= 1.8e19 ? UINT64_MAX : static_cast<std::uint64_t>(r);
}

// Theory defaults with flag overrides; k is clamped to n when the theory value does not fit.
TestParams make_params(const Field& f, const Options& o, std::size_t n) {
  TestParams p = default_params(f, o.d, o.delta, o.t, n);
  bool recompute = false;
  if (o.k) {
    p.k = *o.k;
    recompute = true;
  } else if (p.k > n) {
    p.k = std::max(n, minimal_k(f, o.d));
    recompute = true;
  }
  if (recompute && !o.m) {
    std::uint64_t need = UINT64_MAX;
    try {
      need = required_sample_size(f, o.d, p.k);
    } catch (const std::exception&) {
    }
    p.m = std::min(need, domain_size(f.q(), p.k));
  }
  if (o.m) p.m = *o.m;
  p.repetitions = o.reps ? *o.reps : repetitions_for(p.m, o.delta);
  if (o.sampling == "injective") {
    p.sampling = AffineSampling::kInjective;
  } else if (o.sampling != "uniform") {
    throw std::invalid_argument("unknown affine sampling mode '" + o.sampling + "'");
  }
  return p;
}

ExperimentSpec spec_from_flags(const Options& o, std::uint64_t default_trials) {
  ExperimentSpec s;
  s.p = o.p;
  s.ell = o.ell;
  s.n = o.n.value_or(8);
  s.instance = parse_instance(o);
  s.adversary = make_adversary(o);
  s.trials = o.trials.value_or(default_trials);
  s.seed = o.seed;
  s.workers = o.workers;
  const FieldRef f = make_field(o.p, o.ell);
  if (o.tester == "classical-flat") {
    s.tester = TesterKind::kClassicalFlat;
    s.params.d = o.d;
    s.params.k = classical_flat_dimension(*f, o.d);
    s.params.m = domain_size(f->q(), s.params.k);
    s.params.repetitions = 1;
    s.params.delta = o.delta;
    s.params.t = o.t;
  } else if (o.tester == "random-points") {
    s.params = make_params(*f, o, s.n);
  } else {
    throw std::invalid_argument("unknown tester '" + o.tester + "'");
  }
  return s;
}

void emit_report(const ExperimentReport& r, const Options& o, std::ostream& out) {
  if (o.out == "csv") {
    out << to_csv(r);
  } else {
    out << to_json(r).dump(2) << '\n';
  }
}

int cmd_characterize(const Options& o, std::ostream& out) {
  const FieldRef f = make_field(o.p, o.ell);
  const std::size_t k = o.k.value_or(minimal_k(*f, o.d));
  Rng rng = derive_stream(o.seed, 0);
  std::vector<Point> pts;
  if (!o.points.empty()) {
    std::stringstream ss(o.points);
    std::string item;
    while (std::getline(ss, item, ';')) {
      if (item.empty()) continue;
      const auto coords = parse_list(item, ',');
      if (coords.size() != k) throw std::invalid_argument("point '" + item + "' does not have k coordinates");
      Point x;
      for (auto c : coords) {
        if (c >= f->q()) throw std::invalid_argument("coordinate " + std::to_string(c) + " is not a field element");
        x.push_back(Elem{c});
      }
      pts.push_back(std::move(x));
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  } else {
    const std::uint64_t domain = domain_size(f->q(), k);
    std::uint64_t m = 0;
    if (o.m) {
      m = *o.m;
    } else {
      m = domain;
      try {
        m = std::min(m, required_sample_size(*f, o.d, k));
      } catch (const std::overflow_error&) {
      }
    }
    if (m > domain) throw std::invalid_argument("m exceeds q^k");
    if (m == domain) {
      for_each_point(f->q(), k, [&](const Point& x) { pts.push_back(x); });
    } else {
      pts = sample_distinct_points(*f, k, m, rng);
      std::sort(pts.begin(), pts.end());
    }
  }
  const auto c = find_characterization(f, pts, o.d, rng);
  if (!c) throw std::runtime_error("no characterization supported on the given points");
  out << to_json(*c).dump() << '\n';
  return 0;
}

int cmd_test(const Options& o, std::ostream& out) {
  const FieldRef f = make_field(o.p, o.ell);
  const std::size_t n = o.n.value_or(8);
  const TestParams params = make_params(*f, o, n);
  validate_params(*f, params, n);
  Rng rng = derive_stream(o.seed, 0);
  SparsePolynomial truth = make_instance(parse_instance(o), f, n, rng);
  const AdversarySpec a = make_adversary(o);
  StrategyParams sp = a.params;
  sp.seed = derive_seed(o.seed ^ 0xadc0ffee5eedull, 0);
  AdversarialOracle oracle(truth, a.mode, a.t, builtin_strategy(a.name, sp), a.banking);
  const Verdict v = a.mode == AdversaryMode::kCorruption ? corruption_test(oracle, params, rng)
                                                         : erasure_resilient_test(oracle, params, rng);
  nlohmann::json j = to_json(v, params);
  j["instance"] = to_text(truth);
  j["adversary"] = {{"name", a.name}, {"mode", to_string(a.mode)}, {"t", a.t}};
  out << j.dump(2) << '\n';
  return 0;
}

int cmd_experiment(const Options& o, std::ostream& out) {
  ExperimentSpec s;
  if (!o.spec.empty()) {
    std::ifstream in(o.spec);
    if (!in) throw std::invalid_argument("cannot open spec file '" + o.spec + "'");
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw std::invalid_argument(std::string("spec file is not valid JSON: ") + e.what());
    }
    s = spec_from_json(j);
    if (o.trials) s.trials = *o.trials;
    if (o.workers > 1) s.workers = o.workers;
  } else {
    s = spec_from_flags(o, 100);
  }
  emit_report(run_experiment(s), o, out);
  return 0;
}

int cmd_attack_demo(Options o, std::ostream& out) {
  if (o.adversary == "null") o.adversary = "span-eraser";
  if (o.t == 0) o.t = 1;
  if (!o.reps) o.reps = 20;
  Options classical = o;
  classical.tester = "classical-flat";
  Options random = o;
  random.tester = "random-points";
  const ExperimentReport a = run_experiment(spec_from_flags(classical, 100));
  const ExperimentReport b = run_experiment(spec_from_flags(random, 100));
  if (o.out == "csv") {
    const std::string rows = to_csv(b);
    out << to_csv(a) << rows.substr(rows.find('\n') + 1);
  } else {
    out << nlohmann::json{{"classical", to_json(a)}, {"random_points", to_json(b)}}.dump(2) << '\n';
  }
  return 0;
}

int cmd_distance(const Options& o, bool json, std::ostream& out) {
  if (o.instance == "random") throw std::invalid_argument("distance needs --instance FILE");
  const InstanceSpec inst = parse_instance(o);
  SparsePolynomial f(make_field(o.p, o.ell), 1);
  if (inst.kind == "file") {
    std::ifstream in(inst.path);
    if (!in) throw std::invalid_argument("cannot open instance file '" + inst.path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    f = parse_polynomial(os.str());
  } else if (inst.kind == "text") {
    f = parse_polynomial(inst.text);
  } else {
    Rng unused(0);
    f = make_instance(inst, make_field(o.p, o.ell), o.n.value_or(inst.exponent.size()), unused);
  }
  const Rational r = distance_to_rm(table_from_poly(f), o.d);
  if (json) {
    out << nlohmann::json{{"d", o.d}, {"num", r.num}, {"den", r.den}, {"distance", r.value()}}.dump() << '\n';
  } else {
    out << r.value() << '\n';
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Low-degree testing under online erasure and corruption adversaries"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--p", o.p, "field characteristic");
  app.add_option("--ell", o.ell, "extension degree (q = p^ell)");
  app.add_option("--n", o.n, "number of variables (default 8)");
  app.add_option("--k", o.k, "dimension of the sampled affine subspace");
  app.add_option("--d", o.d, "degree bound");
  app.add_option("--delta", o.delta, "distance parameter");
  app.add_option("--t", o.t, "adversary budget per query");
  app.add_option("--m", o.m, "number of sampled points per round");
  app.add_option("--trials", o.trials, "number of experiment trials");
  app.add_option("--seed", o.seed, "master seed");
  app.add_option("--adversary", o.adversary, "strategy name")->check(CLI::IsMember(builtin_strategy_names()));
  app.add_option("--mode", o.mode, "adversary mode")->check(CLI::IsMember({"none", "erasure", "corruption"}));
  auto* out_opt = app.add_option("--out", o.out, "output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--spec", o.spec, "experiment spec file (JSON)");
  app.add_option("--reps", o.reps, "number of rounds R");
  app.add_option("--instance", o.instance, "random | monomial:E1,E2,... | file:PATH | text:POLY | PATH");
  app.add_option("--instance-degree", o.instance_degree, "degree of random instances (default d)");
  app.add_option("--density", o.density, "fraction of monomials kept in random instances");
  app.add_option("--points", o.points, "explicit point set, e.g. '0,0;0,1;1,0'");
  app.add_option("--workers", o.workers, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--tester", o.tester, "tester kind")->check(CLI::IsMember({"random-points", "classical-flat"}));
  app.add_option("--sampling", o.sampling, "affine map sampling")->check(CLI::IsMember({"uniform", "injective"}));
  app.add_option("--window", o.window, "recent queries examined by flat-completing strategies");
  app.add_option("--constant", o.constant, "offset added by value-corruptor");
  app.add_flag("--banking", o.banking, "let unused budget carry over");

  auto* characterize = app.add_subcommand("characterize", "find a local characterization on a point set");
  auto* test = app.add_subcommand("test", "one full tester run with audit");
  auto* experiment = app.add_subcommand("experiment", "Monte-Carlo experiment from flags or --spec");
  auto* attack = app.add_subcommand("attack-demo", "classical flat tester vs random-points tester under attack");
  auto* distance = app.add_subcommand("distance", "exact relative distance of an instance to degree d");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*characterize) return cmd_characterize(o, out);
    if (*test) return cmd_test(o, out);
    if (*experiment) return cmd_experiment(o, out);
    if (*attack) return cmd_attack_demo(o, out);
    if (*distance) return cmd_distance(o, out_opt->count() > 0, out);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace ldt
