#include "ldt/harness.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace ldt;

namespace {

ExperimentSpec small_spec() {
  ExperimentSpec s;
  s.p = 2;
  s.n = 6;
  s.instance.kind = "random";
  s.instance.degree = 2;
  s.params.d = 2;
  s.params.k = 4;
  s.params.m = 16;
  s.params.repetitions = 3;
  s.adversary.name = "span-eraser";
  s.adversary.mode = AdversaryMode::kErasure;
  s.adversary.t = 2;
  s.trials = 40;
  s.seed = 123;
  return s;
}

std::size_t count(const std::string& s, char c) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), c)); }

}  // namespace

TEST(Wilson, KnownValues) {
  const Interval all = wilson_interval(200, 200);
  EXPECT_NEAR(all.lo, 0.98116, 1e-4);
  EXPECT_DOUBLE_EQ(all.hi, 1.0);
  const Interval half = wilson_interval(50, 100);
  EXPECT_NEAR(half.lo, 0.40383, 1e-4);
  EXPECT_NEAR(half.hi, 0.59617, 1e-4);
  const Interval none = wilson_interval(0, 0);
  EXPECT_EQ(none.lo, 0.0);
  EXPECT_EQ(none.hi, 1.0);
}

TEST(Wilson, ContainsPointEstimate) {
  for (std::uint64_t n : {1u, 7u, 30u, 200u, 5000u})
    for (std::uint64_t k = 0; k <= n; k += std::max<std::uint64_t>(1, n / 13)) {
      const Interval ci = wilson_interval(k, n);
      const double phat = static_cast<double>(k) / static_cast<double>(n);
      EXPECT_LE(ci.lo, phat + 1e-12);
      EXPECT_GE(ci.hi, phat - 1e-12);
      EXPECT_GE(ci.lo, 0.0);
      EXPECT_LE(ci.hi, 1.0);
    }
}

TEST(Experiment, ZeroTrials) {
  ExperimentSpec s = small_spec();
  s.trials = 0;
  const auto r = run_experiment(s);
  EXPECT_EQ(r.trials, 0u);
  EXPECT_EQ(r.accepts + r.rejects, 0u);
  EXPECT_EQ(r.mean_queries, 0.0);
}

TEST(Experiment, CompletenessUnderErasure) {
  const auto r = run_experiment(small_spec());
  EXPECT_EQ(r.accepts, r.trials);
  EXPECT_EQ(r.rejects, 0u);
  EXPECT_EQ(r.accepts + r.rejects, r.trials);
  EXPECT_LE(r.accept_ci.lo, 1.0);
  EXPECT_EQ(r.accept_ci.hi, 1.0);
}

TEST(Experiment, DeterministicAcrossRunsAndWorkers) {
  ExperimentSpec s = small_spec();
  s.instance.kind = "monomial";
  s.instance.exponent = {1, 1, 1};
  s.adversary.name = "random-eraser";
  const std::string a = to_json(run_experiment(s), false).dump();
  const std::string b = to_json(run_experiment(s), false).dump();
  EXPECT_EQ(a, b);
  s.workers = 3;
  auto c = to_json(run_experiment(s), false);
  c["spec"]["workers"] = 1;
  EXPECT_EQ(a, c.dump());
}

TEST(Experiment, FarInstanceRejects) {
  ExperimentSpec s;
  s.p = 2;
  s.n = 8;
  s.instance.kind = "monomial";
  s.instance.exponent = {1, 1};
  s.params.d = 1;
  s.params.k = 4;
  s.params.m = 16;
  s.params.repetitions = 200;
  s.trials = 30;
  s.seed = 5;
  const auto r = run_experiment(s);
  EXPECT_EQ(r.rejects, 30u);
  EXPECT_EQ(r.causes.at("hit-violation"), 30u);
  EXPECT_GT(r.mean_queries, 0.0);
  EXPECT_LE(r.mean_queries, static_cast<double>(r.max_queries));
}

TEST(Experiment, ClassicalFlatTester) {
  ExperimentSpec s;
  s.p = 2;
  s.n = 6;
  s.instance.kind = "monomial";
  s.instance.exponent = {1, 1};
  s.tester = TesterKind::kClassicalFlat;
  s.params.d = 1;
  s.params.k = 2;
  s.adversary.name = "span-eraser";
  s.adversary.mode = AdversaryMode::kErasure;
  s.adversary.t = 1;
  s.trials = 25;
  const auto r = run_experiment(s);
  EXPECT_EQ(r.causes.at("incomplete-flat"), 25u);
  EXPECT_EQ(r.runs_with_erased_hit, 25u);
}

TEST(Experiment, UnionBoundReported) {
  ExperimentSpec s = small_spec();
  const auto r = run_experiment(s);
  const double rm = 3.0 * 16.0;
  EXPECT_DOUBLE_EQ(r.union_bound, rm * rm * 2.0 / 16.0);
  EXPECT_GT(r.mean_run_union_bound, 0.0);
  EXPECT_LE(r.mean_run_union_bound, r.union_bound + 1e-9);
}

TEST(Experiment, InvalidSpecsHavePreciseMessages) {
  auto expect_msg = [](ExperimentSpec s, const std::string& needle) {
    try {
      run_experiment(s);
      ADD_FAILURE() << "no error for " << needle;
    } catch (const std::invalid_argument& e) {
      EXPECT_NE(std::string(e.what()).find(needle), std::string::npos) << e.what();
    }
  };
  ExperimentSpec s = small_spec();
  s.params.k = 2;
  expect_msg(s, "below the minimum");
  s = small_spec();
  s.params.k = 9;
  expect_msg(s, "exceeds n");
  s = small_spec();
  s.adversary.name = "teleporter";
  expect_msg(s, "unknown adversary strategy");
  s = small_spec();
  s.instance.kind = "file";
  s.instance.path = "/nonexistent/poly.txt";
  expect_msg(s, "cannot open");
  s = small_spec();
  s.instance.kind = "text";
  s.instance.text = "q=2 n=3; 1*x1";
  expect_msg(s, "arity");
  s = small_spec();
  s.p = 6;
  expect_msg(s, "not prime");
  s = small_spec();
  s.params.m = 17;
  expect_msg(s, "exceeds q^k");
}

TEST(Instances, MonomialPaddingAndFile) {
  auto f = make_field(3, 1);
  Rng rng(0);
  InstanceSpec m;
  m.kind = "monomial";
  m.exponent = {2, 1};
  const auto g = make_instance(m, f, 4, rng);
  EXPECT_EQ(g, SparsePolynomial::monomial(f, {2, 1, 0, 0}));
  m.exponent = {3};
  EXPECT_THROW(make_instance(m, f, 4, rng), std::invalid_argument);

  const auto path = std::filesystem::temp_directory_path() / "ldt_harness_instance.poly";
  {
    std::ofstream out(path);
    out << to_text(g) << '\n';
  }
  InstanceSpec file;
  file.kind = "file";
  file.path = path.string();
  EXPECT_EQ(make_instance(file, f, 4, rng), g);
  EXPECT_THROW(make_instance(file, make_field(5, 1), 4, rng), std::invalid_argument);
  std::filesystem::remove(path);
}

TEST(Serialization, SpecRoundTrip) {
  ExperimentSpec s = small_spec();
  s.params.sampling = AffineSampling::kInjective;
  s.adversary.banking = true;
  s.adversary.params.window = 6;
  const auto j = to_json(s);
  EXPECT_EQ(to_json(spec_from_json(j)), j);
  ExperimentSpec c = small_spec();
  c.tester = TesterKind::kClassicalFlat;
  c.instance.kind = "text";
  c.instance.text = "q=2 n=6; 1*x1^1*x2^1";
  EXPECT_EQ(to_json(spec_from_json(to_json(c))), to_json(c));
  EXPECT_THROW(spec_from_json(nlohmann::json{{"n", "six"}}), std::invalid_argument);
  EXPECT_THROW(spec_from_json(nlohmann::json{{"tester", {{"kind", "oracle"}}}}), std::invalid_argument);
}

TEST(Serialization, ReportShape) {
  const auto r = run_experiment(small_spec());
  const auto j = to_json(r);
  EXPECT_EQ(j.at("schema"), 1);
  EXPECT_EQ(j.at("spec"), to_json(small_spec()));
  EXPECT_TRUE(j.contains("elapsed_seconds"));
  EXPECT_FALSE(to_json(r, false).contains("elapsed_seconds"));
  EXPECT_EQ(j.at("accepts").get<std::uint64_t>() + j.at("rejects").get<std::uint64_t>(), 40u);

  const std::string csv = to_csv(r);
  const auto nl = csv.find('\n');
  ASSERT_NE(nl, std::string::npos);
  EXPECT_EQ(count(csv.substr(0, nl), ','), count(csv.substr(nl + 1), ','));
  EXPECT_EQ(count(csv, '\n'), 2u);
}

TEST(Serialization, CharacterizationAndVerdict) {
  auto f = make_field(2, 1);
  std::vector<Point> plane;
  for_each_point(2, 2, [&](const Point& x) { plane.push_back(x); });
  Rng rng(0);
  const auto c = find_characterization(f, plane, 1, rng);
  ASSERT_TRUE(c);
  const auto j = to_json(*c);
  EXPECT_EQ(j.at("k"), 2);
  EXPECT_EQ(j.at("q"), 2);
  EXPECT_EQ(j.at("d"), 1);
  EXPECT_EQ(j.at("mode"), "prime");
  EXPECT_EQ(j.at("witness"), nlohmann::json::array({1, 1}));
  ASSERT_EQ(j.at("support").size(), 4u);
  EXPECT_EQ(j.at("support")[3].at("point"), nlohmann::json::array({1, 1}));
  EXPECT_EQ(j.at("support")[3].at("value"), 1);

  AdversarialOracle o(SparsePolynomial::monomial(f, {1, 1, 0}), AdversaryMode::kNone, 0, nullptr);
  TestParams p;
  p.d = 1;
  p.k = 2;
  p.m = 4;
  p.repetitions = 50;
  const Verdict v = erasure_resilient_test(o, p, rng);
  const auto vj = to_json(v, p);
  for (const char* key : {"decision", "cause", "round", "rounds_run", "queries", "erased_hits", "params"})
    EXPECT_TRUE(vj.contains(key)) << key;
  EXPECT_EQ(vj.at("decision"), to_string(v.decision));
  EXPECT_EQ(vj.at("params").at("m"), 4);
}
