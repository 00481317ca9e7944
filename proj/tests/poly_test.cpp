#include "ldt/poly.hpp"

#include <gtest/gtest.h>

#include <random>

#include "ldt/space.hpp"
#include "oracles.hpp"

using namespace ldt;

namespace {

DenseTable random_table(const FieldRef& f, std::size_t k, std::mt19937_64& rng) {
  DenseTable t(f, k);
  std::uniform_int_distribution<std::uint32_t> pick(0, f->q() - 1);
  for (auto& v : t.values()) v = Elem{pick(rng)};
  return t;
}

SparsePolynomial x1x2(const FieldRef& f, std::size_t n) {
  Exponent e(n, 0);
  e[0] = e[1] = 1;
  return SparsePolynomial::monomial(f, e);
}

}  // namespace

TEST(Exponents, ReduceExponent) {
  EXPECT_EQ(reduce_exponent(0, 4), 0u);
  EXPECT_EQ(reduce_exponent(3, 4), 3u);
  EXPECT_EQ(reduce_exponent(4, 4), 1u);
  EXPECT_EQ(reduce_exponent(2, 2), 1u);
  auto f4 = make_field(2, 2);
  for (std::uint32_t a = 0; a < 4; ++a)
    for (std::uint64_t e = 0; e < 20; ++e)
      EXPECT_EQ(f4->pow(Elem{a}, reduce_exponent(e, 4)), oracle::slow_pow(*f4, Elem{a}, e));
}

TEST(Exponents, EnumerationAndCount) {
  EXPECT_EQ(enumerate_exponents(2, 2, 1), (std::vector<Exponent>{{0, 0}, {0, 1}, {1, 0}}));
  EXPECT_EQ(count_exponents(2, 3, 4), 9u);
  EXPECT_EQ(count_exponents(3, 2, 2), 7u);
  for (std::uint32_t q : {2u, 3u, 4u})
    for (std::size_t n = 1; n <= 3; ++n)
      for (std::int64_t w = -1; w <= static_cast<std::int64_t>(n * (q - 1)); ++w) {
        const auto ref = oracle::exponents_up_to(n, q, w);
        auto got = enumerate_exponents(n, q, w);
        EXPECT_TRUE(std::is_sorted(got.begin(), got.end()));
        EXPECT_EQ(got, ref);
        EXPECT_EQ(count_exponents(n, q, w), ref.size());
      }
}

TEST(SparsePolynomial, EvaluateExamples) {
  auto f2 = make_field(2, 1);
  EXPECT_EQ(x1x2(f2, 2).evaluate(Point{Elem{1}, Elem{1}}), Elem{1});
  auto f3 = make_field(3, 1);
  SparsePolynomial g(f3, 2);
  g.add_term({2, 0}, Elem{1});
  g.add_term({0, 0}, Elem{2});
  for (std::uint32_t y = 0; y < 3; ++y) EXPECT_EQ(g.evaluate(Point{Elem{2}, Elem{y}}), Elem{0});
  SparsePolynomial zero(f3, 2);
  EXPECT_EQ(zero.evaluate(Point{Elem{1}, Elem{2}}), Elem{0});
  EXPECT_THROW(zero.evaluate(Point{Elem{1}}), std::invalid_argument);
}

TEST(SparsePolynomial, DegreeAndNormalForm) {
  auto f2 = make_field(2, 1);
  EXPECT_EQ(x1x2(f2, 2).degree(), 2);
  EXPECT_EQ(SparsePolynomial(f2, 3).degree(), -1);
  auto f4 = make_field(2, 2);
  EXPECT_EQ(SparsePolynomial::monomial(f4, {3, 1}).degree(), 4);
  SparsePolynomial g(f4, 1);
  g.add_term({5}, Elem{1});  // x^5 = x^2 on F_4
  EXPECT_EQ(g.coefficient({2}), Elem{1});
  g.add_term({2}, Elem{1});  // cancels in characteristic 2
  EXPECT_TRUE(g.is_zero());
  std::mt19937_64 rng(3);
  const auto r = random_polynomial(f4, 3, 5, 0.7, rng);
  for (const auto& [e, c] : r.terms()) {
    EXPECT_NE(c.idx, 0u);
    for (auto a : e) EXPECT_LE(a, 3u);
  }
}

TEST(SparsePolynomial, EvaluateMatchesSlowEvaluation) {
  std::mt19937_64 rng(11);
  for (auto [p, ell] : {std::pair{2u, 1u}, {3u, 1u}, {2u, 2u}, {5u, 1u}, {3u, 2u}}) {
    auto f = make_field(p, ell);
    for (int trial = 0; trial < 20; ++trial) {
      auto g = random_polynomial(f, 3, std::min<std::int64_t>(4, 3 * (f->q() - 1)), 0.5, rng);
      oracle::each_point(f->q(), 3, [&](const Point& x) { ASSERT_EQ(g.evaluate(x), oracle::slow_eval(g, x)); });
    }
  }
}

TEST(SparsePolynomial, RandomPolynomialContract) {
  auto f = make_field(3, 1);
  std::mt19937_64 a(5), b(5);
  EXPECT_EQ(random_polynomial(f, 4, 3, 0.5, a), random_polynomial(f, 4, 3, 0.5, b));
  std::mt19937_64 rng(1);
  EXPECT_TRUE(random_polynomial(f, 4, 3, 0.0, rng).is_zero());
  auto c = random_polynomial(f, 4, 0, 1.0, rng);
  EXPECT_LE(c.degree(), 0);
  for (int i = 0; i < 50; ++i) EXPECT_LE(random_polynomial(f, 4, 3, 0.6, rng).degree(), 3);
  EXPECT_THROW(random_polynomial(f, 2, 5, 0.5, rng), std::invalid_argument);
}

TEST(DenseTable, OrderingAndCap) {
  auto f3 = make_field(3, 1);
  DenseTable t(f3, 2);
  EXPECT_EQ(t.size(), 9u);
  EXPECT_EQ(t.point_at(1), (Point{Elem{0}, Elem{1}}));
  EXPECT_EQ(t.point_at(3), (Point{Elem{1}, Elem{0}}));
  for (std::uint64_t i = 0; i < t.size(); ++i) EXPECT_EQ(t.index_of(t.point_at(i)), i);
  std::vector<Point> seen;
  for_each_point(3, 2, [&](const Point& x) { seen.push_back(x); });
  EXPECT_TRUE(std::is_sorted(seen.begin(), seen.end()));
  EXPECT_EQ(seen.size(), 9u);
  EXPECT_THROW(DenseTable(f3, 13), std::out_of_range);
  EXPECT_THROW(DenseTable(f3, 3, 26), std::out_of_range);
}

TEST(SupportFunction, ZeroRemovesEntry) {
  auto f = make_field(3, 1);
  SupportFunction h(f, 2);
  h.set({Elem{1}, Elem{2}}, Elem{2});
  EXPECT_EQ(h.support_size(), 1u);
  h.set({Elem{1}, Elem{2}}, Elem{0});
  EXPECT_EQ(h.support_size(), 0u);
  EXPECT_EQ(h.at({Elem{0}, Elem{0}}), Elem{0});
}

TEST(Interpolation, Examples) {
  auto f2 = make_field(2, 1);
  DenseTable id(f2, 1, std::vector<Elem>{Elem{0}, Elem{1}});
  EXPECT_EQ(interpolate(id), SparsePolynomial::monomial(f2, {1}));

  auto f3 = make_field(3, 1);
  DenseTable ones(f3, 2, std::vector<Elem>(9, Elem{1}));
  EXPECT_EQ(interpolate(ones), SparsePolynomial::monomial(f3, {0, 0}));

  DenseTable t(f2, 2, std::vector<Elem>{Elem{0}, Elem{1}, Elem{1}, Elem{1}});
  SparsePolynomial want(f2, 2);
  want.add_term({1, 0}, Elem{1});
  want.add_term({0, 1}, Elem{1});
  want.add_term({1, 1}, Elem{1});
  EXPECT_EQ(interpolate(t), want);
}

TEST(Interpolation, RoundTripRandomTables) {
  std::mt19937_64 rng(2024);
  for (auto [p, ell, k] : {std::tuple{2u, 1u, 3u}, {3u, 1u, 3u}, {2u, 2u, 2u}, {5u, 1u, 2u}, {3u, 2u, 2u}}) {
    auto f = make_field(p, ell);
    for (int i = 0; i < 100; ++i) {
      const DenseTable t = random_table(f, k, rng);
      const SparsePolynomial g = interpolate(t);
      ASSERT_EQ(table_from_poly(g), t);
      // reduced form: every table is hit by exactly one reduced polynomial
      for (const auto& [e, c] : g.terms())
        for (auto a : e) ASSERT_LT(a, f->q());
    }
  }
}

TEST(Interpolation, PolynomialRoundTrip) {
  std::mt19937_64 rng(9);
  auto f = make_field(2, 2);
  for (int i = 0; i < 50; ++i) {
    auto g = random_polynomial(f, 3, 9, 0.4, rng);
    EXPECT_EQ(interpolate(table_from_poly(g)), g);
  }
}

TEST(InnerProduct, MonomialExamples) {
  auto f2 = make_field(2, 1);
  EXPECT_EQ(monomial_inner_product(*f2, {1, 1}, {0, 0}), Elem{1});
  auto f3 = make_field(3, 1);
  EXPECT_EQ(monomial_inner_product(*f3, {1}, {1}), Elem{2});
  EXPECT_EQ(monomial_inner_product(*f3, {1}, {0}), Elem{0});
}

TEST(InnerProduct, MonomialClosedFormMatchesBruteForce) {
  for (std::uint32_t q : {2u, 3u, 4u, 5u}) {
    auto [p, ell] = prime_power_split(q);
    auto f = make_field(p, ell);
    for (std::size_t n = 1; n <= 2; ++n) {
      const auto exps = oracle::exponents_up_to(n, q, static_cast<std::int64_t>(n * (q - 1)));
      for (const auto& e : exps)
        for (const auto& e2 : exps)
          ASSERT_EQ(monomial_inner_product(*f, e, e2), oracle::slow_monomial_inner(*f, e, e2)) << q;
    }
  }
}

TEST(InnerProduct, OverloadsAgree) {
  auto f2 = make_field(2, 1);
  SupportFunction h(f2, 2);
  oracle::each_point(2, 2, [&](const Point& x) { h.set(x, Elem{1}); });
  EXPECT_EQ(inner_product(h, x1x2(f2, 2)), Elem{1});
  EXPECT_EQ(inner_product(h, SparsePolynomial(f2, 2)), Elem{0});

  std::mt19937_64 rng(4);
  auto f = make_field(3, 1);
  for (int i = 0; i < 30; ++i) {
    auto a = random_polynomial(f, 2, 4, 0.5, rng);
    auto b = random_polynomial(f, 2, 4, 0.5, rng);
    const DenseTable ta = table_from_poly(a), tb = table_from_poly(b);
    SupportFunction sa(f, 2);
    for (std::uint64_t j = 0; j < ta.size(); ++j) sa.set(ta.point_at(j), ta.at(j));
    Elem want = Field::zero();
    for (std::uint64_t j = 0; j < ta.size(); ++j) want = f->add(want, f->mul(ta.at(j), tb.at(j)));
    EXPECT_EQ(inner_product(ta, tb), want);
    EXPECT_EQ(inner_product(ta, b), want);
    EXPECT_EQ(inner_product(sa, tb), want);
    EXPECT_EQ(inner_product(sa, b), want);
  }
  for (std::uint32_t q : {2u, 3u}) {
    auto fq = make_field(q, 1);
    for (const auto& e : oracle::exponents_up_to(2, q, 2 * (q - 1)))
      for (const auto& e2 : oracle::exponents_up_to(2, q, 2 * (q - 1)))
        EXPECT_EQ(inner_product(table_from_poly(SparsePolynomial::monomial(fq, e)),
                                table_from_poly(SparsePolynomial::monomial(fq, e2))),
                  monomial_inner_product(*fq, e, e2));
  }
}

TEST(InnerProduct, LowDegreeOrthogonality) {
  std::mt19937_64 rng(77);
  for (auto [p, ell] : {std::pair{2u, 1u}, {3u, 1u}, {2u, 2u}, {5u, 1u}}) {
    auto f = make_field(p, ell);
    const std::size_t k = 2;
    const std::int64_t top = static_cast<std::int64_t>(k * (f->q() - 1));
    for (int i = 0; i < 200; ++i) {
      std::uniform_int_distribution<std::int64_t> pick_d(0, top - 1);
      const std::int64_t d = pick_d(rng);
      auto a = random_polynomial(f, k, d, 0.6, rng);
      auto b = random_polynomial(f, k, top - (d + 1), 0.6, rng);
      ASSERT_EQ(inner_product(table_from_poly(a), b), Elem{0});
    }
  }
}

TEST(Distance, Examples) {
  auto f2 = make_field(2, 1);
  EXPECT_EQ(distance_to_rm(table_from_poly(x1x2(f2, 2)), 1), (Rational{1, 4}));
  EXPECT_EQ(distance_to_rm(table_from_poly(SparsePolynomial::monomial(f2, {1, 1, 1})), 2), (Rational{1, 8}));
  std::mt19937_64 rng(3);
  auto g = random_polynomial(f2, 3, 2, 0.5, rng);
  EXPECT_EQ(distance_to_rm(table_from_poly(g), 2).num, 0u);
  EXPECT_THROW(distance_to_rm(DenseTable(make_field(3, 1), 4), 3, 1000), std::out_of_range);
}

TEST(Distance, MatchesCoefficientEnumeration) {
  std::mt19937_64 rng(8);
  for (auto [p, ell, k, d] : {std::tuple{2u, 1u, 3u, 1}, {2u, 1u, 3u, 2}, {3u, 1u, 2u, 1}, {2u, 2u, 2u, 1},
                              {2u, 1u, 2u, 0}, {3u, 1u, 2u, 2}}) {
    auto f = make_field(p, ell);
    for (int i = 0; i < 6; ++i) {
      const DenseTable t = random_table(f, k, rng);
      const Rational r = distance_to_rm(t, d);
      const std::uint64_t want = oracle::brute_distance_count(*f, k, t.values(), d);
      EXPECT_EQ(static_cast<double>(r.num) / static_cast<double>(r.den),
                static_cast<double>(want) / static_cast<double>(t.size()));
    }
  }
}

TEST(Distance, ZeroIffLowDegree) {
  std::mt19937_64 rng(12);
  for (auto [p, ell, k] : {std::tuple{2u, 1u, 3u}, {3u, 1u, 2u}, {2u, 2u, 2u}}) {
    auto f = make_field(p, ell);
    for (int i = 0; i < 30; ++i) {
      const DenseTable t = random_table(f, k, rng);
      const std::int64_t deg = interpolate(t).degree();
      for (std::int64_t d = 0; d <= static_cast<std::int64_t>(k * (f->q() - 1)); ++d) {
        if (count_exponents(k, f->q(), d) > 8) continue;
        EXPECT_EQ(distance_to_rm(t, d).num == 0, deg <= d);
      }
    }
  }
}

TEST(Distance, EmbeddingPreservesDistance) {
  // x1 x2 read as a function of 3 or 4 variables over F_2 stays at distance 1/4 from degree 1.
  auto f2 = make_field(2, 1);
  for (std::size_t n = 2; n <= 4; ++n) EXPECT_EQ(distance_to_rm(table_from_poly(x1x2(f2, n)), 1).value(), 0.25);
  auto f3 = make_field(3, 1);
  const double base = distance_to_rm(table_from_poly(x1x2(f3, 2)), 1).value();
  EXPECT_EQ(distance_to_rm(table_from_poly(x1x2(f3, 3)), 1).value(), base);
}

TEST(TextFormat, RoundTrip) {
  std::mt19937_64 rng(6);
  for (auto [p, ell] : {std::pair{2u, 1u}, {3u, 2u}, {5u, 1u}}) {
    auto f = make_field(p, ell);
    for (int i = 0; i < 20; ++i) {
      auto g = random_polynomial(f, 4, std::min<std::int64_t>(5, 4 * (f->q() - 1)), 0.3, rng);
      EXPECT_EQ(parse_polynomial(to_text(g)), g);
    }
    EXPECT_EQ(parse_polynomial(to_text(SparsePolynomial(f, 3))), SparsePolynomial(f, 3));
  }
}

TEST(TextFormat, ParsesAndRejects) {
  auto f2 = make_field(2, 1);
  EXPECT_EQ(parse_polynomial("q=2 n=2; 1*x1^1*x2^1"), x1x2(f2, 2));
  EXPECT_EQ(parse_polynomial("q=2 n=2; 1*x1*x2"), x1x2(f2, 2));
  EXPECT_EQ(to_text(x1x2(f2, 2)), "q=2 n=2; 1*x1^1*x2^1");
  EXPECT_THROW(parse_polynomial("q=6 n=2; 1"), std::invalid_argument);
  EXPECT_THROW(parse_polynomial("q=2 n=2; 1*x3"), std::invalid_argument);
  EXPECT_THROW(parse_polynomial("q=2 n=2; 2*x1"), std::invalid_argument);
  EXPECT_THROW(parse_polynomial("n=2; 1"), std::invalid_argument);
  EXPECT_THROW(parse_polynomial("q=2 n=2; 1*y1"), std::invalid_argument);
}
