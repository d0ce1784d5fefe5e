#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "linext/cf.hpp"

using namespace linext;

TEST_CASE("cf_expand examples and canonical form") {
  auto cf = cf_expand(3, 7);
  REQUIRE(cf.quotients == std::vector<BigCount>{0, 2, 3});
  REQUIRE(cf_expand(7, 3).quotients == std::vector<BigCount>{2, 3});
  REQUIRE(cf_expand(5, 5).quotients == std::vector<BigCount>{1});
  REQUIRE(cf_expand(0, 4).quotients == std::vector<BigCount>{0});
  REQUIRE_THROWS_AS(cf_expand(3, 0), precondition_violated);
  // canonical: last quotient > 1 whenever there is more than one
  for (int p = 1; p <= 60; ++p)
    for (int q = 1; q <= 60; ++q) {
      auto e = cf_expand(p, q);
      if (e.quotients.size() > 1) REQUIRE(e.quotients.back() > 1);
    }
}

TEST_CASE("cf_value examples, both representations") {
  REQUIRE(cf_value({2, 3}) == Ratio(7, 3));
  REQUIRE(cf_value({0, 2}) == Ratio(1, 2));
  REQUIRE(cf_value({0, 1, 1}) == Ratio(1, 2));  // non-canonical accepted
  REQUIRE(cf_value({4}) == 4);
  REQUIRE_THROWS_AS(cf_value({}), precondition_violated);
  REQUIRE_THROWS_AS(cf_value({2, 0}), precondition_violated);
}

TEST_CASE("round trip p,q <= 200") {
  for (int p = 1; p <= 200; ++p)
    for (int q = 1; q <= 200; ++q) {
      Ratio want(p, q);
      want.canonicalize();
      REQUIRE(cf_expand(p, q).value() == want);
    }
}

TEST_CASE("quotient_sum examples and representation invariance") {
  REQUIRE(quotient_sum(3, 7) == 5);
  REQUIRE(quotient_sum(9, 9) == 1);
  REQUIRE_THROWS_AS(quotient_sum(0, 5), precondition_violated);
  REQUIRE_THROWS_AS(quotient_sum(6, 5), precondition_violated);
  // the two CF representations of m/A have equal quotient sums:
  // [..., a_s] vs [..., a_s - 1, 1]
  for (int A = 2; A <= 80; ++A)
    for (int m = 1; m <= A; ++m) {
      auto cf = cf_expand(m, A);
      std::vector<BigCount> alt = cf.quotients;
      if (alt.back() > 1) {
        alt.back() -= 1;
        alt.push_back(1);
      } else {
        continue;
      }
      REQUIRE(cf_value(alt) == cf.value());
      BigCount alt_sum = 0;
      for (auto& a : alt) alt_sum += a;
      REQUIRE(alt_sum == cf.qsum());
    }
}

TEST_CASE("yao_knuth_mean exact small case") {
  // by hand: S_10(m) for m = 1..10 is 10,5,6,4,2,4,6,5,10,1 -> mean 53/10
  REQUIRE(yao_knuth_mean(10) == Ratio(53, 10));
  REQUIRE_THROWS_AS(yao_knuth_mean(1), precondition_violated);
}

TEST_CASE("yao_knuth asymptotic band at n = 1000") {
  const double mean = yao_knuth_mean(1000).get_d();
  const double target = (6.0 / (M_PI * M_PI)) * std::log(1000.0) * std::log(1000.0);
  REQUIRE(mean > 0.5 * target);
  REQUIRE(mean < 2.0 * target);
  REQUIRE(quotient_sum_tail_fraction(1000) <= 0.45);
}

TEST_CASE("find_good_m verifies the bounds it claims") {
  GoodM g = find_good_m_with_slack(7, 5, 42);
  const double bA = g.slack * 2 * std::log(7.0) * std::log(7.0);
  const double bB = g.slack * 2 * std::log(5.0) * std::log(5.0);
  REQUIRE(quotient_sum(g.m, 7).get_d() <= bA);
  REQUIRE(quotient_sum(g.m, 5).get_d() <= bB);
  REQUIRE(g.m >= 1);
  REQUIRE(g.m <= 5);

  // tiny B exercises the slack path: bounds at slack 1 are < 2
  GoodM tiny = find_good_m_with_slack(3, 2, 7);
  REQUIRE(tiny.slack > 1.0);

  REQUIRE_THROWS_AS(find_good_m(6, 4, 1), precondition_violated);   // not coprime
  REQUIRE_THROWS_AS(find_good_m(9, 4, 1), precondition_violated);   // A >= 2B
  REQUIRE_THROWS_AS(find_good_m(3, 4, 1), precondition_violated);   // A <= B
}

TEST_CASE("find_good_m is deterministic per seed") {
  GoodM a = find_good_m_with_slack(1000003, 999983, 11);
  GoodM b = find_good_m_with_slack(1000003, 999983, 11);
  REQUIRE(a.m == b.m);
  REQUIRE(a.slack == 1.0);  // large inputs satisfy the asymptotic bound directly
}

TEST_CASE("good-m density at moderate size") {
  // a positive fraction of m satisfy both quotient-sum bounds; measure at ~10^6
  const BigCount A = 1000003, B = 999983;
  const double bA = 2 * std::log(A.get_d()) * std::log(A.get_d());
  const double bB = 2 * std::log(B.get_d()) * std::log(B.get_d());
  std::mt19937_64 rng(2718);
  std::uniform_int_distribution<long> dist(1, 999982);
  int good = 0, tried = 0;
  for (int t = 0; t < 2000; ++t) {
    ++tried;
    const long m = dist(rng);
    if (quotient_sum(m, A).get_d() <= bA && quotient_sum(m, B).get_d() <= bB) ++good;
  }
  REQUIRE(good * 10 >= tried);  // at least 10%
}
