#include <doctest.h>

#include <cmath>

#include "ietlab/three_distance.hpp"

using namespace ietlab;

TEST_SUITE_BEGIN("three_distance");

TEST_CASE("continued fraction of the golden ratio is all ones") {
  const double gamma = (std::sqrt(5.0) - 1.0) / 2.0;
  auto cf = continued_fraction(gamma, 20);
  REQUIRE(cf.size() >= 15);
  CHECK(cf[0] == 0);
  for (size_t i = 1; i < 15; ++i) CHECK(cf[i] == 1);
}

TEST_CASE("gaps take at most three distinct values") {
  const double alpha = (std::sqrt(5.0) - 1.0) / 2.0;
  for (std::int64_t n : {2, 5, 13, 55, 100, 233, 1000}) {
    auto g = three_distance_gaps(alpha, n);
    CHECK(g.distinct.size() <= 3);
    CHECK(g.sorted_gaps.size() == static_cast<size_t>(n));
  }
}

TEST_CASE("cf prediction matches the direct gaps") {
  for (double alpha : {(std::sqrt(5.0) - 1.0) / 2.0, std::sqrt(2.0) - 1.0,
                       0.3183098861837907, 0.123456789}) {
    for (std::int64_t n : {7, 20, 64, 201, 998}) {
      auto g = three_distance_gaps(alpha, n);
      CHECK(g.matches_cf_prediction);
    }
  }
}

TEST_CASE("two values at convergent denominators of the golden ratio") {
  const double alpha = (std::sqrt(5.0) - 1.0) / 2.0;
  // N = Fibonacci: exactly two gap lengths
  for (std::int64_t n : {5, 8, 13, 21, 34, 55}) {
    auto g = three_distance_gaps(alpha, n);
    CHECK(g.distinct.size() == 2);
  }
}

TEST_CASE("gap multiset is independent of the starting point") {
  const double alpha = std::sqrt(2.0) - 1.0;
  auto g0 = three_distance_gaps(alpha, 147, 0.0);
  auto g1 = three_distance_gaps(alpha, 147, 0.617);
  REQUIRE(g0.sorted_gaps.size() == g1.sorted_gaps.size());
  for (size_t i = 0; i < g0.sorted_gaps.size(); ++i)
    CHECK(g0.sorted_gaps[i] == doctest::Approx(g1.sorted_gaps[i]).epsilon(1e-12));
}

TEST_SUITE_END();
