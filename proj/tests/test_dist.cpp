#include <doctest.h>

#include <cmath>
#include <random>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "ietlab/dist.hpp"

using namespace ietlab;

TEST_SUITE_BEGIN("dist");

using HP = boost::multiprecision::number<
    boost::multiprecision::backends::cpp_bin_float<256, boost::multiprecision::backends::digit_base_2>>;

template <class R>
SaddleJetT<R> random_jet(int m, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> ud(-1.0, 1.0);
  SaddleJetT<R> jet;
  jet.m = m;
  jet.jet.assign(m - 1, {});
  for (int k = 0; k <= m - 2; ++k)
    for (int i = 0; i <= k; ++i)
      jet.jet[k].push_back(Cplx<R>(R(ud(rng)), R(ud(rng))));
  return jet;
}

TEST_CASE("frak_B hand values") {
  auto b = frak_B<double>(0.5, 0.5);
  CHECK(b.re == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(std::fabs(b.im) < 1e-15);
  auto b11 = frak_B<double>(1.0, 1.0);
  CHECK(b11.re == doctest::Approx(M_PI).epsilon(1e-14));
  CHECK(std::fabs(b11.im) < 1e-15);
}

TEST_CASE("frak_B conjugation symmetry") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> ud(0.05, 3.0);
  for (int rep = 0; rep < 50; ++rep) {
    const double x = ud(rng), y = ud(rng);
    auto a = frak_B<double>(x, y);
    auto b = frak_B<double>(y, x).conj();
    CHECK(a.re == doctest::Approx(b.re).epsilon(1e-11));
    CHECK(a.im == doctest::Approx(b.im).epsilon(1e-11));
  }
  CHECK_THROWS_AS(frak_B<double>(-1.0, 0.5), DomainError);
}

TEST_CASE("frak_C at m=2, k=0 equals 2 f(sigma) V(sigma)") {
  auto jet = SaddleJet::constant(2, 3.5);
  for (int l = 0; l < 4; ++l) {
    auto c = frak_C(jet, l, 0);
    CHECK(c.re == doctest::Approx(7.0).epsilon(1e-13));
    CHECK(std::fabs(c.im) < 1e-13);
  }
  CHECK_THROWS_AS(frak_C(jet, 0, 1), DomainError);
  CHECK_THROWS_AS(frak_C(jet, 7, 0), DomainError);
}

TEST_CASE("reflection identity c^k_{l+m} = (-1)^k c^k_l") {
  std::mt19937_64 rng(7);
  for (int m = 2; m <= 6; ++m) {
    for (int rep = 0; rep < 20; ++rep) {
      auto jet = random_jet<double>(m, rng);
      for (int k = 0; k <= m - 2; ++k)
        for (int l = 0; l < m; ++l) {
          auto a = frak_C(jet, l + m, k);
          auto b = frak_C(jet, l, k);
          const double sgn = k % 2 == 0 ? 1.0 : -1.0;
          CHECK(std::fabs(a.re - sgn * b.re) < 1e-10);
          CHECK(std::fabs(a.im - sgn * b.im) < 1e-10);
        }
    }
  }
}

TEST_CASE("vanishing sums over l for k < j < m") {
  std::mt19937_64 rng(11);
  for (int m = 2; m <= 6; ++m) {
    for (int rep = 0; rep < 20; ++rep) {
      auto jet = random_jet<double>(m, rng);
      for (int k = 0; k <= m - 2; ++k)
        for (int j = k + 1; j < m; ++j) {
          Cplx<double> acc(0.0);
          for (int l = 0; l < m; ++l)
            acc = acc + theta_power<double>(m, (long long)(k - 2 * j) * l) *
                            frak_C(jet, l, k);
          CHECK(std::sqrt(acc.abs2()) < 1e-10);
        }
    }
  }
}

TEST_CASE("linearity of the distribution in the jet") {
  std::mt19937_64 rng(13);
  auto a = random_jet<double>(4, rng);
  auto b = random_jet<double>(4, rng);
  auto sum = a;
  for (int k = 0; k <= 2; ++k)
    for (int i = 0; i <= k; ++i) sum.jet[k][i] = a.jet[k][i] + b.jet[k][i];
  for (int l = 0; l < 8; ++l)
    for (int k = 0; k <= 2; ++k) {
      auto lhs = frak_C(sum, l, k);
      auto rhs = frak_C(a, l, k) + frak_C(b, l, k);
      CHECK(std::fabs(lhs.re - rhs.re) < 1e-13);
      CHECK(std::fabs(lhs.im - rhs.im) < 1e-13);
    }
}

TEST_CASE("sector classes: singleton equals frak_C, empty is zero, parity guarded") {
  std::mt19937_64 rng(17);
  auto jet = random_jet<double>(4, rng);
  SectorClass singleton{4, {3}};
  auto a = frak_C_class(jet, singleton, 1);
  auto b = frak_C(jet, 3, 1);
  CHECK(a.re == b.re);
  CHECK(a.im == b.im);
  SectorClass empty{4, {}};
  CHECK(frak_C_class(jet, empty, 1).abs2() == 0.0);
  SectorClass mixed{4, {0, 1}};
  CHECK_THROWS_AS(frak_C_class(jet, mixed, 1), DomainError);
}

TEST_CASE("even-minus-odd class sums vanish at k = m-2 (Delta mechanism)") {
  std::mt19937_64 rng(19);
  for (int m : {2, 4, 6}) {
    for (int rep = 0; rep < 10; ++rep) {
      auto jet = random_jet<double>(m, rng);
      // make the jet real-symmetric so (f V) is real
      for (int k = 0; k <= m - 2; ++k)
        for (int i = 0; i <= k; ++i) {
          jet.jet[k][i] = Cplx<double>(jet.jet[k][i].re, jet.jet[k][i].im);
          jet.jet[k][k - i] = jet.jet[k][i].conj();
        }
      Cplx<double> even(0.0), odd(0.0);
      for (int l = 0; l < m; ++l) {
        even = even + frak_C(jet, 2 * l % (2 * m), m - 2);
        odd = odd + frak_C(jet, (2 * l + 1) % (2 * m), m - 2);
      }
      auto diff = even - odd;
      CHECK(std::sqrt(diff.abs2()) < 1e-10);
    }
  }
}

TEST_CASE("identities hold at 256-bit precision to 1e-60") {
  std::mt19937_64 rng(23);
  const HP tol("1e-60");
  for (int m : {3, 5}) {
    auto jet = random_jet<HP>(m, rng);
    for (int k = 0; k <= m - 2; ++k) {
      for (int l = 0; l < m; ++l) {
        auto a = frak_C<HP>(jet, l + m, k);
        auto b = frak_C<HP>(jet, l, k);
        const HP sgn = k % 2 == 0 ? HP(1) : HP(-1);
        auto diff = a - b * sgn;
        CHECK(diff.abs2() < tol * tol);
      }
      for (int j = k + 1; j < m; ++j) {
        Cplx<HP> acc(HP(0));
        for (int l = 0; l < m; ++l)
          acc = acc + theta_power<HP>(m, (long long)(k - 2 * j) * l) *
                          frak_C<HP>(jet, l, k);
        CHECK(acc.abs2() < tol * tol);
      }
    }
  }
}

TEST_CASE("reality constraint detector") {
  SaddleJet jet = SaddleJet::constant(3, 1.0);
  jet.jet[1][0] = Cplx<double>(0.3, 0.4);
  jet.jet[1][1] = Cplx<double>(0.3, -0.4);
  CHECK(jet.real_constraint_holds(1e-14));
  jet.jet[1][1] = Cplx<double>(0.3, 0.4);
  CHECK_FALSE(jet.real_constraint_holds(1e-14));
}

TEST_SUITE_END();
