#include <doctest.h>

#include <cmath>
#include <random>

#include "ietlab/saddle.hpp"

using namespace ietlab;

TEST_SUITE_BEGIN("saddle");

TEST_CASE("potential for g = 1 is the closed form 2 sqrt(x)") {
  auto pot = build_potential(GFunction::const1(), 1.0);
  for (double u : {1e-12, 1e-6, 0.1, 0.9}) {
    CHECK(pot.hinv(u) == doctest::Approx(2.0 * std::sqrt(u)).epsilon(1e-14));
    CHECK(pot.bracket_holds(u));
  }
}

TEST_CASE("potential bracket holds for the slowly varying g") {
  auto pot = build_potential(GFunction::log_e_plus_x(), 1.0);
  for (double u = 1e-30; u < 0.9; u *= 77.3) CHECK(pot.bracket_holds(u, 1e-6));
  // spec bracket check at u = 1e-6: H^{-1}/(2 sqrt(u) g(-log u)) in [1, C_g/2]
  const double u = 1e-6;
  const double base = 2e-3 * GFunction::log_e_plus_x().g(6 * std::log(10.0));
  const double r = pot.hinv(u) / base;
  CHECK(r >= 1.0 - 1e-9);
  CHECK(r <= pot.bracket_upper_constant() / 2.0 + 1e-9);
}

TEST_CASE("potential tabulation matches direct quadrature") {
  auto g = GFunction::log_e_plus_x();
  auto pot = build_potential(g, 1.0);
  for (double u : {1e-9, 1e-6, 1e-3, 0.5}) {
    auto r = integrate([&](double v) { return 2.0 * g.g(-2.0 * std::log(v)); }, 0.0,
                       std::sqrt(u), 1e-13, 1e-300);
    CHECK(pot.hinv(u) == doctest::Approx(r.value).epsilon(1e-8));
  }
}

TEST_CASE("H^{-1} is increasing on the grid") {
  auto pot = build_potential(GFunction::log_e_plus_x(), 0.5);
  double prev = 0.0;
  for (double u = 1e-20; u < 0.5; u *= 3.0) {
    const double v = pot.hinv(u);
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("phi1 closed form for g = 1, case 1") {
  GFunction g = GFunction::const1();
  const double s0 = 1.0;
  for (double s : {0.25, 0.1, 0.01, 1e-5}) {
    const double expect =
        2.0 * std::log((std::sqrt(s0) + std::sqrt(s0 - s)) / std::sqrt(s));
    CHECK(phi1(1, s, g, s0) == doctest::Approx(expect).epsilon(1e-10));
  }
  CHECK(phi1(1, 0.25, g, 1.0) ==
        doctest::Approx(2.0 * std::log(2.0 + std::sqrt(3.0))).epsilon(1e-10));
}

TEST_CASE("phi1 tends to zero as s -> s0") {
  GFunction g = GFunction::const1();
  CHECK(phi1(1, 0.5 - 1e-12, g, 0.5) < 1e-5);
  CHECK_THROWS_AS(phi1(1, 0.6, g, 0.5), DomainError);
}

TEST_CASE("cases agree for constant g") {
  GFunction g = GFunction::const1();
  for (double s : {0.3, 0.05, 1e-4})
    CHECK(phi1(1, s, g, 0.8) == doctest::Approx(phi1(2, s, g, 0.8)).epsilon(1e-10));
}

TEST_CASE("slope at s = 1e-6 is -1 within 1e-4 (case 1, g = 1)") {
  GFunction g = GFunction::const1();
  ThetaModel model(g);
  auto f = [&](double s) { return phi1(1, s, g, 0.5, 5e-13); };
  auto sl = slope(f, 1e-6, model);
  CHECK(std::fabs(sl.slope + 1.0) < 1e-4);
  CHECK(sl.error_estimate < 1e-4);
}

TEST_CASE("lower bound law: -s phi1' >= g(-log s) (case 1)") {
  for (const char* name : {"const1", "log_e_plus_x"}) {
    GFunction g = GFunction::by_name(name);
    ThetaModel model(g);
    auto f = [&](double s) { return phi1(1, s, g, 0.5, 5e-13); };
    for (double s = 1e-10; s <= 0.25; s *= 100.0) {
      auto sl = slope(f, s, model);
      // tau(s) phi' = s phi'/g(-log s): the law reads slope <= -(1 - 1e-6)
      CHECK(-sl.slope >= 1.0 - 1e-6);
    }
  }
}

TEST_CASE("case 2 slopes decrease toward -1 along the grid") {
  GFunction g = GFunction::log_e_plus_x();
  ThetaModel model(g);
  auto f = [&](double s) { return phi1(2, s, g, 0.5, 5e-13); };
  double prev = 0.0;
  for (double s : {1e-2, 1e-4, 1e-6, 1e-8, 1e-10}) {
    auto sl = slope(f, s, model);
    CHECK(sl.slope < prev + 5e-3);  // decreasing within noise
    CHECK(sl.slope > -1.0 - 1e-3);  // limit -1 from above
    prev = sl.slope;
  }
}

TEST_CASE("phi_sector reduces to phi1 at m = 1") {
  auto g = GFunction::log_e_plus_x();
  auto pot = build_potential(g, 0.5);
  for (double s : {0.1, 1e-3, 1e-6}) {
    SectorSpec odd{1, 1, 0, true, 0, 0.5};
    CHECK(phi_sector(odd, s, pot).real() ==
          doctest::Approx(phi1(1, s, g, 0.5)).epsilon(1e-9));
    SectorSpec even{1, 1, 0, false, 0, 0.5};
    CHECK(phi_sector(even, s, pot).real() ==
          doctest::Approx(phi1(2, s, g, 0.5)).epsilon(1e-9));
  }
}

TEST_CASE("m=2 example: phi^3 = -phi^1 identically on an s-grid") {
  auto pot = build_potential(GFunction::log_e_plus_x(), 0.5);
  const std::vector<double> coeffs{1, 0, 1};
  for (double s : {1e-2, 1e-3, 1e-5, 1e-7}) {
    auto p1 = phi_sector_poly(2, 1, 0, true, coeffs, s, pot);
    auto p3 = phi_sector_poly(2, 1, 1, true, coeffs, s, pot);
    CHECK(p3.real() == doctest::Approx(-p1.real()).epsilon(1e-9));
    CHECK(std::fabs(p1.imag()) < 1e-12 * std::fabs(p1.real()) + 1e-12);
  }
}

TEST_CASE("sector periodicity phi^{j+2m} = phi^j for even-degree polynomials") {
  auto pot = build_potential(GFunction::log_e_plus_x(), 0.5);
  const std::vector<double> coeffs{1, 0, 1};
  const double s = 1e-4;
  auto a = phi_sector_poly(2, 1, 0, true, coeffs, s, pot);
  auto b = phi_sector_poly(2, 1, 2, true, coeffs, s, pot);  // j + m, zeta^m = -1
  CHECK(b.real() == doctest::Approx(-a.real()).epsilon(1e-9));
}

TEST_CASE("cj_constants: the m=2 displayed values") {
  auto cj = cj_constants(2, {1, 0, 1});
  REQUIRE(cj.size() == 8);
  const double expect_odd[4] = {0.5, -0.5, 0.5, -0.5};
  for (int j = 0; j < 4; ++j) {
    CHECK(cj[2 * j].real() == doctest::Approx(expect_odd[j]).epsilon(1e-14));
    CHECK(std::fabs(cj[2 * j].imag()) < 1e-14);
    CHECK(std::abs(cj[2 * j + 1]) < 1e-14);
  }
}

TEST_CASE("cj_constants: a_{1,1} alone gives 1/4 on every odd sector") {
  auto cj = cj_constants(2, {0, 1, 0});
  for (int j = 0; j < 4; ++j)
    CHECK(cj[2 * j].real() == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("cj_constants: zero coefficients, linearity") {
  auto zero = cj_constants(3, {0, 0, 0, 0, 0});
  for (const auto& c : zero) CHECK(std::abs(c) == 0.0);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ud(-1, 1);
  std::vector<double> a(5), b(5), sum(5);
  for (int i = 0; i < 5; ++i) {
    a[i] = ud(rng);
    b[i] = ud(rng);
    sum[i] = a[i] + b[i];
  }
  auto ca = cj_constants(3, a), cb = cj_constants(3, b), cs = cj_constants(3, sum);
  for (size_t j = 0; j < ca.size(); ++j)
    CHECK(std::abs(cs[j] - ca[j] - cb[j]) < 1e-15);
}

TEST_CASE("quadrature stability: halving the tolerance stays within the bound") {
  auto pot = build_potential(GFunction::log_e_plus_x(), 0.5);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> us(-7.0, -1.0);
  std::uniform_int_distribution<int> uk(0, 2);
  for (int rep = 0; rep < 20; ++rep) {
    const double s = std::pow(10.0, us(rng));
    SectorSpec spec{2, 1, rep % 4, rep % 2 == 0, uk(rng), 0.5};
    auto v1 = phi_sector(spec, s, pot, 1e-8);
    auto v2 = phi_sector(spec, s, pot, 5e-9);
    CHECK(std::abs(v1 - v2) <= 1e-7 * std::max(1.0, std::abs(v1)));
  }
}

TEST_CASE("verify_sector_asymptotics: g=1 m=1 limit is -1 within 1e-4") {
  auto pot = build_potential(GFunction::const1(), 0.5);
  std::vector<double> grid;
  for (double s = 1e-2; s >= 1e-10 / 1.5; s /= 100.0) grid.push_back(s);
  auto res = verify_sector_asymptotics(1, 1, 0, true, {1}, pot, grid);
  CHECK(std::fabs(res.extrapolated + 1.0) < 1e-4);
}

TEST_SUITE_END();
