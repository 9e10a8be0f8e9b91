#include <doctest.h>

#include <cmath>

#include "ietlab/quadrature.hpp"

using namespace ietlab;

TEST_SUITE_BEGIN("quadrature");

TEST_CASE("smooth integrand to near machine accuracy") {
  auto r = integrate([](double x) { return std::sin(x); }, 0.0, M_PI, 1e-13);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(r.converged);
}

TEST_CASE("error estimate is honored when the tolerance is halved") {
  auto f = [](double x) { return std::exp(-x) / std::sqrt(1e-3 + x); };
  auto r1 = integrate(f, 0.0, 2.0, 1e-8);
  auto r2 = integrate(f, 0.0, 2.0, 5e-9);
  CHECK(std::fabs(r1.value - r2.value) <= r1.error + r2.error);
}

TEST_CASE("endpoint log singularity: integral of -log x over [0,1]") {
  auto r = integrate_endpoint_singular([](double x) { return -std::log(x); }, 0.0,
                                       1.0, 1e-12);
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-11));
}

TEST_CASE("endpoint power singularity x^{-1/3}") {
  auto r = integrate_endpoint_singular([](double x) { return std::pow(x, -1.0 / 3.0); },
                                       0.0, 1.0, 1e-12);
  CHECK(r.value == doctest::Approx(1.5).epsilon(1e-10));
}

TEST_CASE("two-sided singularity 1/sqrt(x(1-x))") {
  auto r = integrate_endpoint_singular(
      [](double x) { return 1.0 / std::sqrt(x * (1.0 - x)); }, 0.0, 1.0, 1e-12);
  CHECK(r.value == doctest::Approx(M_PI).epsilon(1e-10));
}

TEST_CASE("empty interval integrates to zero") {
  auto r = integrate([](double) { return 1.0; }, 0.5, 0.5);
  CHECK(r.value == 0.0);
}

TEST_CASE("orientation flips the sign") {
  auto r = integrate([](double x) { return x; }, 1.0, 0.0, 1e-12);
  CHECK(r.value == doctest::Approx(-0.5).epsilon(1e-13));
}

TEST_SUITE_END();
