#pragma once

#include <cmath>

#include <boost/math/constants/constants.hpp>

namespace ietlab {

// Lanczos (g = 7, n = 9) evaluation at double precision.
double gamma_lanczos(double x);

// Spouge series for arbitrary-precision reals; `terms` controls accuracy,
// error ~ (2 pi)^{-(terms + 1/2)}.
template <class R>
R gamma_spouge(R z, int terms = 80) {
  using std::exp;
  using std::pow;
  using std::sin;
  const R pi = boost::math::constants::pi<R>();
  if (z < R(0.5)) {
    // reflection
    return pi / (sin(pi * z) * gamma_spouge(R(1) - z, terms));
  }
  z -= 1;
  const R a = R(terms);
  R acc = sqrt(2 * pi);
  R fact(1);
  for (int k = 1; k < terms; ++k) {
    const R kk(k);
    if (k > 1) fact *= -(kk - 1);
    R c = pow(a - kk, kk - R(0.5)) * exp(a - kk) / fact;
    acc += c / (z + kk);
  }
  return acc * pow(z + a, z + R(0.5)) * exp(-(z + a));
}

}  // namespace ietlab
