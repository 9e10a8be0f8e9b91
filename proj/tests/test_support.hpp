#pragma once

#include <cmath>
#include <random>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "ietlab/fixtures.hpp"
#include "ietlab/renorm.hpp"

namespace ietlab::testing {

using QuadFloat = boost::multiprecision::cpp_bin_float_quad;

// Orbit of a self-similar fixture from its quad-precision Perron vector,
// downcast to double; double-precision seeds lose the periodic orbit after
// roughly 53 / (2 log2 rho) periods, quad seeds roughly double that.
inline RenormOrbit<double> periodic_orbit(const SelfSimilarIet& ss, int steps) {
  auto lamq = perron_left_vector<QuadFloat>(ss.loop_matrix);
  Iet<QuadFloat> Tq(ss.iet.perm(), lamq);
  return downcast_orbit(rv_orbit(Tq, steps));
}

// Quad-seeded random lambda: a double plus a 2^-53-scaled double, giving
// lattice depth ~2^-106 so rational-exact induction survives ~800 steps.
inline std::vector<QuadFloat> deep_random_lambda(int d, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> ud(0.05, 1.0);
  std::vector<QuadFloat> lam(d);
  QuadFloat total(0);
  for (int i = 0; i < d; ++i) {
    lam[i] = QuadFloat(ud(rng)) + QuadFloat(ud(rng)) * QuadFloat(std::ldexp(1.0, -53));
    total += lam[i];
  }
  for (auto& l : lam) l /= total;
  return lam;
}

}  // namespace ietlab::testing
