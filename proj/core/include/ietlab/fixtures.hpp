#pragma once

#include <optional>

#include "ietlab/renorm.hpp"

namespace ietlab::fixtures {

// Rotation by the golden ratio as the two-interval exchange,
// lambda = (1, gamma)/(1 + gamma), gamma = (sqrt 5 - 1)/2.
Iet<double> golden_rotation();

// Self-similar rotation with continued fraction [0; c, c, c, ...], built from
// the loop top^c bottom^c at the swap. For c in {9..15} the return
// translation ratio on the long interval lands in (1/16, 1/8).
SelfSimilarIet rotation_cf(int c);

// Search for a loop at the d-symbol reversal whose Perron IET has a tower
// translation ratio inside (lo, hi) on some symbol and expansion <= rho_max.
// Deterministic: shortest loop first, tops before bottoms.
struct LoopSearchResult {
  std::vector<bool> loop;
  int symbol = 0;
  double ratio = 0.0;
  double expansion = 0.0;
};

std::optional<LoopSearchResult> find_symmetric_loop(int d, int max_len,
                                                    double rho_max, double lo,
                                                    double hi);

// Frozen d = 4 symmetric self-similar fixture (loop found once with
// find_symmetric_loop and pinned here); `symbol` is the tower symbol whose
// translation ratio sits in (1/16, 1/8).
struct SymmetricFixture {
  SelfSimilarIet self_similar;
  int symbol = 0;
};

SymmetricFixture symmetric_d4();

}  // namespace ietlab::fixtures
