#pragma once

#include <cstdint>
#include <map>
#include <vector>

namespace ietlab {

// Continued fraction expansion of x in (0,1): x = [0; a1, a2, ...].
std::vector<std::int64_t> continued_fraction(double x, int max_terms = 64);

// Gap multiset (sorted lengths) between consecutive points of
// {x0 + i*alpha mod 1 : 0 <= i < n} on the circle, computed by direct orbit
// iteration with the same arithmetic an IET step uses. By the three-distance
// theorem at most three distinct values occur; the structure is cross-checked
// against the continued-fraction prediction.
struct ThreeDistanceGaps {
  std::vector<double> sorted_gaps;           // n gaps, ascending
  std::vector<double> distinct;              // distinct values (<= 3, fp-merged)
  std::vector<int> multiplicity;             // aligned with distinct
  bool matches_cf_prediction = false;        // lengths agree with CF formula
};

ThreeDistanceGaps three_distance_gaps(double alpha, std::int64_t n, double x0 = 0.0);

}  // namespace ietlab
