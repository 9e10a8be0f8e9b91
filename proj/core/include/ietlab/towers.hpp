#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ietlab/birkhoff.hpp"
#include "ietlab/renorm.hpp"
#include "ietlab/three_distance.hpp"

namespace ietlab {

// Rokhlin tower of the level-n exchanged interval of a renormalization orbit.
struct Tower {
  int symbol = 0;   // alphabet index
  int level = 0;    // renormalization level n
  long long q = 0;  // height = row sum of B(n)
  BigInt q_big;
  Interval base;                 // I_alpha^(n) inside [0, |I|)
  std::vector<Interval> levels;  // T^i base, 0 <= i < q
  bool levels_clean = true;      // every level avoids discontinuities of T
  double translation = 0.0;      // T^q on the base is x -> x + translation
  double measure = 0.0;          // q * |base|
};

// Builds the tower by iterating T on the level-n base. Levels are stored only
// up to `store_levels_cap` (the translation and measure are exact regardless).
Tower tower_for_symbol(const RenormOrbit<double>& orbit, int n, int symbol,
                       long long store_levels_cap = 4'000'000);

struct GapReport {
  std::vector<Interval> gaps;       // complement components, sorted
  double max_gap = 0.0;
  double max_other_length = 0.0;    // max_{beta != alpha} |I_beta^(n)|
  double max_ratio = 0.0;           // max_gap / max_other_length
  double dist_left = 0.0;           // dist(0, union of levels)
  double dist_right = 0.0;          // dist(|I|, union of levels)
  double tower_measure = 0.0;
  double gap_measure = 0.0;
  std::optional<ThreeDistanceGaps> rotation_oracle;  // filled when d = 2
};

GapReport gaps_outside_tower(const RenormOrbit<double>& orbit, int n, int symbol);

struct TowerConditionRecord {
  int n = 0;  // index within the supplied sequence
  long long q = 0;
  double base_len = 0.0;
  double q_times_len = 0.0;
  double growth = 0.0;  // q_{n+1}/q_n (0 for the last record)
  int hole_count = 0;
  double max_hole_times_q = 0.0;
  double offset_ratio = 0.0;  // |translation| / |base|
  bool qn2_5 = false;         // q_{n+1} >= 320 C^2 q_n
  bool qn3 = false;           // C >= q_n |Delta^n| >= 1/C
  bool qn4 = false;           // <= q_n + 1 holes, all shorter than C/q_n
  bool qn5 = false;           // offset ratio in (1/16, 1/8)
  bool levels_clean = false;  // the (qn3.5) disjointness-from-discontinuities
};

struct TowerConditionsReport {
  std::vector<TowerConditionRecord> records;
  double qn1_statistic = 0.0;  // finite-range max of q_n^{1/n}; no verdict
  double constant = 0.0;
};

// Evaluates the tower conditions literally at the supplied constant C. The
// first condition is an asymptotic statement, so only its finite-range
// statistic is reported.
TowerConditionsReport check_conditions(const Iet<double>& T,
                                       const std::vector<Tower>& towers, double C);

struct MidpointHit {
  std::string source;  // label of the level interval, or "I" for the base
  bool found = false;
  long long steps = 0;
  double target = 0.0;      // the global midpoint reached
  std::string target_name;  // label or "I"
  double error = 0.0;
};

// For each level-n exchanged interval (and the level interval I^(n) itself),
// scans the forward orbit of its midpoint for a hit on a global midpoint
// m_beta or on |I|/2, searching up to the return time.
std::vector<MidpointHit> track_midpoints(const RenormOrbit<double>& orbit, int n,
                                         double tol = 1e-10);

}  // namespace ietlab
