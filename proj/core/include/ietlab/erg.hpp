#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ietlab/birkhoff.hpp"
#include "ietlab/interval_union.hpp"
#include "ietlab/towers.hpp"

namespace ietlab {

// ----- skew products ---------------------------------------------------

struct SkewCheckpoint {
  long long n;
  double x;
  double fiber;
};

struct SkewOrbitStats {
  long long steps = 0;           // steps actually completed
  double fiber_min = 0.0, fiber_max = 0.0;
  std::vector<long long> window_counts;  // per requested fiber window
  long long recurrence_count = 0;        // fiber within 1/2 of r0
  std::vector<SkewCheckpoint> checkpoints;
  bool guard_truncated = false;
  double final_x = 0.0, final_fiber = 0.0;
};

SkewOrbitStats skew_orbit(const Iet<double>& T, const Cocycle& phi, double x0,
                          double r0, long long n_steps,
                          const std::vector<Interval>& fiber_windows = {},
                          int checkpoint_count = 100);

struct EquidistributionResult {
  long long count_I = 0, count_J = 0;
  double ratio = 0.0;
  double expected = 0.0;   // |I_win| / |J_win|
  double deviation = 0.0;  // |ratio - expected|
  double confidence = 0.0; // bootstrap half-width on the ratio
  bool starved = false;    // either window visited < 100 times
};

EquidistributionResult equidistribution_test(const Iet<double>& T,
                                             const Cocycle& phi, double x0,
                                             double r0, long long n_steps,
                                             Interval i_win, Interval j_win,
                                             unsigned seed = 0x5eed);

// ----- essential-value scanning ----------------------------------------

struct EssentialValueScan {
  std::vector<double> r_grid;
  std::vector<double> score;  // min over Omega of max over n of Leb(...)
  double epsilon = 0.0;
  std::vector<double> candidates;  // r with positive score
};

// Heuristic necessary-condition scanner over a fixed family of interval
// unions: for each r reports min_Omega max_n Leb(Omega cap T^-n Omega cap
// {S_n phi in (r-eps, r+eps)}). Preimages are exact interval unions; the
// Birkhoff-sum constraint is measured on a deterministic per-piece grid.
EssentialValueScan essential_value_scan(const Iet<double>& T, const Cocycle& phi,
                                        const std::vector<IntervalUnion>& omegas,
                                        const std::vector<long long>& n_values,
                                        double epsilon,
                                        const std::vector<double>& r_grid,
                                        int samples_per_piece = 24);

// Default Omega family: dyadic subintervals at three depths plus unions.
std::vector<IntervalUnion> default_omega_family(double total_length = 1.0);

// ----- Borel-Cantelli construction -------------------------------------

struct BCStage {
  int tower_index = 0;
  long long q = 0;
  IntervalUnion a_tilde;
  IntervalUnion a_hat;
  double leb_hat = 0.0;
  double remaining_before = 0.0;
  double ledger_bound = 0.0;  // (2c/theta(q_n)) * remaining_before
  bool ledger_ok = false;
  double min_hole_after = 0.0;
  int holes_after = 0;
};

struct BCConstruction {
  std::vector<BCStage> stages;
  bool disjoint_exact = true;
  bool shift_containment = true;   // T^{q_n} A~_n stays inside the holes
  double ledger_identity = 0.0;    // |Leb(rest) + Leb(union) - (s-r)|
  double coverage = 0.0;           // Leb(union A^_n) / (s - r)
  double tilde_coverage = 0.0;     // Leb(union A~_n) / (s - r)
  double product_bound = 0.0;      // prod (1 - 2c/theta(q_j))
  double c_constant = 0.0;         // D1 / (3C + 2 D2)
  Interval window;
};

// The inductive hole-filling construction. J_families[t] lists the intervals
// J_i^n for tower t (i up to q_t), each contained in the 1/4-slimmed level.
BCConstruction bc_construct(const std::vector<Tower>& towers,
                            const std::vector<std::vector<Interval>>& j_families,
                            Interval rs, double C, double D1, double D2,
                            const std::function<double(double)>& theta);

// Synthetic centered window family: J_i^n centered in each slimmed level with
// |J| = D/(q theta(q)).
std::vector<std::vector<Interval>> centered_window_family(
    const std::vector<Tower>& towers, double D,
    const std::function<double(double)>& theta);

// ----- ergodicity-criterion harness ------------------------------------

struct HarnessLevelPoint {
  long long i = 0;
  double xi = 0.0;
  double residual = 0.0;  // |S_q f(xi) - v_n|
  bool in_certified_window = false;
  bool bracket_found = false;
};

struct HarnessScale {
  int level = 0;
  long long q = 0;
  double base_len = 0.0;
  double delta = 0.0;     // T^q translation on the base
  double v_target = 0.0;  // f(m_alpha - delta/2), or 0 for the I case
  std::string target_name;
  bool midpoint_found = false;
  double deriv_min_ratio = 0.0, deriv_max_ratio = 0.0;
  std::vector<HarnessLevelPoint> points;
  bool ok = false;
  std::string note;
};

struct CriterionReport {
  std::vector<HarnessScale> scales;
  double E_fit = 0.0;
  double window_D = 0.0;  // |Delta_i^n| = D/(q theta(q))
  double z_theta = 0.0, Z_theta = 0.0;
  bool all_ok = false;
  std::string verdict;
};

struct HarnessOptions {
  std::vector<int> levels;        // renormalization levels to use as scales
  int symbol = 0;                 // tower symbol
  int sampled_levels = 6;         // tower levels probed per scale
  // argument tolerance (relative to |I|); 0 runs the full iteration cap,
  // which resolves xi to an ulp and keeps residuals ~ q theta(q) ulp
  double bisect_tol = 0.0;
  int bisect_cap = 50;
  double tower_constant = 2.0;    // C for the D < 1/(8C) window choice
  double midpoint_tol = 1e-10;
};

CriterionReport criterion_harness(const RenormOrbit<double>& orbit,
                                  const Cocycle& f, const ThetaModel& model,
                                  const HarnessOptions& opt);

}  // namespace ietlab
