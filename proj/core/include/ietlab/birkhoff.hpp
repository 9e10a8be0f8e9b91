#pragma once

#include <memory>
#include <vector>

#include "ietlab/cocycle.hpp"
#include "ietlab/iet.hpp"
#include "ietlab/quadrature.hpp"
#include "ietlab/renorm.hpp"

namespace ietlab {

// Orbit entered the guard zone of a singular endpoint.
struct GuardError : std::runtime_error {
  GuardError(const std::string& msg, long long idx, double pt)
      : std::runtime_error(msg), index(idx), point(pt) {}
  long long index;
  double point;
};

inline double default_guard(const Iet<double>& T) {
  return 1e-13 * T.total_length();
}

// S_n phi(x) for either sign of n; throws GuardError when the orbit passes
// within guard_eps of a singular approach point of phi.
double birkhoff_sum(const Iet<double>& T, const Cocycle& phi, double x,
                    long long n, double guard_eps = -1.0);

// Same for the derivative: S_n(phi')(x).
double birkhoff_derivative_sum(const Iet<double>& T, const Cocycle& phi, double x,
                               long long n, double guard_eps = -1.0);

// A maximal subinterval of the source on which T^steps is a translation with
// a discontinuity-free itinerary.
struct OrbitPiece {
  Interval dom;
  double shift = 0.0;
  long long steps = 0;
};

// Partition of J into pieces with continuous (affine) T^j for all j <= q.
std::vector<OrbitPiece> continuity_partition(const Iet<double>& T, Interval J,
                                             long long q,
                                             size_t max_pieces = 1 << 22);

// First-return system of T to J: pieces with their return times and shifts.
struct InducedSystem {
  Interval J;
  std::vector<OrbitPiece> pieces;  // sorted by dom.a, dom.shift maps into J
  long long max_return = 0;

  // induced map evaluation
  double apply(double x) const;
  long long return_time(double x) const;

  // the induced IET on [0,|J|) together with its permutation
  Iet<double> induced_iet() const;
};

InducedSystem first_return_system(const Iet<double>& T, Interval J,
                                  long long iteration_cap = 1 << 24);

// Induced cocycle phi_J(x) = S_{r_J(x)} phi(x) on J.
class InducedCocycle : public Cocycle {
 public:
  InducedCocycle(Iet<double> T, CocyclePtr phi, InducedSystem sys)
      : T_(std::move(T)), phi_(std::move(phi)), sys_(std::move(sys)) {}
  double value(double x) const override {
    return birkhoff_sum(T_, *phi_, x, sys_.return_time(x));
  }
  double derivative(double x) const override {
    return birkhoff_derivative_sum(T_, *phi_, x, sys_.return_time(x));
  }
  std::vector<SingularPoint> singularities() const override;
  const InducedSystem& system() const { return sys_; }

 private:
  Iet<double> T_;
  CocyclePtr phi_;
  InducedSystem sys_;
};

struct InducedCocycleResult {
  InducedSystem system;
  std::shared_ptr<InducedCocycle> phi_J;
};

InducedCocycleResult induced_cocycle(const Iet<double>& T, CocyclePtr phi,
                                     Interval J, long long cap = 1 << 24);

// m(f, J) by endpoint-substituted adaptive quadrature.
double mean_value(const std::function<double(double)>& f, Interval J,
                  double rel_tol = 1e-10);
double mean_value(const Cocycle& f, Interval J, double rel_tol = 1e-10);

// Grid sup of |f(T^{-1} I x) + f(x)| off guard zones.
double anti_symmetry_defect(const Iet<double>& T, const Cocycle& f,
                            int grid = 20000);

// delta-slimming of an interval.
Interval slim(Interval J, double delta);

// Level-n special Birkhoff data extracted from a renormalization orbit:
// S(n)(phi)(x) = S_{q_a}(phi)(x) for x in the level-n exchanged interval a.
struct SpecialBirkhoff {
  Iet<double> level_iet;        // (pi^(n), lambda^(n)) positioned at 0
  std::vector<long long> q;     // per-symbol return times
  Iet<double> base_iet;         // the original map
  CocyclePtr phi;

  double evaluate(double x) const;
  // L1 norm over the level-n interval, split along the continuity partition
  double l1_norm(double rel_tol = 1e-7) const;
};

SpecialBirkhoff special_birkhoff(const RenormOrbit<double>& orbit, int n,
                                 CocyclePtr phi);

// Extrema of |S_q(f')| over a sampled grid on slimmed tower levels, with the
// ratio to q * theta(q).
struct DerivativeSumBounds {
  double min_abs = 0.0, max_abs = 0.0;
  double min_ratio = 0.0, max_ratio = 0.0;  // relative to q * theta(q)
  long long q = 0;
};

DerivativeSumBounds derivative_sum_bounds(const Iet<double>& T, const Cocycle& f,
                                          const std::vector<Interval>& levels,
                                          long long q, const ThetaModel& model,
                                          int grid_per_level = 12,
                                          double slim_delta = 0.25);

}  // namespace ietlab
