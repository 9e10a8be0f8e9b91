#pragma once

#include <string>
#include <vector>

#include "ietlab/birkhoff.hpp"

namespace ietlab {

// Special flow over an IET with a positive roof. The state moves up the
// fiber at unit speed and jumps (x, roof(x)) -> (Tx, 0).
class SpecialFlow {
 public:
  SpecialFlow(Iet<double> base, CocyclePtr roof, double roof_min = 1e-9);

  const Iet<double>& base() const { return base_; }
  const Cocycle& roof() const { return *roof_; }
  double roof_min() const { return roof_min_; }

 private:
  Iet<double> base_;
  CocyclePtr roof_;
  double roof_min_;
};

struct FlowIntegral {
  std::vector<double> times;   // checkpoint times actually reached
  std::vector<double> values;  // integral of the observable up to each time
  long long returns = 0;       // completed roof crossings
  bool truncated = false;      // guard violation or step budget
  double final_time = 0.0;
  double final_x = 0.0;
  double final_height = 0.0;
};

// Integrates the fiber-constant observable f_phi(x, r) = phi(x)/roof(x)
// along the flow: full crossings contribute phi(x) exactly, partial segments
// proportionally.
FlowIntegral flow_integrate(const SpecialFlow& flow, const Cocycle& phi,
                            double x0, double t_max,
                            const std::vector<double>& checkpoints,
                            long long step_cap = 1LL << 40);

// Geometric checkpoint grid t0 * ratio^k up to t_max.
std::vector<double> geometric_checkpoints(double t0, double t_max,
                                          int per_decade = 8);

struct DeviationEstimate {
  double slope = 0.0;
  double confidence = 0.0;  // block-bootstrap half-width
  int decades = 0;
  bool ok = false;
  std::string status;
};

// Least-squares slope of log(running max |value|) against log T; the running
// maximum is the finite-range proxy for the limsup. Requires >= 4 decades.
DeviationEstimate deviation_exponent(const std::vector<double>& times,
                                     const std::vector<double>& values,
                                     unsigned seed = 0x5eed);

}  // namespace ietlab
