#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "ietlab/cocycle.hpp"
#include "ietlab/quadrature.hpp"
#include "ietlab/types.hpp"

namespace ietlab {

// Tabulated inverse potential H^{-1} with (H^{-1})'(u) = g(-log u)/sqrt(u),
// H(0) = H'(0) = H''(0) = 0. For g = 1 the closed form 2 sqrt(u) is used.
class Potential {
 public:
  Potential() = default;
  Potential(GFunction g, double s0);

  double s0() const { return s0_; }
  const GFunction& g() const { return gf_; }

  double hinv(double u) const;        // H^{-1}(u)
  double hinv_prime(double u) const;  // g(-log u)/sqrt(u), closed form

  // bracket 2 sqrt(u) g(-log u) <= H^{-1}(u) <= C_g sqrt(u) g(-log u)
  double bracket_upper_constant() const { return 2.0 + 4.0 * gf_.gp(0.0); }
  bool bracket_holds(double u, double slack = 1e-9) const;

 private:
  GFunction gf_;
  double s0_ = 1.0;
  bool closed_form_ = false;
  // cubic Hermite interpolation of r(t) = H^{-1}(e^t)/(sqrt(e^t) g(-t))
  double t_min_ = 0.0, t_max_ = 0.0, dt_ = 1.0;
  std::vector<double> ratio_, dratio_;
  double ratio_at(double t) const;
};

Potential build_potential(const GFunction& g, double s0);

// Passage time of the simple saddle: case 1 has the potential on the u slot
// (integrand g(-log u)/(sqrt(u) sqrt(u-s))), case 2 on the u-s slot.
double phi1(int saddle_case, double s, const GFunction& g, double s0,
            double rel_tol = 5e-13);

// tau(s) * f'(s) by a 5-point central difference with relative step 1e-4;
// the error estimate comes from step halving.
struct SlopeResult {
  double slope = 0.0;
  double error_estimate = 0.0;
  double derivative = 0.0;
};

SlopeResult slope(const std::function<double(double)>& f, double s,
                  const ThetaModel& model, double rel_step = 1e-4);

// Sector of the imperfect multi-saddle. The full sector index is 2j + 1 for
// parity odd and 2j + 2 for parity even, 0 <= j < 2m; `saddle_case` chooses
// which coordinate carries the perfect square (1: y = second, 2: x = first).
struct SectorSpec {
  int m = 1;
  int saddle_case = 1;
  int j = 0;
  bool odd = true;  // odd full sector (2j+1) vs even (2j+2)
  int k = 0;        // monomial z^k zbar^{2(m-1)-k}
  double s0 = 0.5;
};

// Passage-time value of one monomial over one sector; complex because the
// rotated monomials carry a root-of-unity factor.
std::complex<double> phi_sector(const SectorSpec& spec, double s,
                                const Potential& pot, double rel_tol = 1e-10);

// Homogeneous polynomial of degree 2m-2: coefficients a_{k, 2m-2-k},
// k = 0..2m-2.
std::complex<double> phi_sector_poly(int m, int saddle_case, int j, bool odd,
                                     const std::vector<double>& coeffs, double s,
                                     const Potential& pot, double rel_tol = 1e-10);

// C^j(f) for j = 1..4m: the sector slope limits of the theorem, exact complex
// arithmetic. `saddle_case` = 1 reproduces the displayed formulas (the Re
// factor sits on even sectors); case 2 swaps it onto the odd sectors.
std::vector<std::complex<double>> cj_constants(int m,
                                               const std::vector<double>& coeffs,
                                               int saddle_case = 1);

struct SlopeTableRow {
  double s = 0.0;
  double slope = 0.0;
  double err_est = 0.0;
};

struct SectorAsymptotics {
  std::vector<SlopeTableRow> rows;
  double extrapolated = 0.0;  // three-point Aitken on (s, s/100, s/10^4)
  double residual = 0.0;
  std::complex<double> target;  // -C^j(f)
};

SectorAsymptotics verify_sector_asymptotics(int m, int saddle_case, int j,
                                            bool odd,
                                            const std::vector<double>& coeffs,
                                            const Potential& pot,
                                            const std::vector<double>& s_grid);

}  // namespace ietlab
