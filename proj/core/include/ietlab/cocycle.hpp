#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ietlab/iet.hpp"
#include "ietlab/types.hpp"

namespace ietlab {

// Slowly-varying generator g with primitive G, G(0) = 0. Registry entries:
// "const1" (g = 1, the logarithmic case) and "log_e_plus_x".
struct GFunction {
  std::string name;
  std::function<double(double)> g;
  std::function<double(double)> gp;  // g'
  std::function<double(double)> G;   // primitive, G(0) = 0

  static GFunction const1();
  static GFunction log_e_plus_x();
  static GFunction by_name(const std::string& name);
};

// theta(x) = G(log x) on (1, inf), tau(s) = s / g(-log s) on (0, 1).
// The two tau definitions (s/g(-log s) and s^2/theta'(1/s)) agree because
// theta'(x) = g(log x)/x.
struct ThetaModel {
  GFunction gf;

  explicit ThetaModel(GFunction g) : gf(std::move(g)) {}
  double theta(double x) const { return gf.G(std::log(x)); }
  double theta_prime(double x) const { return gf.g(std::log(x)) / x; }
  double tau(double s) const { return s / gf.g(-std::log(s)); }
  double tau_via_theta(double s) const { return s * s / theta_prime(1.0 / s); }
};

// One-sided singular approach point: the cocycle blows up as x -> pos from
// above (from_above) or from below.
struct SingularPoint {
  double pos;
  bool from_above;
};

class Cocycle {
 public:
  virtual ~Cocycle() = default;
  virtual double value(double x) const = 0;
  virtual double derivative(double x) const = 0;
  virtual std::vector<SingularPoint> singularities() const { return {}; }
  // true when the restriction to every exchanged interval is increasing, or
  // every one decreasing
  virtual bool piecewise_monotonic() const { return false; }
};

using CocyclePtr = std::shared_ptr<const Cocycle>;

// Signed distance to the nearest singular approach direction; +inf if none.
double guard_distance(const Cocycle& f, double x);

// Piecewise-polynomial absolutely continuous part, one coefficient row per
// exchanged interval (may be empty = zero).
struct PiecewisePoly {
  std::vector<std::vector<double>> coeffs;  // per alphabet index, ascending deg
  double value(int interval, double x) const;
  double derivative(int interval, double x) const;
  bool empty() const;
};

// Cocycle with logarithmic singularities of geometric type. Constants are
// kept as exact rationals so the scalar invariants and the anti-symmetric
// decomposition are exact arithmetic.
//
// Two evaluation forms share the same constants (they differ by an absolutely
// continuous part): the "wrapped" global sum
//   -sum C+_a log(|I|{(x-l_a)/|I|}) - sum C-_a log(|I|{(r_a-x)/|I|}) + g(x)
// and the "local" per-interval form
//   -C+_a log(x-l_a) - C-_a log(r_a-x) + g(x)  on I_a.
class LogSingularCocycle : public Cocycle {
 public:
  enum class Form { wrapped, local };

  LogSingularCocycle(const Iet<double>& T, std::vector<Rational> c_plus,
                     std::vector<Rational> c_minus, PiecewisePoly smooth = {},
                     Form form = Form::wrapped);

  double value(double x) const override;
  double derivative(double x) const override;
  std::vector<SingularPoint> singularities() const override;
  bool piecewise_monotonic() const override;

  const std::vector<Rational>& c_plus() const { return cp_; }
  const std::vector<Rational>& c_minus() const { return cm_; }
  const Iet<double>& iet() const { return iet_; }
  Form form() const { return form_; }
  const PiecewisePoly& smooth() const { return smooth_; }

  // boundary-vanishing requirement of the class definition
  bool boundary_condition_holds() const;

 private:
  Iet<double> iet_;
  std::vector<Rational> cp_, cm_;
  std::vector<double> cpd_, cmd_;
  PiecewisePoly smooth_;
  Form form_;
};

// The explicit anti-symmetric model: a log(x-l_a) - a log(r_a-x) on every
// I_a with pi0(a) != d, zero on the remaining interval. Local form.
std::shared_ptr<LogSingularCocycle> make_phi_a(const Iet<double>& T, Rational a);

// Power/log singular model piece: for 0 <= k < m-2 a one-sided power
// (s-l)^((k-(m-2))/m) / (m^2 k!), for k = m-2 a log singularity
// -log(s-l) / (m^2 (m-2)!); anchored left (odd parity) or right (even).
struct XiTerm {
  int m = 2;
  int k = 0;
  bool odd_parity = true;  // odd: anchored at the left endpoint
  double scale = 1.0;      // multiplies the model
  double constant = 0.0;   // the free additive constant, default 0
};

double xi_value(const XiTerm& t, double s, double left, double right);
double xi_derivative(const XiTerm& t, double s, double left, double right);

// theta-class cocycle: per exchanged interval a list of xi-model terms plus a
// polynomial part.
class ThetaSingularCocycle : public Cocycle {
 public:
  ThetaSingularCocycle(const Iet<double>& T, std::vector<std::vector<XiTerm>> pieces,
                       PiecewisePoly smooth = {});

  double value(double x) const override;
  double derivative(double x) const override;
  std::vector<SingularPoint> singularities() const override;
  bool piecewise_monotonic() const override;

  const Iet<double>& iet() const { return iet_; }
  const std::vector<std::vector<XiTerm>>& pieces() const { return pieces_; }

 private:
  Iet<double> iet_;
  std::vector<std::vector<XiTerm>> pieces_;
  PiecewisePoly smooth_;
};

// Constructor for a single model piece per the case split on k.
XiTerm zeta_singular_model(int m_sigma, int k, bool odd_parity,
                           double constant = 0.0);

// Plain callable wrapper for test observables (coboundaries etc.).
class CallableCocycle : public Cocycle {
 public:
  CallableCocycle(std::function<double(double)> f, std::function<double(double)> fp,
                  std::vector<SingularPoint> sing = {}, bool monotonic = false)
      : f_(std::move(f)), fp_(std::move(fp)), sing_(std::move(sing)),
        monotonic_(monotonic) {}
  double value(double x) const override { return f_(x); }
  double derivative(double x) const override { return fp_(x); }
  std::vector<SingularPoint> singularities() const override { return sing_; }
  bool piecewise_monotonic() const override { return monotonic_; }

 private:
  std::function<double(double)> f_, fp_;
  std::vector<SingularPoint> sing_;
  bool monotonic_;
};

// Scalar invariants of the log-singular class.
struct ScalarInvariants {
  Rational L;                        // sum |C+| + |C-|
  double LV = 0.0;                   // L + Var g  (variation estimated)
  double var_g = 0.0;
  double var_g_tolerance = 0.0;      // grid-refinement stabilization residual
  std::vector<Rational> delta_per_orbit;  // Delta_O, orbit order of Sigma(pi)
  Rational AS;                       // sum |Delta_O|
};

ScalarInvariants scalar_invariants(const LogSingularCocycle& phi);

// Decomposition phi = phi_a + phi_s with AS(phi_s) = 0 in exact constants
// arithmetic; requires a symmetric base IET. For the single-orbit case the
// model coefficient is a = Delta_O / (2(d-1)): the explicit model carries the
// log pair on d-1 intervals, so this choice reproduces Delta_O exactly.
struct AntisymDecomposition {
  std::shared_ptr<LogSingularCocycle> phi_a;
  std::shared_ptr<LogSingularCocycle> phi_s;
  std::vector<Rational> model_coefficients;  // per orbit
};

AntisymDecomposition antisym_decompose(const LogSingularCocycle& phi);

// Z_theta / z_theta on geometric grids accumulating at the endpoints.
struct ThetaClassEstimate {
  double Z = 0.0;            // sup estimate
  double z = 0.0;            // max over alpha of min over the two sides
  double refinement_drift = 0.0;  // relative change on grid doubling
};

ThetaClassEstimate theta_class_estimate(const Cocycle& f, const Iet<double>& T,
                                        const ThetaModel& model,
                                        int points_per_side = 64);

}  // namespace ietlab
