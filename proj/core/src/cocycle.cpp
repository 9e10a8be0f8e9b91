#include "ietlab/cocycle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ietlab {

GFunction GFunction::const1() {
  GFunction g;
  g.name = "const1";
  g.g = [](double) { return 1.0; };
  g.gp = [](double) { return 0.0; };
  g.G = [](double t) { return t; };
  return g;
}

GFunction GFunction::log_e_plus_x() {
  GFunction g;
  g.name = "log_e_plus_x";
  g.g = [](double x) { return std::log(M_E + x); };
  g.gp = [](double x) { return 1.0 / (M_E + x); };
  g.G = [](double t) { return (M_E + t) * std::log(M_E + t) - t - M_E; };
  return g;
}

GFunction GFunction::by_name(const std::string& name) {
  if (name == "const1") return const1();
  if (name == "log_e_plus_x") return log_e_plus_x();
  throw DomainError("unknown g function: " + name);
}

double guard_distance(const Cocycle& f, double x) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& s : f.singularities()) {
    if (s.from_above) {
      if (x >= s.pos) best = std::min(best, x - s.pos);
    } else {
      if (x <= s.pos) best = std::min(best, s.pos - x);
    }
  }
  return best;
}

double PiecewisePoly::value(int interval, double x) const {
  if (coeffs.empty() || interval >= static_cast<int>(coeffs.size())) return 0.0;
  const auto& c = coeffs[interval];
  double v = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
  return v;
}

double PiecewisePoly::derivative(int interval, double x) const {
  if (coeffs.empty() || interval >= static_cast<int>(coeffs.size())) return 0.0;
  const auto& c = coeffs[interval];
  double v = 0.0;
  for (size_t k = c.size(); k-- > 1;) v = v * x + static_cast<double>(k) * c[k];
  return v;
}

bool PiecewisePoly::empty() const {
  for (const auto& c : coeffs)
    for (double v : c)
      if (v != 0.0) return false;
  return true;
}

LogSingularCocycle::LogSingularCocycle(const Iet<double>& T,
                                       std::vector<Rational> c_plus,
                                       std::vector<Rational> c_minus,
                                       PiecewisePoly smooth, Form form)
    : iet_(T), cp_(std::move(c_plus)), cm_(std::move(c_minus)),
      smooth_(std::move(smooth)), form_(form) {
  const int d = iet_.d();
  if (static_cast<int>(cp_.size()) != d || static_cast<int>(cm_.size()) != d)
    throw StructuralError("log cocycle: constant vectors must have size d");
  cpd_.resize(d);
  cmd_.resize(d);
  for (int a = 0; a < d; ++a) {
    cpd_[a] = cp_[a].convert_to<double>();
    cmd_[a] = cm_[a].convert_to<double>();
  }
}

bool LogSingularCocycle::boundary_condition_holds() const {
  const auto& p = iet_.perm();
  const int d = iet_.d();
  return cm_[p.inv0(d)] * cm_[p.inv1(d)] == 0 &&
         cp_[p.inv0(1)] * cp_[p.inv1(1)] == 0;
}

double LogSingularCocycle::value(double x) const {
  const int d = iet_.d();
  const double L = iet_.total_length();
  const int ix = iet_.interval_of(x);
  double v = smooth_.value(ix, x);
  if (form_ == Form::local) {
    if (cpd_[ix] != 0.0) v -= cpd_[ix] * std::log(x - iet_.left(ix));
    if (cmd_[ix] != 0.0) v -= cmd_[ix] * std::log(iet_.right(ix) - x);
    return v;
  }
  for (int a = 0; a < d; ++a) {
    if (cpd_[a] != 0.0) {
      double y = (x - iet_.left(a)) / L;
      y -= std::floor(y);
      v -= cpd_[a] * std::log(L * y);
    }
    if (cmd_[a] != 0.0) {
      double y = (iet_.right(a) - x) / L;
      y -= std::floor(y);
      v -= cmd_[a] * std::log(L * y);
    }
  }
  return v;
}

double LogSingularCocycle::derivative(double x) const {
  const int d = iet_.d();
  const double L = iet_.total_length();
  const int ix = iet_.interval_of(x);
  double v = smooth_.derivative(ix, x);
  if (form_ == Form::local) {
    if (cpd_[ix] != 0.0) v -= cpd_[ix] / (x - iet_.left(ix));
    if (cmd_[ix] != 0.0) v += cmd_[ix] / (iet_.right(ix) - x);
    return v;
  }
  for (int a = 0; a < d; ++a) {
    if (cpd_[a] != 0.0) {
      double y = (x - iet_.left(a)) / L;
      y -= std::floor(y);
      v -= cpd_[a] / (L * y);
    }
    if (cmd_[a] != 0.0) {
      double y = (iet_.right(a) - x) / L;
      y -= std::floor(y);
      v += cmd_[a] / (L * y);
    }
  }
  return v;
}

std::vector<SingularPoint> LogSingularCocycle::singularities() const {
  std::vector<SingularPoint> s;
  for (int a = 0; a < iet_.d(); ++a) {
    if (cpd_[a] != 0.0) s.push_back({iet_.left(a), true});
    if (cmd_[a] != 0.0) s.push_back({iet_.right(a), false});
  }
  return s;
}

bool LogSingularCocycle::piecewise_monotonic() const {
  if (!smooth_.empty()) return false;
  bool inc = true, dec = true;
  for (int a = 0; a < iet_.d(); ++a) {
    if (cp_[a] == 0 && cm_[a] == 0) continue;  // constant piece, either way
    if (!(cp_[a] <= 0 && cm_[a] >= 0)) inc = false;
    if (!(cp_[a] >= 0 && cm_[a] <= 0)) dec = false;
  }
  return inc || dec;
}

std::shared_ptr<LogSingularCocycle> make_phi_a(const Iet<double>& T, Rational a) {
  const int d = T.d();
  std::vector<Rational> cp(d, Rational(0)), cm(d, Rational(0));
  for (int i = 0; i < d; ++i) {
    if (T.perm().pi0(i) == d) continue;
    cp[i] = -a;
    cm[i] = a;
  }
  return std::make_shared<LogSingularCocycle>(T, std::move(cp), std::move(cm),
                                              PiecewisePoly{},
                                              LogSingularCocycle::Form::local);
}

namespace {
double factorial(int n) {
  double v = 1.0;
  for (int i = 2; i <= n; ++i) v *= i;
  return v;
}
}  // namespace

XiTerm zeta_singular_model(int m_sigma, int k, bool odd_parity, double constant) {
  if (m_sigma < 2) throw DomainError("xi model requires multiplicity >= 2");
  if (k < 0 || k > m_sigma - 2) throw DomainError("xi model: k out of [0, m-2]");
  XiTerm t;
  t.m = m_sigma;
  t.k = k;
  t.odd_parity = odd_parity;
  t.scale = 1.0;
  t.constant = constant;
  return t;
}

double xi_value(const XiTerm& t, double s, double left, double right) {
  const double u = t.odd_parity ? s - left : right - s;
  const double m2 = static_cast<double>(t.m) * t.m;
  if (t.k == t.m - 2)
    return t.constant - t.scale * std::log(u) / (m2 * factorial(t.m - 2));
  const double expo = static_cast<double>(t.k - (t.m - 2)) / t.m;
  return t.constant + t.scale * std::pow(u, expo) / (m2 * factorial(t.k));
}

double xi_derivative(const XiTerm& t, double s, double left, double right) {
  const double u = t.odd_parity ? s - left : right - s;
  const double sgn = t.odd_parity ? 1.0 : -1.0;
  const double m2 = static_cast<double>(t.m) * t.m;
  if (t.k == t.m - 2) return -sgn * t.scale / (m2 * factorial(t.m - 2) * u);
  const double expo = static_cast<double>(t.k - (t.m - 2)) / t.m;
  return sgn * t.scale * expo * std::pow(u, expo - 1.0) / (m2 * factorial(t.k));
}

ThetaSingularCocycle::ThetaSingularCocycle(const Iet<double>& T,
                                           std::vector<std::vector<XiTerm>> pieces,
                                           PiecewisePoly smooth)
    : iet_(T), pieces_(std::move(pieces)), smooth_(std::move(smooth)) {
  if (static_cast<int>(pieces_.size()) != T.d())
    throw StructuralError("theta cocycle: need one (possibly empty) piece list per interval");
}

double ThetaSingularCocycle::value(double x) const {
  const int ix = iet_.interval_of(x);
  double v = smooth_.value(ix, x);
  for (const auto& t : pieces_[ix])
    v += xi_value(t, x, iet_.left(ix), iet_.right(ix));
  return v;
}

double ThetaSingularCocycle::derivative(double x) const {
  const int ix = iet_.interval_of(x);
  double v = smooth_.derivative(ix, x);
  for (const auto& t : pieces_[ix])
    v += xi_derivative(t, x, iet_.left(ix), iet_.right(ix));
  return v;
}

std::vector<SingularPoint> ThetaSingularCocycle::singularities() const {
  std::vector<SingularPoint> s;
  for (int a = 0; a < iet_.d(); ++a)
    for (const auto& t : pieces_[a]) {
      if (t.scale == 0.0) continue;
      if (t.odd_parity)
        s.push_back({iet_.left(a), true});
      else
        s.push_back({iet_.right(a), false});
    }
  return s;
}

bool ThetaSingularCocycle::piecewise_monotonic() const {
  // sampled sign check of the derivative on every piece
  bool nonneg = true, nonpos = true;
  for (int a = 0; a < iet_.d(); ++a) {
    const double l = iet_.left(a), r = iet_.right(a), len = r - l;
    for (int j = 1; j <= 40; ++j) {
      double off = len * 0.5 * std::pow(0.7, j);
      for (double x : {l + off, r - off, l + len * j / 41.0}) {
        if (x <= l || x >= r) continue;
        double dv = derivative(x);
        if (dv > 0) nonpos = false;
        if (dv < 0) nonneg = false;
      }
    }
  }
  return nonneg || nonpos;
}

ScalarInvariants scalar_invariants(const LogSingularCocycle& phi) {
  ScalarInvariants inv;
  const auto& T = phi.iet();
  const int d = T.d();
  inv.L = 0;
  for (int a = 0; a < d; ++a) inv.L += abs(phi.c_plus()[a]) + abs(phi.c_minus()[a]);

  const auto sing = sigma_and_genus(T.perm());
  inv.delta_per_orbit.assign(sing.num_orbits, Rational(0));
  for (int o = 0; o < sing.num_orbits; ++o) {
    for (int a : sing.marked_minus[o]) inv.delta_per_orbit[o] += phi.c_minus()[a];
    for (int a : sing.marked_plus[o]) inv.delta_per_orbit[o] -= phi.c_plus()[a];
  }
  inv.AS = 0;
  for (const auto& dl : inv.delta_per_orbit) inv.AS += abs(dl);

  // total variation of the smooth part on dyadic grids, Richardson-stabilized
  auto tv = [&](int n_per_interval) {
    double v = 0.0;
    for (int a = 0; a < d; ++a) {
      double prev = phi.smooth().value(a, T.left(a));
      for (int i = 1; i <= n_per_interval; ++i) {
        double x = T.left(a) + (T.right(a) - T.left(a)) * i / n_per_interval;
        double cur = phi.smooth().value(a, x);
        v += std::fabs(cur - prev);
        prev = cur;
      }
    }
    return v;
  };
  double v1 = tv(1 << 9), v2 = tv(1 << 10);
  inv.var_g = v2 + (v2 - v1);
  inv.var_g_tolerance = std::fabs(v2 - v1);
  inv.LV = inv.L.convert_to<double>() + inv.var_g;
  return inv;
}

AntisymDecomposition antisym_decompose(const LogSingularCocycle& phi) {
  const auto& T = phi.iet();
  const int d = T.d();
  if (!T.perm().symmetric())
    throw DomainError("antisym_decompose requires a symmetric IET");

  const auto sing = sigma_and_genus(T.perm());
  auto inv = scalar_invariants(phi);

  // Solve for per-interval model coefficients a_alpha (columns restricted to
  // pi0(alpha) != d): each alpha contributes C- = a to the orbit of
  // pi0(alpha) and -C+ = a to the orbit of pi0(alpha)-1.
  std::vector<int> cols;
  for (int a = 0; a < d; ++a)
    if (T.perm().pi0(a) != d) cols.push_back(a);
  const int R = sing.num_orbits, C = static_cast<int>(cols.size());
  std::vector<std::vector<Rational>> M(R, std::vector<Rational>(C + 1, Rational(0)));
  for (int c = 0; c < C; ++c) {
    const int a = cols[c];
    M[sing.orbit_of[T.perm().pi0(a)]][c] += 1;
    M[sing.orbit_of[T.perm().pi0(a) - 1]][c] += 1;
  }
  for (int o = 0; o < R; ++o) M[o][C] = inv.delta_per_orbit[o];

  // exact Gauss with free variables set to zero
  std::vector<int> pivot_col(R, -1);
  int row = 0;
  for (int c = 0; c < C && row < R; ++c) {
    int pr = -1;
    for (int r = row; r < R; ++r)
      if (M[r][c] != 0) {
        pr = r;
        break;
      }
    if (pr < 0) continue;
    std::swap(M[pr], M[row]);
    Rational p = M[row][c];
    for (int cc = c; cc <= C; ++cc) M[row][cc] /= p;
    for (int r = 0; r < R; ++r) {
      if (r == row || M[r][c] == 0) continue;
      Rational f = M[r][c];
      for (int cc = c; cc <= C; ++cc) M[r][cc] -= f * M[row][cc];
    }
    pivot_col[row] = c;
    ++row;
  }
  for (int r = row; r < R; ++r)
    if (M[r][C] != 0)
      throw DomainError("antisym_decompose: orbit targets are inconsistent");

  std::vector<Rational> a_coef(d, Rational(0));
  for (int r = 0; r < row; ++r) a_coef[cols[pivot_col[r]]] = M[r][C];

  std::vector<Rational> cp_a(d, Rational(0)), cm_a(d, Rational(0));
  for (int a = 0; a < d; ++a) {
    cp_a[a] = -a_coef[a];
    cm_a[a] = a_coef[a];
  }
  auto phi_a = std::make_shared<LogSingularCocycle>(
      T, cp_a, cm_a, PiecewisePoly{}, LogSingularCocycle::Form::local);

  std::vector<Rational> cp_s(d), cm_s(d);
  for (int a = 0; a < d; ++a) {
    cp_s[a] = phi.c_plus()[a] - cp_a[a];
    cm_s[a] = phi.c_minus()[a] - cm_a[a];
  }
  auto phi_s = std::make_shared<LogSingularCocycle>(T, cp_s, cm_s, phi.smooth(),
                                                    phi.form());

  AntisymDecomposition out;
  out.phi_a = phi_a;
  out.phi_s = phi_s;
  out.model_coefficients = inv.delta_per_orbit;
  return out;
}

ThetaClassEstimate theta_class_estimate(const Cocycle& f, const Iet<double>& T,
                                        const ThetaModel& model,
                                        int points_per_side) {
  auto run = [&](int pts) {
    double Z = 0.0, zmax = 0.0;
    for (int a = 0; a < T.d(); ++a) {
      const double l = T.left(a), r = T.right(a);
      const double half = 0.5 * (r - l);
      for (int side = 0; side < 2; ++side) {
        double sup = 0.0, inf = std::numeric_limits<double>::infinity();
        for (int j = 0; j < pts; ++j) {
          const double s = half * std::pow(0.5, j * 40.0 / pts);
          const double x = side == 0 ? l + s : r - s;
          const double w = std::fabs(f.derivative(x)) * model.tau(s);
          sup = std::max(sup, w);
          inf = std::min(inf, w);
        }
        Z = std::max(Z, sup);
        zmax = std::max(zmax, inf);
      }
    }
    return std::pair<double, double>{Z, zmax};
  };
  auto [z1, s1] = run(points_per_side);
  auto [z2, s2] = run(2 * points_per_side);
  ThetaClassEstimate est;
  est.Z = z2;
  est.z = s2;
  est.refinement_drift =
      std::max(std::fabs(z2 - z1) / std::max(1e-300, z2),
               std::fabs(s2 - s1) / std::max(1e-300, std::fabs(s2)));
  return est;
}

}  // namespace ietlab
