#include "ietlab/saddle.hpp"

#include <algorithm>
#include <cmath>

namespace ietlab {

namespace {

// one non-adaptive GK15 pass for the tabulation cells
double gk15_fixed(const std::function<double(double)>& f, double a, double b) {
  static const double xg[8] = {0.991455371120812639, 0.949107912342758525,
                               0.864864423359769073, 0.741531185599394440,
                               0.586087235467691130, 0.405845151377397167,
                               0.207784955007898468, 0.0};
  static const double wg[8] = {0.022935322010529225, 0.063092092629978553,
                               0.104790010322250184, 0.140653259715525919,
                               0.169004726639267903, 0.190350578064785410,
                               0.204432940075298892, 0.209482141084727828};
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double s = f(c) * wg[7];
  for (int i = 0; i < 7; ++i)
    s += wg[i] * (f(c - h * xg[i]) + f(c + h * xg[i]));
  return s * h;
}

}  // namespace

Potential::Potential(GFunction g, double s0) : gf_(std::move(g)), s0_(s0) {
  if (!(s0 > 0) || s0 > 1.0) throw DomainError("potential: need 0 < s0 <= 1");
  if (gf_.name == "const1") {
    closed_form_ = true;
    return;
  }
  // tabulate r(t) = H^{-1}(e^t) / (sqrt(e^t) g(-t)) on a uniform grid in
  // t = log u; H^{-1} accumulated cell by cell after the u = v^2 substitution
  t_min_ = std::log(1e-40);
  t_max_ = std::log(s0);
  const int per_unit = 36;  // ~83 per decade
  const int n = std::max(64, static_cast<int>((t_max_ - t_min_) * per_unit)) + 1;
  dt_ = (t_max_ - t_min_) / (n - 1);
  ratio_.resize(n);
  dratio_.resize(n);

  auto integrand_v = [&](double v) { return 2.0 * gf_.g(-2.0 * std::log(v)); };

  // base integral over (0, u_min] by geometric refinement
  const double u_min = std::exp(t_min_);
  double w_hi = std::sqrt(u_min);
  double acc = 0.0;
  {
    double hi = w_hi;
    for (int j = 0; j < 400 && hi > 1e-300; ++j) {
      double lo = hi * 0.5;
      acc += gk15_fixed(integrand_v, lo, hi);
      hi = lo;
    }
  }
  auto store = [&](int i, double hinv_u) {
    const double t = t_min_ + i * dt_;
    const double u = std::exp(t);
    ratio_[i] = hinv_u / (std::sqrt(u) * gf_.g(-t));
  };
  store(0, acc);
  double w_prev = w_hi;
  for (int i = 1; i < n; ++i) {
    const double u = std::exp(t_min_ + i * dt_);
    const double w = std::sqrt(u);
    // subdivide each tabulation cell a little for safety
    const double mid = 0.5 * (w_prev + w);
    acc += gk15_fixed(integrand_v, w_prev, mid) + gk15_fixed(integrand_v, mid, w);
    store(i, acc);
    w_prev = w;
  }
  // centered-difference slopes for the Hermite interpolant
  for (int i = 0; i < n; ++i) {
    if (i == 0)
      dratio_[i] = (ratio_[1] - ratio_[0]) / dt_;
    else if (i == n - 1)
      dratio_[i] = (ratio_[n - 1] - ratio_[n - 2]) / dt_;
    else
      dratio_[i] = (ratio_[i + 1] - ratio_[i - 1]) / (2 * dt_);
  }
}

double Potential::ratio_at(double t) const {
  if (t <= t_min_) return ratio_.front();
  if (t >= t_max_) return ratio_.back();
  const double s = (t - t_min_) / dt_;
  const int i = std::min<int>(static_cast<int>(s), static_cast<int>(ratio_.size()) - 2);
  const double x = s - i;
  const double h00 = (1 + 2 * x) * (1 - x) * (1 - x);
  const double h10 = x * (1 - x) * (1 - x);
  const double h01 = x * x * (3 - 2 * x);
  const double h11 = x * x * (x - 1);
  return h00 * ratio_[i] + h10 * dt_ * dratio_[i] + h01 * ratio_[i + 1] +
         h11 * dt_ * dratio_[i + 1];
}

double Potential::hinv(double u) const {
  if (u <= 0.0) return 0.0;
  if (closed_form_) return 2.0 * std::sqrt(u);
  const double t = std::log(u);
  return ratio_at(t) * std::sqrt(u) * gf_.g(-t);
}

double Potential::hinv_prime(double u) const {
  return gf_.g(-std::log(u)) / std::sqrt(u);
}

bool Potential::bracket_holds(double u, double slack) const {
  const double v = hinv(u);
  const double base = std::sqrt(u) * gf_.g(-std::log(u));
  return v >= 2.0 * base * (1.0 - slack) &&
         v <= bracket_upper_constant() * base * (1.0 + slack);
}

Potential build_potential(const GFunction& g, double s0) { return Potential(g, s0); }

double phi1(int saddle_case, double s, const GFunction& g, double s0,
            double rel_tol) {
  if (!(s > 0) || !(s < s0)) throw DomainError("phi1: need 0 < s < s0");
  const double W = std::sqrt(s0 - s);
  std::function<double(double)> f;
  if (saddle_case == 1) {
    f = [&g, s](double w) {
      const double u = s + w * w;
      return 2.0 * g.g(-std::log(u)) / std::sqrt(u);
    };
  } else if (saddle_case == 2) {
    f = [&g, s](double w) {
      const double u = s + w * w;
      return 2.0 * g.g(-2.0 * std::log(w)) / std::sqrt(u);
    };
  } else {
    throw DomainError("phi1: case must be 1 or 2");
  }
  auto r = integrate(f, 0.0, W, rel_tol, 0.0);
  return r.value;
}

SlopeResult slope(const std::function<double(double)>& f, double s,
                  const ThetaModel& model, double rel_step) {
  auto d5 = [&](double h) {
    return (-f(s + 2 * h) + 8 * f(s + h) - 8 * f(s - h) + f(s - 2 * h)) /
           (12 * h);
  };
  const double h = rel_step * s;
  const double d_h = d5(h);
  const double d_h2 = d5(0.5 * h);
  SlopeResult res;
  res.derivative = d_h2;
  res.slope = model.tau(s) * d_h2;
  res.error_estimate = std::fabs(model.tau(s) * (d_h - d_h2));
  return res;
}

namespace {

struct SectorSlots {
  // value and derivative of the inverse component on the u slot and the u-s
  // slot; "pot" marks which slot carries the tabulated potential
  bool pot_on_u;
};

SectorSlots sector_slots(int saddle_case, bool odd) {
  // case 1: H1 = potential, H2 = square; odd sectors put H1 on the u slot
  // case 2: H1 = square, H2 = potential
  SectorSlots sl{};
  if (saddle_case == 1)
    sl.pot_on_u = odd;
  else if (saddle_case == 2)
    sl.pot_on_u = !odd;
  else
    throw DomainError("sector: case must be 1 or 2");
  return sl;
}

}  // namespace

std::complex<double> phi_sector(const SectorSpec& spec, double s,
                                const Potential& pot, double rel_tol) {
  const int m = spec.m;
  if (m < 1) throw DomainError("phi_sector: multiplicity must be >= 1");
  const int k = spec.k, l = 2 * (m - 1) - spec.k;
  if (k < 0 || l < 0) throw DomainError("phi_sector: need 0 <= k <= 2(m-1)");
  if (!(s > 0) || !(s < spec.s0)) throw DomainError("phi_sector: need 0 < s < s0");

  const auto slots = sector_slots(spec.saddle_case, spec.odd);
  const double beta = 2.0 * static_cast<double>(k - (m - 1)) / m;
  const double m2 = static_cast<double>(m) * m;
  const double W = std::sqrt(spec.s0 - s);

  // Reduced integrand after u - s = w^2: the radial factor cancels against
  // the monomial, leaving a unit-modulus phase; the square slot's inverse
  // derivative cancels against du.
  auto integrand_re = [&](double w) {
    const double u = s + w * w;
    double ang, dens;
    if (slots.pot_on_u) {
      ang = std::atan2(w, pot.hinv(u));
      dens = pot.hinv_prime(u);
    } else {
      ang = std::atan2(pot.hinv(w * w), std::sqrt(u));
      dens = pot.g().g(-2.0 * std::log(w)) / std::sqrt(u);
    }
    return std::cos(beta * ang) * dens;
  };

  auto re = integrate(integrand_re, 0.0, W, rel_tol, 0.0);
  // the reduction keeps only the real part of the core integral
  const double core = 2.0 * re.value / m2;
  const double arg = -M_PI * static_cast<double>(spec.j) * (k - l) / m;
  return std::polar(1.0, arg) * core;
}

std::complex<double> phi_sector_poly(int m, int saddle_case, int j, bool odd,
                                     const std::vector<double>& coeffs, double s,
                                     const Potential& pot, double rel_tol) {
  if (static_cast<int>(coeffs.size()) != 2 * m - 1)
    throw DomainError("phi_sector_poly: need 2m-1 coefficients");
  std::complex<double> acc = 0.0;
  for (int k = 0; k <= 2 * (m - 1); ++k) {
    if (coeffs[k] == 0.0) continue;
    SectorSpec sp;
    sp.m = m;
    sp.saddle_case = saddle_case;
    sp.j = j;
    sp.odd = odd;
    sp.k = k;
    sp.s0 = pot.s0();
    acc += coeffs[k] * phi_sector(sp, s, pot, rel_tol);
  }
  return acc;
}

std::vector<std::complex<double>> cj_constants(int m,
                                               const std::vector<double>& coeffs,
                                               int saddle_case) {
  if (static_cast<int>(coeffs.size()) != 2 * m - 1)
    throw DomainError("cj_constants: need 2m-1 coefficients");
  std::vector<std::complex<double>> out(4 * m);
  const double m2 = static_cast<double>(m) * m;
  for (int j = 0; j < 2 * m; ++j) {
    std::complex<double> codd = 0.0, ceven = 0.0;
    for (int k = 0; k <= 2 * (m - 1); ++k) {
      if (coeffs[k] == 0.0) continue;
      const double e = static_cast<double>(k - (m - 1));
      const std::complex<double> zr = std::polar(1.0, -2.0 * M_PI * j * e / m);
      const double re_factor = std::cos(M_PI * e / m);
      codd += coeffs[k] * zr;
      ceven += coeffs[k] * zr * re_factor;
    }
    if (saddle_case == 2) std::swap(codd, ceven);
    out[2 * j] = codd / m2;       // C^{2j+1}
    out[2 * j + 1] = ceven / m2;  // C^{2j+2}
  }
  return out;
}

SectorAsymptotics verify_sector_asymptotics(int m, int saddle_case, int j,
                                            bool odd,
                                            const std::vector<double>& coeffs,
                                            const Potential& pot,
                                            const std::vector<double>& s_grid) {
  SectorAsymptotics out;
  ThetaModel model(pot.g());
  for (double s : s_grid) {
    auto f = [&](double ss) {
      return phi_sector_poly(m, saddle_case, j, odd, coeffs, ss, pot, 1e-10)
          .real();
    };
    auto sl = slope(f, s, model);
    out.rows.push_back({s, sl.slope, sl.error_estimate});
  }
  auto cj = cj_constants(m, coeffs, saddle_case);
  out.target = -(odd ? cj[2 * j] : cj[2 * j + 1]);

  // three-point Aitken on slopes at (s, s/100, s/10^4)
  if (out.rows.size() >= 3) {
    const double x0 = out.rows[out.rows.size() - 3].slope;
    const double x1 = out.rows[out.rows.size() - 2].slope;
    const double x2 = out.rows[out.rows.size() - 1].slope;
    const double den = (x2 - x1) - (x1 - x0);
    out.extrapolated = std::fabs(den) > 1e-14 ? x2 - (x2 - x1) * (x2 - x1) / den
                                              : x2;
    out.residual = std::fabs(out.extrapolated - out.target.real());
  }
  return out;
}

}  // namespace ietlab
