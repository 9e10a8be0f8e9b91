#include "ietlab/birkhoff.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

namespace ietlab {

namespace {

void check_guard(const Cocycle& phi, double x, double eps, long long idx) {
  if (guard_distance(phi, x) < eps)
    throw GuardError("orbit entered the guard zone of a singularity", idx, x);
}

}  // namespace

double birkhoff_sum(const Iet<double>& T, const Cocycle& phi, double x,
                    long long n, double guard_eps) {
  if (guard_eps < 0) guard_eps = default_guard(T);
  double s = 0.0, c = 0.0;
  auto add = [&](double v) {  // Kahan
    double y = v - c;
    double t = s + y;
    c = (t - s) - y;
    s = t;
  };
  if (n >= 0) {
    double p = x;
    for (long long j = 0; j < n; ++j) {
      check_guard(phi, p, guard_eps, j);
      add(phi.value(p));
      p = T.apply(p);
    }
  } else {
    double p = x;
    for (long long j = -1; j >= n; --j) {
      p = T.inverse_apply(p);
      check_guard(phi, p, guard_eps, j);
      add(-phi.value(p));
    }
  }
  return s;
}

double birkhoff_derivative_sum(const Iet<double>& T, const Cocycle& phi, double x,
                               long long n, double guard_eps) {
  if (guard_eps < 0) guard_eps = default_guard(T);
  double s = 0.0, c = 0.0;
  auto add = [&](double v) {
    double y = v - c;
    double t = s + y;
    c = (t - s) - y;
    s = t;
  };
  if (n >= 0) {
    double p = x;
    for (long long j = 0; j < n; ++j) {
      check_guard(phi, p, guard_eps, j);
      add(phi.derivative(p));
      p = T.apply(p);
    }
  } else {
    double p = x;
    for (long long j = -1; j >= n; --j) {
      p = T.inverse_apply(p);
      check_guard(phi, p, guard_eps, j);
      add(-phi.derivative(p));
    }
  }
  return s;
}

std::vector<OrbitPiece> continuity_partition(const Iet<double>& T, Interval J,
                                             long long q, size_t max_pieces) {
  struct Work {
    Interval dom;
    double shift;
  };
  std::vector<Work> cur{{J, 0.0}};
  const double total = T.total_length();
  for (long long step = 0; step < q; ++step) {
    std::vector<Work> nxt;
    nxt.reserve(cur.size() + 4);
    for (const Work& w : cur) {
      double u = w.dom.a + w.shift;
      double v = w.dom.b + w.shift;
      // split the image [u, v) along the exchanged-interval endpoints
      double pos = u;
      while (pos < v) {
        int a = T.interval_of(pos);
        double cut = std::min(v, T.left(a) + T.lambda()[a]);
        nxt.push_back({{pos - w.shift, cut - w.shift}, w.shift + T.translation(a)});
        pos = cut;
        if (nxt.size() > max_pieces)
          throw DomainError("continuity_partition: piece budget exceeded");
      }
    }
    cur = std::move(nxt);
    (void)total;
  }
  std::vector<OrbitPiece> out;
  out.reserve(cur.size());
  for (const Work& w : cur)
    if (!w.dom.empty()) out.push_back({w.dom, w.shift, q});
  std::sort(out.begin(), out.end(),
            [](const OrbitPiece& x, const OrbitPiece& y) { return x.dom.a < y.dom.a; });
  return out;
}

InducedSystem first_return_system(const Iet<double>& T, Interval J,
                                  long long iteration_cap) {
  if (J.empty()) throw DomainError("first_return_system: empty interval");
  struct Work {
    Interval dom;
    double shift;
    long long steps;
  };
  InducedSystem sys;
  sys.J = J;
  std::deque<Work> active{{J, 0.0, 0}};
  while (!active.empty()) {
    Work w = active.front();
    active.pop_front();
    if (w.dom.empty()) continue;
    if (w.steps >= iteration_cap)
      throw DomainError("first_return_system: iteration cap exceeded at x=" +
                        std::to_string(w.dom.a));
    // apply one step of T to the current image, splitting at discontinuities
    const double u = w.dom.a + w.shift;
    const double v = w.dom.b + w.shift;
    double pos = u;
    while (pos < v) {
      const int a = T.interval_of(pos);
      const double cut = std::min(v, T.left(a) + T.lambda()[a]);
      Work piece{{pos - w.shift, cut - w.shift}, w.shift + T.translation(a),
                 w.steps + 1};
      // split the image along the J boundary: inside parts retire
      const double iu = piece.dom.a + piece.shift;
      const double iv = piece.dom.b + piece.shift;
      const double lo = std::max(iu, J.a);
      const double hi = std::min(iv, J.b);
      if (iu < std::min(iv, J.a))
        active.push_back({{piece.dom.a, std::min(piece.dom.b, J.a - piece.shift)},
                          piece.shift, piece.steps});
      if (lo < hi)
        sys.pieces.push_back(
            {{lo - piece.shift, hi - piece.shift}, piece.shift, piece.steps});
      if (iv > std::max(iu, J.b))
        active.push_back({{std::max(piece.dom.a, J.b - piece.shift), piece.dom.b},
                          piece.shift, piece.steps});
      pos = cut;
      if (sys.pieces.size() + active.size() > (1u << 20))
        throw DomainError("first_return_system: fragmentation budget exceeded");
    }
  }
  std::sort(sys.pieces.begin(), sys.pieces.end(),
            [](const OrbitPiece& x, const OrbitPiece& y) { return x.dom.a < y.dom.a; });
  for (const auto& p : sys.pieces) sys.max_return = std::max(sys.max_return, p.steps);
  return sys;
}

double InducedSystem::apply(double x) const {
  for (const auto& p : pieces)
    if (p.dom.contains(x)) return x + p.shift;
  throw DomainError("induced map: point outside the partition");
}

long long InducedSystem::return_time(double x) const {
  for (const auto& p : pieces)
    if (p.dom.contains(x)) return p.steps;
  throw DomainError("induced map: point outside the partition");
}

Iet<double> InducedSystem::induced_iet() const {
  const int m = static_cast<int>(pieces.size());
  if (m == 0) throw DomainError("induced_iet: no pieces");
  std::vector<std::pair<double, int>> by_image(m);
  std::vector<double> lengths(m);
  for (int i = 0; i < m; ++i) {
    by_image[i] = {pieces[i].dom.a + pieces[i].shift, i};
    lengths[i] = pieces[i].dom.length();
  }
  std::sort(by_image.begin(), by_image.end());
  std::vector<std::string> alphabet(m);
  std::vector<int> pi0(m), pi1(m);
  for (int i = 0; i < m; ++i) {
    alphabet[i] = "P" + std::to_string(i);
    pi0[i] = i + 1;
  }
  for (int rank = 0; rank < m; ++rank) pi1[by_image[rank].second] = rank + 1;
  Permutation perm(alphabet, pi0, pi1);
  return Iet<double>(perm, lengths);
}

std::vector<SingularPoint> InducedCocycle::singularities() const {
  // endpoints of the return pieces inherit the singular behaviour
  std::vector<SingularPoint> s;
  for (const auto& p : sys_.pieces) {
    s.push_back({p.dom.a, true});
    s.push_back({p.dom.b, false});
  }
  return s;
}

InducedCocycleResult induced_cocycle(const Iet<double>& T, CocyclePtr phi,
                                     Interval J, long long cap) {
  InducedCocycleResult out;
  out.system = first_return_system(T, J, cap);
  out.phi_J = std::make_shared<InducedCocycle>(T, phi, out.system);
  return out;
}

double mean_value(const std::function<double(double)>& f, Interval J,
                  double rel_tol) {
  if (J.empty()) throw DomainError("mean_value: empty interval");
  auto r = integrate_endpoint_singular(f, J.a, J.b, rel_tol);
  return r.value / J.length();
}

double mean_value(const Cocycle& f, Interval J, double rel_tol) {
  return mean_value([&](double x) { return f.value(x); }, J, rel_tol);
}

double anti_symmetry_defect(const Iet<double>& T, const Cocycle& f, int grid) {
  const double L = T.total_length();
  const double eps = default_guard(T) * 10;
  double defect = 0.0;
  for (int i = 1; i < grid; ++i) {
    double x = L * i / grid;
    double y = T.reflect(x);
    if (y <= 0.0 || y >= L) continue;
    double ty;
    try {
      ty = T.inverse_apply(y);
    } catch (const DomainError&) {
      continue;
    }
    if (guard_distance(f, x) < eps || guard_distance(f, ty) < eps) continue;
    defect = std::max(defect, std::fabs(f.value(ty) + f.value(x)));
  }
  return defect;
}

Interval slim(Interval J, double delta) {
  if (delta < 0.0 || delta >= 0.5)
    throw DomainError("slim: delta must lie in [0, 1/2)");
  const double len = J.length();
  return {J.a + delta * len, J.b - delta * len};
}

double SpecialBirkhoff::evaluate(double x) const {
  const int a = level_iet.interval_of(x);
  return birkhoff_sum(base_iet, *phi, x, q[a]);
}

double SpecialBirkhoff::l1_norm(double rel_tol) const {
  double total = 0.0;
  for (int a = 0; a < level_iet.d(); ++a) {
    Interval ia{level_iet.left(a), level_iet.right(a)};
    auto pieces = continuity_partition(base_iet, ia, q[a]);
    for (const auto& pc : pieces) {
      if (pc.dom.length() < 1e-15) continue;
      auto f = [&](double x) {
        return std::fabs(birkhoff_sum(base_iet, *phi, x, q[a]));
      };
      auto r = integrate_endpoint_singular(f, pc.dom.a, pc.dom.b, rel_tol,
                                           1e-12 * pc.dom.length());
      total += r.value;
    }
  }
  return total;
}

SpecialBirkhoff special_birkhoff(const RenormOrbit<double>& orbit, int n,
                                 CocyclePtr phi) {
  if (n < 0 || n > orbit.levels())
    throw DomainError("special_birkhoff: level not reached by the orbit");
  SpecialBirkhoff sb;
  sb.level_iet = orbit.iet_at(n);
  sb.base_iet = orbit.initial;
  sb.phi = std::move(phi);
  sb.q.resize(orbit.initial.d());
  for (int a = 0; a < orbit.initial.d(); ++a) {
    if (orbit.q[n][a] > BigInt(std::numeric_limits<long long>::max() / 2))
      throw DomainError("special_birkhoff: return time exceeds iteration budget");
    sb.q[a] = orbit.q[n][a].convert_to<long long>();
  }
  return sb;
}

DerivativeSumBounds derivative_sum_bounds(const Iet<double>& T, const Cocycle& f,
                                          const std::vector<Interval>& levels,
                                          long long q, const ThetaModel& model,
                                          int grid_per_level, double slim_delta) {
  DerivativeSumBounds out;
  out.q = q;
  out.min_abs = std::numeric_limits<double>::infinity();
  out.max_abs = 0.0;
  const double denom =
      static_cast<double>(q) * model.theta(static_cast<double>(q));
  for (const auto& lev : levels) {
    Interval s = slim(lev, slim_delta);
    for (int i = 0; i < grid_per_level; ++i) {
      double x = s.a + s.length() * (i + 0.5) / grid_per_level;
      double v;
      try {
        v = std::fabs(birkhoff_derivative_sum(T, f, x, q));
      } catch (const GuardError&) {
        continue;
      }
      out.min_abs = std::min(out.min_abs, v);
      out.max_abs = std::max(out.max_abs, v);
    }
  }
  out.min_ratio = out.min_abs / denom;
  out.max_ratio = out.max_abs / denom;
  return out;
}

}  // namespace ietlab
