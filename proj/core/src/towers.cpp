#include "ietlab/towers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ietlab {

namespace {

// Absolute position of the level-n exchanged interval inside [0, |I|).
Interval level_interval(const RenormOrbit<double>& orbit, int n, int symbol) {
  const auto& perm = orbit.perms[n];
  const auto& lam = orbit.lambdas[n];
  double acc = 0.0;
  for (int p = 1; p <= perm.d(); ++p) {
    const int a = perm.inv0(p);
    if (a == symbol) return {acc, acc + lam[a]};
    acc += lam[a];
  }
  throw DomainError("level_interval: unknown symbol");
}

}  // namespace

Tower tower_for_symbol(const RenormOrbit<double>& orbit, int n, int symbol,
                       long long store_levels_cap) {
  if (n < 0 || n > orbit.levels())
    throw DomainError("tower_for_symbol: orbit truncated before the level");
  Tower t;
  t.symbol = symbol;
  t.level = n;
  t.q_big = orbit.q[n][symbol];
  if (t.q_big > BigInt(std::numeric_limits<long long>::max() / 4))
    throw DomainError("tower_for_symbol: height exceeds the iteration budget");
  t.q = t.q_big.convert_to<long long>();
  t.base = level_interval(orbit, n, symbol);
  t.measure = static_cast<double>(t.q) * t.base.length();

  // T^q on the base is the level-n map restricted to its interval
  Iet<double> level_iet = orbit.iet_at(n);
  t.translation = level_iet.translation(symbol);

  const Iet<double>& T = orbit.initial;
  if (t.q <= store_levels_cap) {
    // endpoint drift accumulates ~ q ulps along the tower
    const double slack =
        T.total_length() *
        std::max(1e-12, 64.0 * std::numeric_limits<double>::epsilon() *
                            static_cast<double>(t.q));
    t.levels.reserve(static_cast<size_t>(t.q));
    Interval cur = t.base;
    for (long long i = 0; i < t.q; ++i) {
      t.levels.push_back(cur);
      const int ia = T.interval_of(cur.a);
      // the level is an interval; it crosses a discontinuity iff its right
      // part lies in a different exchanged interval
      if (cur.b > T.left(ia) + T.lambda()[ia] + slack) t.levels_clean = false;
      const double w = T.translation(ia);
      cur = {cur.a + w, cur.b + w};
    }
  }
  return t;
}

GapReport gaps_outside_tower(const RenormOrbit<double>& orbit, int n, int symbol) {
  Tower t = tower_for_symbol(orbit, n, symbol);
  if (t.levels.empty())
    throw DomainError("gaps_outside_tower: tower too tall to materialize");
  const Iet<double>& T = orbit.initial;
  const double total = T.total_length();

  std::vector<Interval> lv = t.levels;
  std::sort(lv.begin(), lv.end(),
            [](const Interval& a, const Interval& b) { return a.a < b.a; });

  GapReport rep;
  rep.tower_measure = t.measure;
  double pos = 0.0;
  for (const auto& L : lv) {
    if (L.a > pos) rep.gaps.push_back({pos, L.a});
    pos = std::max(pos, L.b);
  }
  if (pos < total) rep.gaps.push_back({pos, total});
  for (const auto& g : rep.gaps) {
    rep.gap_measure += g.length();
    rep.max_gap = std::max(rep.max_gap, g.length());
  }
  rep.dist_left = lv.front().a;
  rep.dist_right = total - lv.back().b;

  const auto& lam = orbit.lambdas[n];
  for (int b = 0; b < T.d(); ++b) {
    if (b == symbol) continue;
    rep.max_other_length = std::max(rep.max_other_length, lam[b]);
  }
  rep.max_ratio = rep.max_other_length > 0 ? rep.max_gap / rep.max_other_length
                                           : std::numeric_limits<double>::infinity();

  if (T.d() == 2) {
    // rotation: compare against the three-distance structure of the orbit of
    // the base left endpoint
    const double alpha = T.translation(0) > 0 ? T.translation(0) : total + T.translation(0);
    rep.rotation_oracle = three_distance_gaps(alpha / total, t.q, t.base.a / total);
  }
  return rep;
}

TowerConditionsReport check_conditions(const Iet<double>& T,
                                       const std::vector<Tower>& towers,
                                       double C) {
  if (towers.size() < 2)
    throw DomainError("check_conditions: need at least two towers");
  TowerConditionsReport rep;
  rep.constant = C;
  const double total = T.total_length();
  for (size_t i = 0; i < towers.size(); ++i) {
    const Tower& t = towers[i];
    TowerConditionRecord r;
    r.n = static_cast<int>(i);
    r.q = t.q;
    r.base_len = t.base.length();
    r.q_times_len = static_cast<double>(t.q) * r.base_len / total;
    r.offset_ratio = std::fabs(t.translation) / r.base_len;
    r.levels_clean = t.levels_clean;

    if (i + 1 < towers.size()) {
      r.growth = static_cast<double>(towers[i + 1].q) / static_cast<double>(t.q);
      r.qn2_5 = static_cast<double>(towers[i + 1].q) >=
                320.0 * C * C * static_cast<double>(t.q);
    }
    r.qn3 = (C >= r.q_times_len) && (r.q_times_len >= 1.0 / C);

    // holes of the tower complement
    if (!t.levels.empty()) {
      std::vector<Interval> lv = t.levels;
      std::sort(lv.begin(), lv.end(),
                [](const Interval& a, const Interval& b) { return a.a < b.a; });
      double pos = 0.0;
      int holes = 0;
      double max_hole = 0.0;
      for (const auto& L : lv) {
        if (L.a > pos + 1e-15 * total) {
          ++holes;
          max_hole = std::max(max_hole, L.a - pos);
        }
        pos = std::max(pos, L.b);
      }
      if (pos < total - 1e-15 * total) {
        ++holes;
        max_hole = std::max(max_hole, total - pos);
      }
      r.hole_count = holes;
      r.max_hole_times_q = max_hole * static_cast<double>(t.q) / total;
      r.qn4 = holes <= t.q + 1 && max_hole < C * total / static_cast<double>(t.q);
    }
    r.qn5 = r.offset_ratio > 1.0 / 16.0 && r.offset_ratio < 1.0 / 8.0;
    rep.records.push_back(r);
  }
  for (size_t i = 0; i < towers.size(); ++i) {
    double st = std::pow(static_cast<double>(towers[i].q), 1.0 / (i + 1));
    rep.qn1_statistic = std::max(rep.qn1_statistic, st);
  }
  return rep;
}

std::vector<MidpointHit> track_midpoints(const RenormOrbit<double>& orbit, int n,
                                         double tol) {
  const Iet<double>& T = orbit.initial;
  if (!T.perm().symmetric())
    throw DomainError("track_midpoints requires a symmetric IET");
  const double total = T.total_length();
  const double eps = tol * total;

  std::vector<double> targets;
  std::vector<std::string> target_names;
  targets.push_back(total / 2);
  target_names.push_back("I");
  for (int b = 0; b < T.d(); ++b) {
    targets.push_back(T.midpoint(b));
    target_names.push_back(T.perm().label(b));
  }

  Iet<double> level_iet = orbit.iet_at(n);
  std::vector<MidpointHit> out;

  auto scan = [&](const std::string& source, double start, long long cap) {
    MidpointHit hit;
    hit.source = source;
    double x = start;
    for (long long s = 0; s <= cap; ++s) {
      for (size_t ti = 0; ti < targets.size(); ++ti) {
        if (std::fabs(x - targets[ti]) <= eps) {
          hit.found = true;
          hit.steps = s;
          hit.target = targets[ti];
          hit.target_name = target_names[ti];
          hit.error = std::fabs(x - targets[ti]);
          return hit;
        }
      }
      x = T.apply(x);
    }
    return hit;
  };

  // whole level interval I^(n): midpoint = |I^(n)|/2 from the left edge
  double level_len = 0.0;
  for (double l : orbit.lambdas[n]) level_len += l;
  long long qmax = 0;
  for (int a = 0; a < T.d(); ++a) {
    BigInt qa = orbit.q[n][a];
    if (qa > BigInt(std::numeric_limits<long long>::max() / 4))
      throw DomainError("track_midpoints: return time exceeds budget");
    qmax = std::max(qmax, qa.convert_to<long long>());
  }
  out.push_back(scan("I", level_len / 2, qmax));

  for (int a = 0; a < T.d(); ++a) {
    double acc = 0.0;
    for (int p = 1; p <= T.d(); ++p) {
      const int b = orbit.perms[n].inv0(p);
      if (b == a) break;
      acc += orbit.lambdas[n][b];
    }
    const double mid = acc + orbit.lambdas[n][a] / 2;
    out.push_back(
        scan(T.perm().label(a), mid, orbit.q[n][a].convert_to<long long>()));
  }
  return out;
}

}  // namespace ietlab
