#include "ietlab/erg.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace ietlab {

SkewOrbitStats skew_orbit(const Iet<double>& T, const Cocycle& phi, double x0,
                          double r0, long long n_steps,
                          const std::vector<Interval>& fiber_windows,
                          int checkpoint_count) {
  SkewOrbitStats st;
  st.window_counts.assign(fiber_windows.size(), 0);
  st.fiber_min = st.fiber_max = r0;
  const double guard = default_guard(T);
  const long long ckpt_every =
      checkpoint_count > 0 ? std::max<long long>(1, n_steps / checkpoint_count) : 0;

  double x = x0, r = r0, comp = 0.0;
  long long n = 0;
  for (; n < n_steps; ++n) {
    if (guard_distance(phi, x) < guard) {
      st.guard_truncated = true;
      break;
    }
    if (ckpt_every && n % ckpt_every == 0) st.checkpoints.push_back({n, x, r});
    for (size_t w = 0; w < fiber_windows.size(); ++w)
      if (fiber_windows[w].contains(r)) ++st.window_counts[w];
    if (std::fabs(r - r0) <= 0.5) ++st.recurrence_count;

    double v = phi.value(x) - comp;  // Kahan on the fiber
    double t = r + v;
    comp = (t - r) - v;
    r = t;
    x = T.apply(x);
    if (r < st.fiber_min) st.fiber_min = r;
    if (r > st.fiber_max) st.fiber_max = r;
  }
  st.steps = n;
  st.final_x = x;
  st.final_fiber = r;
  return st;
}

EquidistributionResult equidistribution_test(const Iet<double>& T,
                                             const Cocycle& phi, double x0,
                                             double r0, long long n_steps,
                                             Interval i_win, Interval j_win,
                                             unsigned seed) {
  EquidistributionResult res;
  res.expected = i_win.length() / j_win.length();

  const int n_blocks = 50;
  std::vector<long long> bi(n_blocks, 0), bj(n_blocks, 0);
  const long long block_len = std::max<long long>(1, n_steps / n_blocks);

  const double guard = default_guard(T);
  double x = x0, r = r0, comp = 0.0;
  for (long long n = 0; n < n_steps; ++n) {
    if (guard_distance(phi, x) < guard) break;
    const int b = std::min<int>(n_blocks - 1, static_cast<int>(n / block_len));
    if (i_win.contains(r)) {
      ++res.count_I;
      ++bi[b];
    }
    if (j_win.contains(r)) {
      ++res.count_J;
      ++bj[b];
    }
    double v = phi.value(x) - comp;
    double t = r + v;
    comp = (t - r) - v;
    r = t;
    x = T.apply(x);
  }
  if (res.count_I < 100 || res.count_J < 100) {
    res.starved = true;
    return res;
  }
  res.ratio = static_cast<double>(res.count_I) / static_cast<double>(res.count_J);
  res.deviation = std::fabs(res.ratio - res.expected);

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, n_blocks - 1);
  const int B = 200;
  std::vector<double> ratios;
  ratios.reserve(B);
  for (int b = 0; b < B; ++b) {
    long long ci = 0, cj = 0;
    for (int t = 0; t < n_blocks; ++t) {
      int s = pick(rng);
      ci += bi[s];
      cj += bj[s];
    }
    if (cj > 0) ratios.push_back(static_cast<double>(ci) / cj);
  }
  double mean = 0;
  for (double v : ratios) mean += v;
  mean /= ratios.size();
  double var = 0;
  for (double v : ratios) var += (v - mean) * (v - mean);
  var /= std::max<size_t>(1, ratios.size() - 1);
  res.confidence = 1.96 * std::sqrt(var);
  return res;
}

std::vector<IntervalUnion> default_omega_family(double L) {
  std::vector<IntervalUnion> fam;
  for (int depth = 1; depth <= 3; ++depth) {
    const int n = 1 << depth;
    for (int i = 0; i < n; ++i)
      fam.push_back(IntervalUnion::single({L * i / n, L * (i + 1) / n}));
  }
  // a few disconnected unions
  fam.push_back(IntervalUnion({{0.0, L / 4}, {L / 2, 3 * L / 4}}));
  fam.push_back(IntervalUnion({{L / 8, L / 4}, {5 * L / 8, 3 * L / 4}}));
  fam.push_back(IntervalUnion({{0.0, L / 8}, {L / 2, 5 * L / 8}, {7 * L / 8, L}}));
  return fam;
}

EssentialValueScan essential_value_scan(const Iet<double>& T, const Cocycle& phi,
                                        const std::vector<IntervalUnion>& omegas,
                                        const std::vector<long long>& n_values,
                                        double epsilon,
                                        const std::vector<double>& r_grid,
                                        int samples_per_piece) {
  EssentialValueScan out;
  out.r_grid = r_grid;
  out.epsilon = epsilon;

  // per (Omega, n): sampled (S_n phi, weight) pairs on Omega cap T^-n Omega
  struct Sampled {
    std::vector<std::pair<double, double>> vw;
  };
  std::vector<std::vector<Sampled>> table(omegas.size());
  const double guard = default_guard(T);

  for (size_t oi = 0; oi < omegas.size(); ++oi) {
    table[oi].resize(n_values.size());
    for (size_t ni = 0; ni < n_values.size(); ++ni) {
      const long long n = n_values[ni];
      IntervalUnion pre = omegas[oi];
      for (long long j = 0; j < n; ++j) pre = IntervalUnion::preimage(T, pre);
      IntervalUnion meet = omegas[oi].intersect(pre);
      for (const auto& part : meet.parts()) {
        auto pieces = continuity_partition(T, part, n);
        for (const auto& pc : pieces) {
          const double w = pc.dom.length() / samples_per_piece;
          for (int s = 0; s < samples_per_piece; ++s) {
            const double x = pc.dom.a + pc.dom.length() * (s + 0.5) / samples_per_piece;
            if (guard_distance(phi, x) < guard) continue;
            double v;
            try {
              v = birkhoff_sum(T, phi, x, n);
            } catch (const GuardError&) {
              continue;
            }
            table[oi][ni].vw.emplace_back(v, w);
          }
        }
      }
    }
  }

  out.score.resize(r_grid.size());
  for (size_t ri = 0; ri < r_grid.size(); ++ri) {
    const double r = r_grid[ri];
    double min_over_omega = std::numeric_limits<double>::infinity();
    for (size_t oi = 0; oi < omegas.size(); ++oi) {
      double max_over_n = 0.0;
      for (size_t ni = 0; ni < n_values.size(); ++ni) {
        double meas = 0.0;
        for (const auto& [v, w] : table[oi][ni].vw)
          if (v > r - epsilon && v < r + epsilon) meas += w;
        max_over_n = std::max(max_over_n, meas);
      }
      min_over_omega = std::min(min_over_omega, max_over_n);
    }
    out.score[ri] = min_over_omega;
    if (min_over_omega > 0.0) out.candidates.push_back(r);
  }
  return out;
}

std::vector<std::vector<Interval>> centered_window_family(
    const std::vector<Tower>& towers, double D,
    const std::function<double(double)>& theta) {
  std::vector<std::vector<Interval>> fam;
  for (const auto& t : towers) {
    const double len = D / (static_cast<double>(t.q) * theta(static_cast<double>(t.q)));
    std::vector<Interval> js;
    js.reserve(t.levels.size());
    for (const auto& lev : t.levels) {
      const double c = lev.mid();
      js.push_back({c - len / 2, c + len / 2});
    }
    fam.push_back(std::move(js));
  }
  return fam;
}

BCConstruction bc_construct(const std::vector<Tower>& towers,
                            const std::vector<std::vector<Interval>>& j_families,
                            Interval rs, double C, double D1, double D2,
                            const std::function<double(double)>& theta) {
  if (towers.empty() || towers.size() != j_families.size())
    throw DomainError("bc_construct: towers and window families must align");
  BCConstruction bc;
  bc.window = rs;
  bc.c_constant = D1 / (3.0 * C + 2.0 * D2);

  // preconditions
  {
    const double q_k = static_cast<double>(towers.front().q);
    std::ostringstream bad;
    if (!(rs.length() >= 10.0 * C / q_k))
      bad << "(s-r) >= 10C/q_k violated: " << rs.length() << " < " << 10.0 * C / q_k;
    else if (!(theta(q_k) >= 32.0 * C * D2))
      bad << "theta(q_k) >= 32 C D2 violated: " << theta(q_k) << " < "
          << 32.0 * C * D2;
    if (!bad.str().empty()) throw DomainError("bc_construct rejected: " + bad.str());
  }
  for (size_t t = 0; t < towers.size(); ++t) {
    const auto& tw = towers[t];
    const double qn = static_cast<double>(tw.q);
    const double lo = D1 / (qn * theta(qn)), hi = D2 / (qn * theta(qn));
    if (j_families[t].size() != tw.levels.size())
      throw DomainError("bc_construct rejected: window family misaligned with tower levels");
    for (size_t i = 0; i < j_families[t].size(); ++i) {
      const Interval& J = j_families[t][i];
      const double len = J.length();
      std::ostringstream bad;
      if (!(len > lo && len < hi))
        bad << "window size bound D1/(q theta) < |J| < D2/(q theta) violated at "
            << "tower " << t << " level " << i;
      else {
        Interval lv = slim(tw.levels[i], 0.25);
        if (!(J.a >= lv.a && J.b <= lv.b))
          bad << "window containment J in T^i Delta(1/4) violated at tower " << t
              << " level " << i;
      }
      if (!bad.str().empty())
        throw DomainError("bc_construct rejected: " + bad.str());
    }
  }

  IntervalUnion remaining = IntervalUnion::single(rs);
  IntervalUnion accumulated;  // union of all hat sets so far
  bc.product_bound = 1.0;

  for (size_t t = 0; t < towers.size(); ++t) {
    const auto& tw = towers[t];
    const double qn = static_cast<double>(tw.q);
    BCStage stage;
    stage.tower_index = static_cast<int>(t);
    stage.q = tw.q;
    stage.remaining_before = remaining.measure();

    // windows in spatial order once per stage
    std::vector<Interval> sorted_j = j_families[t];
    std::sort(sorted_j.begin(), sorted_j.end(),
              [](const Interval& a, const Interval& b) { return a.a < b.a; });
    std::vector<Interval> selected;
    for (const auto& hole : remaining.parts()) {
      auto first = std::lower_bound(
          sorted_j.begin(), sorted_j.end(), hole.a,
          [](const Interval& iv, double x) { return iv.b <= x; });
      auto last = std::lower_bound(
          first, sorted_j.end(), hole.b,
          [](const Interval& iv, double x) { return iv.a < x; });
      std::vector<size_t> idx;
      for (auto it = first; it != last; ++it)
        idx.push_back(static_cast<size_t>(it - sorted_j.begin()));
      if (idx.size() < 3) continue;  // dropping both extremes leaves nothing
      for (size_t k = 1; k + 1 < idx.size(); ++k) {
        const Interval& J = sorted_j[idx[k]];
        if (!(J.a >= hole.a && J.b <= hole.b)) continue;  // defensive
        // the shifted copy must stay inside the hole
        if (!(J.a + tw.translation >= hole.a && J.b + tw.translation <= hole.b)) {
          bc.shift_containment = false;
          continue;
        }
        selected.push_back(J);
      }
    }
    stage.a_tilde = IntervalUnion(selected);
    IntervalUnion shifted = stage.a_tilde.translate(tw.translation);
    if (!stage.a_tilde.disjoint_from(shifted)) bc.disjoint_exact = false;
    stage.a_hat = stage.a_tilde.unite(shifted);
    if (!stage.a_hat.intersect(accumulated).empty() &&
        stage.a_hat.intersect(accumulated).measure() > 0)
      bc.disjoint_exact = false;
    stage.leb_hat = stage.a_hat.measure();
    stage.ledger_bound = (2.0 * bc.c_constant / theta(qn)) * stage.remaining_before;
    stage.ledger_ok = stage.leb_hat >= stage.ledger_bound - 1e-12;

    accumulated = accumulated.unite(stage.a_hat);
    remaining = remaining.subtract(stage.a_hat);
    stage.holes_after = static_cast<int>(remaining.parts().size());
    stage.min_hole_after = std::numeric_limits<double>::infinity();
    for (const auto& h : remaining.parts())
      stage.min_hole_after = std::min(stage.min_hole_after, h.length());

    bc.product_bound *= (1.0 - 2.0 * bc.c_constant / theta(qn));
    bc.stages.push_back(std::move(stage));
  }

  const double covered = accumulated.measure();
  bc.ledger_identity = std::fabs(remaining.measure() + covered - rs.length());
  bc.coverage = covered / rs.length();
  double tilde = 0.0;
  for (const auto& s : bc.stages) tilde += s.a_tilde.measure();
  bc.tilde_coverage = tilde / rs.length();
  return bc;
}

CriterionReport criterion_harness(const RenormOrbit<double>& orbit,
                                  const Cocycle& f, const ThetaModel& model,
                                  const HarnessOptions& opt) {
  CriterionReport rep;
  const Iet<double>& T = orbit.initial;
  if (!T.perm().symmetric())
    throw DomainError("criterion_harness requires a symmetric IET");
  if (!f.piecewise_monotonic())
    throw DomainError(
        "criterion_harness refused: the cocycle is not piecewise monotonic "
        "(hypothesis (3) of the anti-symmetric criterion)");

  auto cls = theta_class_estimate(f, T, model);
  rep.z_theta = cls.z;
  rep.Z_theta = cls.Z;
  if (!(cls.z > 0))
    throw DomainError("criterion_harness refused: z_theta(f) = 0, no usable singularity");

  rep.window_D = 0.9 / (8.0 * opt.tower_constant);
  const double total = T.total_length();
  const double arg_tol = opt.bisect_tol * total;

  std::vector<double> E_candidates;
  for (int n : opt.levels) {
    HarnessScale sc;
    sc.level = n;
    Tower tw = tower_for_symbol(orbit, n, opt.symbol);
    sc.q = tw.q;
    sc.base_len = tw.base.length();
    sc.delta = tw.translation;

    // locate the global midpoint reached by the base midpoint
    const double m_n = tw.base.mid();
    sc.midpoint_found = false;
    {
      std::vector<double> targets{total / 2};
      std::vector<std::string> names{"I"};
      for (int b = 0; b < T.d(); ++b) {
        targets.push_back(T.midpoint(b));
        names.push_back(T.perm().label(b));
      }
      double x = m_n;
      for (long long s = 0; s <= tw.q && !sc.midpoint_found; ++s) {
        for (size_t ti = 0; ti < targets.size(); ++ti) {
          if (std::fabs(x - targets[ti]) <= opt.midpoint_tol * total) {
            sc.midpoint_found = true;
            sc.target_name = names[ti];
            if (names[ti] == "I") {
              sc.v_target = 0.0;
            } else {
              sc.v_target = f.value(targets[ti] - sc.delta / 2);
            }
            break;
          }
        }
        x = T.apply(x);
      }
    }
    if (!sc.midpoint_found) {
      sc.note = "no midpoint hit within the return time; scale skipped";
      rep.scales.push_back(std::move(sc));
      continue;
    }
    if (!(std::fabs(sc.delta) < tw.base.length() * 3.0 / 8.0 / 3.0)) {
      sc.note = "|delta| >= eps/3; the anti-symmetry lemma does not apply";
      rep.scales.push_back(std::move(sc));
      continue;
    }

    // derivative bracket over sampled slimmed levels
    std::vector<Interval> sampled;
    const long long stride = std::max<long long>(1, tw.q / opt.sampled_levels);
    for (long long i = 0; i < tw.q; i += stride) sampled.push_back(tw.levels[i]);
    auto ds = derivative_sum_bounds(T, f, sampled, tw.q, model, 8, 0.25);
    sc.deriv_min_ratio = ds.min_ratio;
    sc.deriv_max_ratio = ds.max_ratio;
    if (ds.min_ratio > 0) {
      E_candidates.push_back(ds.max_ratio);
      E_candidates.push_back(1.0 / ds.min_ratio);
    }

    // bisection for the xi points on each sampled level
    bool all_points_ok = true;
    for (long long i = 0; i < tw.q; i += stride) {
      HarnessLevelPoint pt;
      pt.i = i;
      const Interval lev = tw.levels[i];
      const double off = lev.a - tw.base.a;  // T^i is this translation on the base
      const Interval certified = slim(lev, 5.0 / 16.0);

      auto g = [&](double x) { return birkhoff_sum(T, f, x, tw.q) - sc.v_target; };
      // the lemma's bracket [m - 3 delta/2, m - delta/2] pushed to the level
      double blo = m_n - 1.5 * sc.delta + off;
      double bhi = m_n - 0.5 * sc.delta + off;
      if (blo > bhi) std::swap(blo, bhi);
      double widen = std::fabs(sc.delta) * 0.25;
      blo -= widen;
      bhi += widen;
      blo = std::max(blo, certified.a);
      bhi = std::min(bhi, certified.b);
      double lo = blo, hi = bhi, flo = 0, fhi = 0;
      bool bracket = false;
      try {
        flo = g(lo);
        fhi = g(hi);
        if (flo == 0.0 || fhi == 0.0) bracket = true;
        if (flo * fhi < 0) bracket = true;
        if (!bracket) {
          // scan the certified window for a sign change
          const int scan = 33;
          double px = certified.a, pv = g(px);
          for (int sidx = 1; sidx <= scan; ++sidx) {
            double xx = certified.a + certified.length() * sidx / scan;
            double vv = g(xx);
            if (pv * vv <= 0) {
              lo = px;
              hi = xx;
              flo = pv;
              fhi = vv;
              bracket = true;
              break;
            }
            px = xx;
            pv = vv;
          }
        }
      } catch (const GuardError&) {
        bracket = false;
      }
      pt.bracket_found = bracket;
      if (bracket) {
        for (int it = 0; it < opt.bisect_cap && hi - lo > arg_tol; ++it) {
          double midx = 0.5 * (lo + hi);
          double fm = g(midx);
          if (fm == 0.0) {
            lo = hi = midx;
            break;
          }
          if (flo * fm <= 0) {
            hi = midx;
            fhi = fm;
          } else {
            lo = midx;
            flo = fm;
          }
        }
        pt.xi = 0.5 * (lo + hi);
        pt.residual = std::fabs(g(pt.xi));
        pt.in_certified_window = pt.xi >= certified.a && pt.xi <= certified.b;
      } else {
        all_points_ok = false;
      }
      if (!pt.bracket_found || !pt.in_certified_window) all_points_ok = false;
      sc.points.push_back(pt);
    }
    sc.ok = all_points_ok && sc.midpoint_found;
    if (!all_points_ok && sc.note.empty())
      sc.note = "bisection failed to bracket on some level (monotonicity violation suspected)";
    rep.scales.push_back(std::move(sc));
  }

  if (!E_candidates.empty())
    rep.E_fit = *std::max_element(E_candidates.begin(), E_candidates.end());
  rep.all_ok = !rep.scales.empty();
  std::ostringstream verdict;
  verdict << "criterion hypotheses witnessed at scales n in {";
  bool first = true;
  for (const auto& sc : rep.scales) {
    if (!sc.ok) {
      rep.all_ok = false;
      continue;
    }
    verdict << (first ? "" : ", ") << sc.level;
    first = false;
  }
  verdict << "}";
  rep.verdict = verdict.str();
  return rep;
}

}  // namespace ietlab
