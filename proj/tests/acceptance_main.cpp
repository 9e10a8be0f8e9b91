// Acceptance suite: runs every stated criterion at its pinned tolerance and
// prints one pass/fail line per criterion. Exit status = number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <vector>

#include "ietlab/dist.hpp"
#include "ietlab/erg.hpp"
#include "ietlab/flow.hpp"
#include "ietlab/saddle.hpp"
#include "ietlab/three_distance.hpp"
#include "ietlab/towers.hpp"
#include "test_support.hpp"

using namespace ietlab;
using ietlab::testing::QuadFloat;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << (detail.str().empty() ? "" : "; ") << what;
    }
  }
};

int failures = 0;

void run(int id, const std::string& name, double budget_s,
         const std::function<void(Outcome&)>& body) {
  Outcome out;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.pass = false;
    out.detail << "exception: " << e.what();
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (budget_s > 0 && secs > budget_s) {
    out.pass = false;
    out.detail << (out.detail.str().empty() ? "" : "; ") << "over runtime budget ("
               << secs << " s > " << budget_s << " s)";
  }
  std::printf("[%s] criterion %2d: %s (%.2f s)%s%s\n", out.pass ? "PASS" : "FAIL",
              id, name.c_str(), secs, out.detail.str().empty() ? "" : " -- ",
              out.detail.str().c_str());
  std::fflush(stdout);
  if (!out.pass) ++failures;
}

// ---------------------------------------------------------------- 1 ----
void criterion1(Outcome& o) {
  auto orbit = rv_orbit(fixtures::golden_rotation(), 80);
  o.require(orbit.levels() == 80, "orbit truncated");
  for (int i = 1; i < orbit.levels(); ++i)
    o.require(orbit.steps[i].top != orbit.steps[i - 1].top, "types fail to alternate");
  BigMatrix b1 = orbit.steps[0].matrix(2);
  const bool lower = b1(0, 0) == 1 && b1(0, 1) == 0 && b1(1, 0) == 1 && b1(1, 1) == 1;
  const bool upper = b1(0, 0) == 1 && b1(0, 1) == 1 && b1(1, 0) == 0 && b1(1, 1) == 1;
  o.require(lower || upper, "B(1) outside the Euclidean pair");
  std::vector<BigInt> F{0, 1};
  for (int i = 2; i <= 82; ++i) F.push_back(F[i - 1] + F[i - 2]);
  for (int n = 1; n <= 40; ++n) {
    BigMatrix Q = orbit.b_matrix(2 * n);
    const bool ok = Q(0, 0) == F[2 * n + 1] && Q(0, 1) == F[2 * n] &&
                    Q(1, 0) == F[2 * n] && Q(1, 1) == F[2 * n - 1];
    o.require(ok, "Q(2n) not Fibonacci at n=" + std::to_string(n));
    if (!ok) break;
  }
}

// ---------------------------------------------------------------- 2 ----
void criterion2(Outcome& o) {
  const int expect_sigma[3] = {1, 1, 2};
  const int expect_genus[3] = {1, 2, 2};
  const int dims[3] = {2, 4, 5};
  for (int i = 0; i < 3; ++i) {
    auto s = sigma_and_genus(Permutation::reversal(dims[i]));
    o.require(s.num_orbits == expect_sigma[i],
              "#Sigma mismatch at d=" + std::to_string(dims[i]));
    o.require(s.genus == expect_genus[i],
              "genus mismatch at d=" + std::to_string(dims[i]));
  }
  long long count = 0;
  for (int d = 2; d <= 6; ++d) {
    for (const auto& p : all_irreducible(d)) {
      // sigma_and_genus throws on any disagreement with the exact
      // rational kernel rank of Omega
      auto s = sigma_and_genus(p);
      o.require(s.num_orbits == omega_kernel_dim(p) + 1, "kernel cross-check");
      ++count;
    }
  }
  o.require(count > 500, "exhaustive enumeration too small");
}

// ---------------------------------------------------------------- 3 ----
void criterion3(Outcome& o) {
  auto b = frak_B<double>(0.5, 0.5);
  o.require(std::fabs(b.re - 2.0) < 1e-14 && std::fabs(b.im) < 1e-14,
            "B(1/2,1/2) != 2");
  auto jet0 = SaddleJet::constant(2, 1.75);
  for (int l = 0; l < 4; ++l) {
    auto c = frak_C(jet0, l, 0);
    o.require(std::fabs(c.re - 2 * 1.75) < 1e-12 && std::fabs(c.im) < 1e-12,
              "c^0 != 2 f(sigma) V(sigma)");
  }
  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> ud(-1.0, 1.0);
  int jets = 0;
  for (int rep = 0; rep < 200; ++rep) {
    const int m = 2 + rep % 5;
    SaddleJetT<double> jet;
    jet.m = m;
    jet.jet.assign(m - 1, {});
    for (int k = 0; k <= m - 2; ++k)
      for (int i = 0; i <= k; ++i)
        jet.jet[k].push_back(Cplx<double>(ud(rng), ud(rng)));
    ++jets;
    for (int k = 0; k <= m - 2; ++k) {
      for (int l = 0; l < m; ++l) {
        auto a = frak_C(jet, l + m, k);
        auto c = frak_C(jet, l, k);
        const double sgn = k % 2 == 0 ? 1.0 : -1.0;
        o.require(std::fabs(a.re - sgn * c.re) < 1e-10 &&
                      std::fabs(a.im - sgn * c.im) < 1e-10,
                  "reflection identity");
      }
      for (int j = k + 1; j < m; ++j) {
        Cplx<double> acc(0.0);
        for (int l = 0; l < m; ++l)
          acc = acc +
                theta_power<double>(m, (long long)(k - 2 * j) * l) * frak_C(jet, l, k);
        o.require(std::sqrt(acc.abs2()) < 1e-10, "vanishing sum");
      }
    }
    if (!o.pass) break;
  }
  o.require(jets == 200, "jet count");
}

// ---------------------------------------------------------------- 4 ----
void criterion4(Outcome& o) {
  GFunction g = GFunction::const1();
  const double s0 = 1.0;
  for (int i = 0; i < 50; ++i) {
    const double s = 1e-8 * std::pow(0.9 / 1e-8, i / 49.0);
    const double expect =
        2.0 * std::log((std::sqrt(s0) + std::sqrt(s0 - s)) / std::sqrt(s));
    const double got = phi1(1, s, g, s0, 5e-13);
    if (std::fabs(got - expect) > 1e-8 * expect) {
      o.require(false, "closed form mismatch at s=" + std::to_string(s));
      break;
    }
  }
  ThetaModel model(g);
  auto f = [&](double s) { return phi1(1, s, g, 0.5, 5e-13); };
  auto sl = slope(f, 1e-6, model);
  o.require(std::fabs(sl.slope + 1.0) < 1e-4, "slope at 1e-6 misses -1 by " +
                                                  std::to_string(sl.slope + 1.0));
}

// ---------------------------------------------------------------- 5 ----
void criterion5(Outcome& o) {
  const double s0 = 0.5;
  for (const char* name : {"const1", "log_e_plus_x"}) {
    GFunction g = GFunction::by_name(name);
    ThetaModel model(g);
    auto f = [&](double s) { return phi1(1, s, g, s0, 5e-13); };
    for (double s = 1e-10; s <= s0 / 2 * (1 + 1e-12); s *= 10.0) {
      auto sl = slope(f, s, model);
      // tau(s)|phi'| = |s phi'|/g(-log s) >= 1 - 1e-6
      if (!(-sl.slope >= 1.0 - 1e-6)) {
        o.require(false, std::string("lower bound fails for g=") + name +
                             " at s=" + std::to_string(s));
        return;
      }
    }
  }
}

// ---------------------------------------------------------------- 6 ----
void criterion6(Outcome& o) {
  auto pot = build_potential(GFunction::log_e_plus_x(), 0.5);
  const std::vector<double> coeffs{1, 0, 1};
  const std::vector<double> grid{1e-2, 1e-6, 1e-10};
  const double expect_sign[4] = {1.0, -1.0, 1.0, -1.0};
  double max_odd = 0.0;
  for (int j = 0; j < 4; ++j) {
    auto res = verify_sector_asymptotics(2, 1, j, true, coeffs, pot, grid);
    const double target = -expect_sign[j] * 0.5;
    o.require(std::fabs(res.extrapolated - target) <= 0.25 * std::fabs(target),
              "odd sector " + std::to_string(2 * j + 1) + " limit " +
                  std::to_string(res.extrapolated) + " vs " + std::to_string(target));
    for (const auto& row : res.rows)
      max_odd = std::max(max_odd, std::fabs(row.slope));
  }
  for (int j = 0; j < 4; ++j) {
    auto res = verify_sector_asymptotics(2, 1, j, false, coeffs, pot, grid);
    for (const auto& row : res.rows)
      o.require(std::fabs(row.slope) <= 0.1 * max_odd,
                "even sector " + std::to_string(2 * j + 2) + " slope too large");
  }
}

// ---------------------------------------------------------------- 7 ----
void criterion7(Outcome& o) {
  auto ss = fixtures::rotation_cf(12);
  auto orbit = ietlab::testing::periodic_orbit(ss, 24 * 3 + 1);
  std::vector<Tower> towers;
  for (int lvl : {24, 72}) towers.push_back(tower_for_symbol(orbit, lvl, 1));
  ThetaModel model(GFunction::const1());  // theta = log
  std::function<double(double)> theta = [&](double x) { return model.theta(x); };
  const double C = 2.0;
  const double D2 = 0.95 * theta((double)towers[0].q) / (32.0 * C);
  const double D1 = 0.5 * D2;
  auto fam = centered_window_family(towers, 0.5 * (D1 + D2), theta);
  auto bc = bc_construct(towers, fam, {0.1, 0.9}, C, D1, D2, theta);

  o.require(bc.disjoint_exact, "pairwise disjointness violated");
  o.require(bc.shift_containment, "T^{q_n} A~_n escaped a hole");
  o.require(bc.ledger_identity <= 1e-12, "ledger identity above 1e-12");
  for (const auto& st : bc.stages)
    o.require(st.ledger_ok, "per-stage measure-control inequality failed");
  o.require(bc.coverage >= (1.0 - bc.product_bound) - 1e-9,
            "coverage below the ledger bound");
  // the conditional coverage claim: antecedent (product <= 0.1) is out of
  // reach at finite scales, so it is verified as an implication
  if (bc.product_bound <= 0.1)
    o.require(bc.coverage >= 0.9, "coverage < 0.9 with product <= 0.1");
  o.detail << "coverage=" << bc.coverage << ", product=" << bc.product_bound
           << " (conditional claim " << (bc.product_bound <= 0.1 ? "active" : "vacuous")
           << ")";
}

// ---------------------------------------------------------------- 8 ----
void criterion8(Outcome& o) {
  auto fx = fixtures::symmetric_d4();
  auto orbit = ietlab::testing::periodic_orbit(fx.self_similar, 15 * 5);
  const auto& T = orbit.initial;
  auto phi = make_phi_a(T, Rational(1));

  // Lemma lem:ind means on the induced cocycle over a symmetric interval
  const double c = T.total_length() / 2;
  auto ind = induced_cocycle(T, phi, {c - 0.21, c + 0.21});
  for (const auto& piece : ind.system.pieces) {
    const double m = mean_value(*ind.phi_J, slim(piece.dom, 0.1), 1e-10);
    o.require(std::fabs(m) < 1e-9,
              "induced mean " + std::to_string(m) + " above 1e-9");
  }
  for (int a = 0; a < T.d(); ++a) {
    const double m = mean_value(*phi, slim({T.left(a), T.right(a)}, 0.1), 1e-10);
    o.require(std::fabs(m) < 1e-9, "interval mean above 1e-9");
  }

  // Lemma lem:anti xi-points at five scales
  HarnessOptions opt;
  opt.levels = {15, 30, 45, 60, 75};
  opt.symbol = fx.symbol;
  opt.sampled_levels = 4;
  ThetaModel model(GFunction::const1());
  auto rep = criterion_harness(orbit, *phi, model, opt);
  o.require(rep.scales.size() == 5, "missing scales");
  double prev = 1e300;
  for (const auto& sc : rep.scales) {
    o.require(sc.ok, "scale " + std::to_string(sc.level) + " not witnessed: " + sc.note);
    o.require(std::fabs(sc.v_target) < prev, "v_n fails to decrease");
    prev = std::fabs(sc.v_target);
    for (const auto& p : sc.points) {
      o.require(p.residual < 1e-9, "|S_q f(xi) - v_n| = " +
                                       std::to_string(p.residual) + " above 1e-9");
      o.require(p.in_certified_window, "xi outside the certified window");
    }
  }
}

// ---------------------------------------------------------------- 9 ----
void criterion9(Outcome& o) {
  // rotations: tower gap multisets equal the three-distance oracle exactly
  auto T = fixtures::golden_rotation();
  auto orbitg = rv_orbit(T, 14);
  for (int n = 4; n <= 12; ++n) {
    for (int sym : {0, 1}) {
      auto t = tower_for_symbol(orbitg, n, sym);
      auto repg = gaps_outside_tower(orbitg, n, sym);
      if (!repg.rotation_oracle) {
        o.require(false, "oracle missing");
        return;
      }
      std::vector<double> mine;
      double wrap = 0.0;
      for (const auto& gp : repg.gaps) {
        if (gp.a <= 1e-15 || gp.b >= 1.0 - 1e-15)
          wrap += gp.length();
        else
          mine.push_back(gp.length());
      }
      if (wrap > 1e-15) mine.push_back(wrap);
      std::vector<double> oracle;
      for (double gv : repg.rotation_oracle->sorted_gaps) {
        const double cv = gv - t.base.length();
        if (cv > 1e-15) oracle.push_back(cv);
      }
      std::sort(mine.begin(), mine.end());
      std::sort(oracle.begin(), oracle.end());
      o.require(mine.size() == oracle.size(), "gap count differs from the oracle");
      for (size_t i = 0; i < std::min(mine.size(), oracle.size()); ++i)
        o.require(std::fabs(mine[i] - oracle[i]) <= 1e-12,
                  "gap multiset differs from the oracle");
    }
  }

  // random suspensions at d = 4, 5 with renormalization-return sampling
  std::mt19937_64 rng(0x5eed);
  int tested_levels = 0;
  for (int rep = 0; rep < 20; ++rep) {
    const int d = rep % 2 == 0 ? 4 : 5;
    auto lamq = ietlab::testing::deep_random_lambda(d, rng);
    Iet<QuadFloat> Tq(Permutation::reversal(d), lamq);
    std::vector<QuadFloat> tau(d);
    for (int j = 0; j < d; ++j)
      tau[j] = QuadFloat(j < (d + 1) / 2 ? 0.5 / (j + 1) : -0.6 / (d - j));
    auto orbit = downcast_orbit(zorich_orbit(Suspension<QuadFloat>(Tq, tau), 60));
    const double bound = 2.0 * d - 2.0;
    for (int n = 8; n <= orbit.levels(); ++n) {
      if (!(orbit.perms[n] == orbit.perms[0])) continue;  // return sampling
      if (orbit.q[n][0] > BigInt(2'000'000)) break;
      for (int sym = 0; sym < d; ++sym) {
        auto repr = gaps_outside_tower(orbit, n, sym);
        o.require(repr.max_ratio <= bound + 1e-9,
                  "gap ratio " + std::to_string(repr.max_ratio) + " above 2d-2 at d=" +
                      std::to_string(d));
        ++tested_levels;
      }
    }
  }
  o.require(tested_levels >= 40, "too few sampled levels: " +
                                     std::to_string(tested_levels));
  o.detail << tested_levels << " tower levels sampled";
}

// --------------------------------------------------------------- 10 ----
void criterion10(Outcome& o) {
  auto fx = fixtures::symmetric_d4();
  auto orbit = ietlab::testing::periodic_orbit(fx.self_similar, 15 * 5);
  auto phi = make_phi_a(orbit.initial, Rational(1));
  ThetaModel model(GFunction::const1());
  std::vector<double> lo, hi;
  for (int k = 1; k <= 5; ++k) {
    auto tw = tower_for_symbol(orbit, 15 * k, fx.symbol);
    std::vector<Interval> sampled;
    const long long stride = std::max<long long>(1, tw.q / 6);
    for (long long i = 0; i < tw.q; i += stride) sampled.push_back(tw.levels[i]);
    auto b = derivative_sum_bounds(orbit.initial, *phi, sampled, tw.q, model, 10);
    o.require(b.min_ratio > 0, "vanishing lower ratio");
    lo.push_back(b.min_ratio);
    hi.push_back(b.max_ratio);
  }
  const double lo_spread = *std::max_element(lo.begin(), lo.end()) /
                           *std::min_element(lo.begin(), lo.end());
  const double hi_spread = *std::max_element(hi.begin(), hi.end()) /
                           *std::min_element(hi.begin(), hi.end());
  o.require(lo_spread <= 2.0, "lower ratios drift beyond x2");
  o.require(hi_spread <= 2.0, "upper ratios drift beyond x2");
  const double E = std::max(*std::max_element(hi.begin(), hi.end()),
                            1.0 / *std::min_element(lo.begin(), lo.end()));
  o.detail << "E=" << E << ", ratio bands [" << *std::min_element(lo.begin(), lo.end())
           << ", " << *std::max_element(hi.begin(), hi.end()) << "]";
}

// --------------------------------------------------------------- 11 ----
void criterion11(Outcome& o) {
  // KZ spectrum symmetry on the 4-reversal
  std::mt19937_64 rng(0x5eed);
  auto lamq = ietlab::testing::deep_random_lambda(4, rng);
  Iet<QuadFloat> Tq(Permutation::reversal(4), lamq);
  std::vector<QuadFloat> tau{QuadFloat(0.5), QuadFloat(0.2), QuadFloat(-0.3),
                             QuadFloat(-0.45)};
  auto orbit = downcast_orbit(zorich_orbit(Suspension<QuadFloat>(Tq, tau), 150));
  auto est = lyapunov_estimate(orbit, 4);
  o.require(!est.degenerate && est.blocks_used >= 100, "orbit too short");
  o.require(std::fabs(est.normalized[0] + est.normalized[3]) <= 0.05,
            "outer pair sum above 0.05");
  o.require(std::fabs(est.normalized[1] + est.normalized[2]) <= 0.05,
            "inner pair sum above 0.05");

  // roof observable: slope exactly 1
  auto T = fixtures::golden_rotation();
  auto roof = std::make_shared<CallableCocycle>([](double) { return 1.0; },
                                                [](double) { return 0.0; });
  SpecialFlow flow(T, roof);
  auto cps = geometric_checkpoints(10.0, 2e5);
  auto fr = flow_integrate(flow, flow.roof(), 0.2345678901, 2e5, cps);
  auto dev_roof = deviation_exponent(fr.times, fr.values);
  o.require(dev_roof.ok && std::fabs(dev_roof.slope - 1.0) < 1e-12,
            "roof slope not exactly 1");

  // bounded coboundary: slope <= 0.05
  auto cob = std::make_shared<CallableCocycle>(
      [T](double x) { return std::cos(2 * M_PI * x) - std::cos(2 * M_PI * T.apply(x)); },
      [T](double x) {
        return -2 * M_PI * std::sin(2 * M_PI * x) +
               2 * M_PI * std::sin(2 * M_PI * T.apply(x));
      });
  auto cps2 = geometric_checkpoints(10.0, 3e6);
  auto fc = flow_integrate(flow, *cob, 0.2345678901, 3e6, cps2);
  auto dev_cob = deviation_exponent(fc.times, fc.values);
  o.require(dev_cob.ok && dev_cob.slope <= 0.05, "coboundary slope above 0.05");

  // xi-model power observable (m=3, k=0) with the mean removed:
  // slope within 0.1 of (m-2)/m = 1/3
  std::vector<std::vector<XiTerm>> pieces(2);
  pieces[0].push_back(zeta_singular_model(3, 0, true));
  const double lamA = T.lambda()[0];
  PiecewisePoly smooth;
  // zero total mean: integral of the power piece over I_A is lamA^{2/3}/6
  smooth.coeffs = {{}, {-std::pow(lamA, 2.0 / 3.0) / (6.0 * T.lambda()[1])}};
  auto xi = std::make_shared<ThetaSingularCocycle>(T, pieces, smooth);
  auto cps3 = geometric_checkpoints(10.0, 1e7);
  auto fxv = flow_integrate(flow, *xi, 0.2345678901, 1e7, cps3);
  auto dev_xi = deviation_exponent(fxv.times, fxv.values);
  o.require(dev_xi.ok, "xi-model deviation fit failed: " + dev_xi.status);
  o.require(std::fabs(dev_xi.slope - 1.0 / 3.0) <= 0.1,
            "xi-model slope " + std::to_string(dev_xi.slope) + " misses 1/3 by > 0.1");
  o.detail << "slopes: roof=" << dev_roof.slope << ", cob=" << dev_cob.slope
           << ", xi=" << dev_xi.slope;
}

// --------------------------------------------------------------- 12 ----
void criterion12(Outcome& o) {
  auto fx = fixtures::symmetric_d4();
  const auto& T = fx.self_similar.iet;
  auto phi = make_phi_a(T, Rational(1));
  Interval I_win{-0.3, 0.3}, J_win{-0.6, 0.6};
  auto res = equidistribution_test(T, *phi, 0.2345678901, 0.0, 10'000'000, I_win,
                                   J_win, 0x5eed);
  o.require(!res.starved, "window starvation");
  o.require(res.deviation <= 0.15,
            "occupation ratio " + std::to_string(res.ratio) + " deviates from " +
                std::to_string(res.expected) + " by more than 0.15");
  o.detail << "ratio=" << res.ratio << " expected=" << res.expected
           << " (exploratory)";
}

}  // namespace

int main() {
  run(1, "golden-rotation renormalization (Fibonacci structure)", 1.0, criterion1);
  run(2, "singularity and genus combinatorics, exhaustive d<=6", 0.0, criterion2);
  run(3, "saddle-distribution identities, 200 random jets", 5.0, criterion3);
  run(4, "appendix closed form and slope (g=1, case 1)", 10.0, criterion4);
  run(5, "lower-bound law for -s phi1'(s)", 0.0, criterion5);
  run(6, "sector slope limits (m=2 desk check)", 120.0, criterion6);
  run(7, "borel-cantelli construction ledger", 30.0, criterion7);
  run(8, "anti-symmetry suite (means and xi-points)", 0.0, criterion8);
  run(9, "horizontal spacing against the three-distance oracle", 0.0, criterion9);
  run(10, "derivative-sum bracketing across five scales", 0.0, criterion10);
  run(11, "lyapunov / deviation consistency", 300.0, criterion11);
  run(12, "fiber equidistribution at N=1e7 (exploratory)", 0.0, criterion12);
  std::printf("%d of 12 criteria passed\n", 12 - failures);
  return failures;
}
