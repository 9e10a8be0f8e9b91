#include "ietlab/cli.hpp"

#include <chrono>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "ietlab/config.hpp"
#include "ietlab/erg.hpp"
#include "ietlab/fixtures.hpp"
#include "ietlab/flow.hpp"
#include "ietlab/json_io.hpp"
#include "ietlab/saddle.hpp"
#include "ietlab/towers.hpp"

namespace ietlab {

namespace {

using nlohmann::json;
using QuadFloat = boost::multiprecision::cpp_bin_float_quad;

std::string join_args(const std::vector<std::string>& args) {
  std::ostringstream os;
  for (size_t i = 0; i < args.size(); ++i) os << (i ? " " : "") << args[i];
  return os.str();
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
  return out;
}

std::vector<double> parse_double_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
  return out;
}

// "1e-2:1e-10:geometric" -> descending geometric grid
std::vector<double> parse_sgrid(const std::string& spec, int per_decade) {
  auto p1 = spec.find(':');
  auto p2 = spec.find(':', p1 + 1);
  if (p1 == std::string::npos || p2 == std::string::npos)
    throw DomainError("sgrid must be start:end:geometric");
  const double start = std::stod(spec.substr(0, p1));
  const double end = std::stod(spec.substr(p1 + 1, p2 - p1 - 1));
  if (spec.substr(p2 + 1) != "geometric")
    throw DomainError("only geometric s-grids are supported");
  std::vector<double> out;
  const double ratio = std::pow(10.0, -1.0 / per_decade);
  if (start > end) {
    for (double s = start; s >= end * (1 - 1e-12); s *= ratio) out.push_back(s);
  } else {
    for (double s = start; s <= end * (1 + 1e-12); s /= ratio) out.push_back(s);
  }
  return out;
}

// renorm orbit at the requested precision, converted to double for reporting
template <class R>
RenormOrbit<double> run_orbit_precise(const Iet<double>& T, int steps) {
  std::vector<R> lam(T.d());
  for (int i = 0; i < T.d(); ++i) lam[i] = static_cast<R>(T.lambda()[i]);
  Iet<R> Tr(T.perm(), lam);
  return downcast_orbit(rv_orbit(Tr, steps));
}

RenormOrbit<double> run_orbit(const Iet<double>& T, int steps, int bits) {
  if (bits <= 53) return rv_orbit(T, steps);
  if (bits <= 64) return run_orbit_precise<long double>(T, steps);
  return run_orbit_precise<QuadFloat>(T, steps);
}

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - t0)
        .count();
  }
};

int cmd_iet_validate(const RunConfig& cfg, const std::string& canon,
                     const std::string& spec) {
  Timer timer;
  Iet<double> T = load_iet_json(spec);
  auto flags = validate_permutation(T.perm());
  json j;
  j["irreducible"] = flags.irreducible;
  j["symmetric"] = flags.symmetric;
  j["degenerate"] = flags.degenerate;
  if (flags.irreducible) {
    auto s = sigma_and_genus(T.perm());
    j["genus"] = s.genus;
    j["num_singularities"] = s.num_orbits;
    j["num_singularities_without_zero"] = s.num_orbits_without_zero;
  }
  const std::string text = j.dump(2) + "\n";
  if (cfg.out_path.empty()) {
    std::cout << text;
  } else {
    atomic_write(cfg.out_path, text);
    write_manifest(cfg, canon, cfg.out_path, timer.ms());
  }
  return 0;
}

int cmd_renorm_orbit(const RunConfig& cfg, const std::string& canon,
                     const std::string& spec, int steps) {
  Timer timer;
  Iet<double> T = load_iet_json(spec);
  RenormOrbit<double> orb = run_orbit(T, steps, cfg.precision_bits);

  json j;
  j["tie_truncated"] = orb.tie_truncated;
  j["levels"] = orb.levels();
  json steps_j = json::array();
  for (size_t i = 0; i < orb.steps.size(); ++i) {
    const auto& st = orb.steps[i];
    json sj;
    sj["kind"] = st.top ? "top" : "bottom";
    sj["winner"] = T.perm().label(st.winner);
    sj["loser"] = T.perm().label(st.loser);
    json b = json::array();
    BigMatrix bm = st.matrix(T.d());
    for (int r = 0; r < T.d(); ++r) {
      json row = json::array();
      for (int c = 0; c < T.d(); ++c) row.push_back(bm(r, c).convert_to<long long>());
      b.push_back(row);
    }
    sj["B"] = b;
    steps_j.push_back(sj);
  }
  j["steps"] = steps_j;
  j["zorich_marks"] = orb.zorich_marks;
  json qj = json::array();
  for (int a = 0; a < T.d(); ++a) qj.push_back(orb.q.back()[a].str());
  j["q_final"] = qj;
  json Qj = json::array();
  for (const auto& Q : orb.Q) {
    json m = json::array();
    for (int r = 0; r < T.d(); ++r) {
      json row = json::array();
      for (int c = 0; c < T.d(); ++c) row.push_back(Q(r, c).str());
      m.push_back(row);
    }
    Qj.push_back(m);
  }
  j["Q_at_marks"] = Qj;
  j["mean_log_znorm"] = orb.mean_log_znorm();
  atomic_write(cfg.out_path, j.dump(2) + "\n");

  CsvWriter csv({"k", "log_znorm"});
  for (size_t k = 0; k < orb.log_znorm.size(); ++k)
    csv.row({std::to_string(k + 1), format_double(orb.log_znorm[k])});
  atomic_write(cfg.out_path + ".lognorm.csv", csv.str());
  write_manifest(cfg, canon, cfg.out_path, timer.ms());
  return 0;
}

int cmd_towers_report(const RunConfig& cfg, const std::string& canon,
                      const std::string& spec, int levels, double C) {
  Timer timer;
  Iet<double> T = load_iet_json(spec);
  RenormOrbit<double> orb = run_orbit(T, levels, cfg.precision_bits);
  const int reached = orb.levels();

  CsvWriter csv({"n", "alpha", "q", "base_len", "holes", "max_gap_ratio", "qn2_5",
                 "qn3", "qn4", "qn5"});
  for (int a = 0; a < T.d(); ++a) {
    std::vector<Tower> seq;
    for (int n = 1; n <= reached; ++n) seq.push_back(tower_for_symbol(orb, n, a));
    if (seq.size() < 2) continue;
    auto rep = check_conditions(T, seq, C);
    for (int n = 1; n <= reached; ++n) {
      const auto& r = rep.records[n - 1];
      auto gaps = gaps_outside_tower(orb, n, a);
      csv.row({std::to_string(n), T.perm().label(a), std::to_string(r.q),
               format_double(r.base_len), std::to_string(r.hole_count),
               format_double(gaps.max_ratio), r.qn2_5 ? "1" : "0",
               r.qn3 ? "1" : "0", r.qn4 ? "1" : "0", r.qn5 ? "1" : "0"});
    }
  }
  atomic_write(cfg.out_path, csv.str());
  write_manifest(cfg, canon, cfg.out_path, timer.ms());
  return 0;
}

int cmd_cocycle_invariants(const RunConfig& cfg, const std::string& canon,
                           const std::string& spec, const std::string& cocycle) {
  Timer timer;
  Iet<double> T = load_iet_json(spec);
  CocyclePtr phi = load_cocycle_json(cocycle, T);
  json j;
  if (auto lg = std::dynamic_pointer_cast<const LogSingularCocycle>(phi)) {
    auto inv = scalar_invariants(*lg);
    j["L"] = inv.L.convert_to<double>();
    j["LV"] = inv.LV;
    j["var_g"] = inv.var_g;
    j["var_g_tolerance"] = inv.var_g_tolerance;
    json deltas = json::array();
    for (const auto& dl : inv.delta_per_orbit)
      deltas.push_back(dl.convert_to<double>());
    j["Delta_per_orbit"] = deltas;
    j["AS"] = inv.AS.convert_to<double>();
    j["boundary_condition"] = lg->boundary_condition_holds();
  }
  ThetaModel model(GFunction::log_e_plus_x());
  if (auto th = std::dynamic_pointer_cast<const ThetaSingularCocycle>(phi)) {
    auto est = theta_class_estimate(*th, T, model);
    j["Z_theta"] = est.Z;
    j["z_theta"] = est.z;
    j["refinement_drift"] = est.refinement_drift;
  }
  j["piecewise_monotonic"] = phi->piecewise_monotonic();
  atomic_write(cfg.out_path, j.dump(2) + "\n");
  write_manifest(cfg, canon, cfg.out_path, timer.ms());
  return 0;
}

int cmd_erg_scan(const RunConfig& cfg, const std::string& canon,
                 const std::string& spec, const std::string& cocycle, double eps,
                 double rmin, double rmax, int rcount, const std::string& nlist) {
  Timer timer;
  Iet<double> T = load_iet_json(spec);
  CocyclePtr phi = load_cocycle_json(cocycle, T);
  std::vector<long long> ns;
  for (int v : parse_int_list(nlist)) ns.push_back(v);
  std::vector<double> rg(rcount);
  for (int i = 0; i < rcount; ++i)
    rg[i] = rmin + (rmax - rmin) * i / std::max(1, rcount - 1);
  auto fam = default_omega_family(T.total_length());
  auto scan = essential_value_scan(T, *phi, fam, ns, eps, rg);

  json j;
  j["epsilon"] = eps;
  j["r_grid"] = scan.r_grid;
  j["score"] = scan.score;
  j["candidates"] = scan.candidates;
  j["note"] = "heuristic necessary-condition scan over a fixed Omega family";
  atomic_write(cfg.out_path, j.dump(2) + "\n");

  CsvWriter csv({"r", "score"});
  for (size_t i = 0; i < scan.r_grid.size(); ++i)
    csv.row({format_double(scan.r_grid[i]), format_double(scan.score[i])});
  atomic_write(cfg.out_path + ".csv", csv.str());
  write_manifest(cfg, canon, cfg.out_path, timer.ms());
  return 0;
}

int cmd_erg_bc(const RunConfig& cfg, const std::string& canon,
               const std::string& spec, const std::string& levels_s, int symbol_idx,
               double C, double D1, double D2, const std::string& window_s,
               const std::string& gname) {
  Timer timer;
  Iet<double> T = load_iet_json(spec);
  auto levels = parse_int_list(levels_s);
  if (levels.empty()) throw DomainError("erg bc: need --levels");
  auto win = parse_double_list(window_s);
  if (win.size() != 2) throw DomainError("erg bc: --window must be r,s");
  int max_level = *std::max_element(levels.begin(), levels.end());
  RenormOrbit<double> orb = run_orbit(T, max_level, cfg.precision_bits);

  std::vector<Tower> towers;
  for (int n : levels) towers.push_back(tower_for_symbol(orb, n, symbol_idx));
  ThetaModel model(GFunction::by_name(gname));
  auto theta = [&](double x) { return model.theta(x); };
  auto fam = centered_window_family(towers, 0.5 * (D1 + D2), theta);
  auto bc = bc_construct(towers, fam, {win[0], win[1]}, C, D1, D2, theta);

  json j;
  j["disjoint_exact"] = bc.disjoint_exact;
  j["shift_containment"] = bc.shift_containment;
  j["ledger_identity"] = bc.ledger_identity;
  j["coverage"] = bc.coverage;
  j["tilde_coverage"] = bc.tilde_coverage;
  j["product_bound"] = bc.product_bound;
  j["c_constant"] = bc.c_constant;
  json stages = json::array();
  for (const auto& st : bc.stages) {
    json sj;
    sj["q"] = st.q;
    sj["leb_hat"] = st.leb_hat;
    sj["remaining_before"] = st.remaining_before;
    sj["ledger_bound"] = st.ledger_bound;
    sj["ledger_ok"] = st.ledger_ok;
    sj["holes_after"] = st.holes_after;
    sj["min_hole_after"] = st.min_hole_after;
    stages.push_back(sj);
  }
  j["stages"] = stages;
  atomic_write(cfg.out_path, j.dump(2) + "\n");

  CsvWriter csv({"stage", "q", "leb_hat", "remaining_before", "ledger_bound",
                 "ledger_ok"});
  for (size_t i = 0; i < bc.stages.size(); ++i) {
    const auto& st = bc.stages[i];
    csv.row({std::to_string(i), std::to_string(st.q), format_double(st.leb_hat),
             format_double(st.remaining_before), format_double(st.ledger_bound),
             st.ledger_ok ? "1" : "0"});
  }
  atomic_write(cfg.out_path + ".csv", csv.str());
  write_manifest(cfg, canon, cfg.out_path, timer.ms());
  return 0;
}

int cmd_erg_harness(const RunConfig& cfg, const std::string& canon,
                    const std::string& spec, const std::string& cocycle,
                    const std::string& levels_s, int symbol_idx, double C,
                    const std::string& gname) {
  Timer timer;
  Iet<double> T = load_iet_json(spec);
  CocyclePtr phi = load_cocycle_json(cocycle, T);
  auto levels = parse_int_list(levels_s);
  if (levels.empty()) throw DomainError("erg harness: need --levels");
  int max_level = *std::max_element(levels.begin(), levels.end());
  RenormOrbit<double> orb = run_orbit(T, max_level, cfg.precision_bits);

  HarnessOptions opt;
  opt.levels = levels;
  opt.symbol = symbol_idx;
  opt.tower_constant = C;
  opt.bisect_tol = cfg.tol_bisection;
  ThetaModel model(GFunction::by_name(gname));
  auto rep = criterion_harness(orb, *phi, model, opt);

  json j;
  j["verdict"] = rep.verdict;
  j["all_ok"] = rep.all_ok;
  j["E_fit"] = rep.E_fit;
  j["window_D"] = rep.window_D;
  j["z_theta"] = rep.z_theta;
  j["Z_theta"] = rep.Z_theta;
  json scales = json::array();
  for (const auto& sc : rep.scales) {
    json sj;
    sj["level"] = sc.level;
    sj["q"] = sc.q;
    sj["delta"] = sc.delta;
    sj["v_target"] = sc.v_target;
    sj["target_name"] = sc.target_name;
    sj["midpoint_found"] = sc.midpoint_found;
    sj["deriv_min_ratio"] = sc.deriv_min_ratio;
    sj["deriv_max_ratio"] = sc.deriv_max_ratio;
    sj["ok"] = sc.ok;
    sj["note"] = sc.note;
    json pts = json::array();
    for (const auto& p : sc.points) {
      json pj;
      pj["i"] = p.i;
      pj["xi"] = p.xi;
      pj["residual"] = p.residual;
      pj["in_window"] = p.in_certified_window;
      pts.push_back(pj);
    }
    sj["points"] = pts;
    scales.push_back(sj);
  }
  j["scales"] = scales;
  atomic_write(cfg.out_path, j.dump(2) + "\n");

  CsvWriter csv({"level", "q", "delta", "v_target", "max_residual",
                 "deriv_min_ratio", "deriv_max_ratio", "ok"});
  for (const auto& sc : rep.scales) {
    double worst = 0;
    for (const auto& p : sc.points) worst = std::max(worst, p.residual);
    csv.row({std::to_string(sc.level), std::to_string(sc.q),
             format_double(sc.delta), format_double(sc.v_target),
             format_double(worst), format_double(sc.deriv_min_ratio),
             format_double(sc.deriv_max_ratio), sc.ok ? "1" : "0"});
  }
  atomic_write(cfg.out_path + ".csv", csv.str());
  write_manifest(cfg, canon, cfg.out_path, timer.ms());
  return 0;
}

int cmd_saddle_slopes(const RunConfig& cfg, const std::string& canon,
                      const std::string& gname, int m, const std::string& coeffs_s,
                      int saddle_case, int sector, const std::string& sgrid,
                      int per_decade) {
  Timer timer;
  GFunction g = GFunction::by_name(gname);
  auto coeffs = parse_double_list(coeffs_s);
  auto grid = parse_sgrid(sgrid, per_decade);
  Potential pot = build_potential(g, 0.5);
  const int j = (sector - 1) / 2;
  const bool odd = sector % 2 == 1;

  CsvWriter csv({"s", "slope", "err_est"});
  ThetaModel model(g);
  for (double s : grid) {
    auto f = [&](double ss) {
      if (m == 1) return phi1(saddle_case, ss, g, pot.s0(), cfg.tol_quadrature);
      return phi_sector_poly(m, saddle_case, j, odd, coeffs, ss, pot,
                             cfg.tol_quadrature)
          .real();
    };
    auto sl = slope(f, s, model);
    csv.row({format_double(s), format_double(sl.slope),
             format_double(sl.error_estimate)});
  }
  atomic_write(cfg.out_path, csv.str());
  write_manifest(cfg, canon, cfg.out_path, timer.ms());
  return 0;
}

int cmd_dist_frakc(const RunConfig& cfg, const std::string& canon, int m,
                   const std::string& jet_path) {
  Timer timer;
  SaddleJet jet = load_jet_json(jet_path);
  if (jet.m != m) throw DomainError("dist frakc: --m disagrees with the jet file");
  CsvWriter csv({"l", "k", "re", "im"});
  for (int l = 0; l < 2 * m; ++l)
    for (int k = 0; k <= m - 2; ++k) {
      auto c = frak_C(jet, l, k);
      csv.row({std::to_string(l), std::to_string(k), format_double(c.re),
               format_double(c.im)});
    }
  atomic_write(cfg.out_path, csv.str());
  write_manifest(cfg, canon, cfg.out_path, timer.ms());
  return 0;
}

int cmd_flow_deviate(const RunConfig& cfg, const std::string& canon,
                     const std::string& spec, const std::string& roof_path,
                     const std::string& obs_path, double tmax,
                     const std::string& checkpoints) {
  Timer timer;
  Iet<double> T = load_iet_json(spec);
  CocyclePtr roof = load_cocycle_json(roof_path, T);
  CocyclePtr obs = load_cocycle_json(obs_path, T);
  SpecialFlow flow(T, roof);
  if (checkpoints != "geometric")
    throw DomainError("flow deviate: only geometric checkpoints are supported");
  auto cps = geometric_checkpoints(10.0, tmax);
  std::mt19937_64 rng = cfg.make_rng();
  std::uniform_real_distribution<double> ud(0.05, 0.95);
  const double x0 = ud(rng) * T.total_length();
  auto fi = flow_integrate(flow, *obs, x0, tmax, cps);
  auto dev = deviation_exponent(fi.times, fi.values);

  CsvWriter csv({"T", "value"});
  for (size_t i = 0; i < fi.times.size(); ++i)
    csv.row({format_double(fi.times[i]), format_double(fi.values[i])});
  atomic_write(cfg.out_path, csv.str());
  std::map<std::string, std::string> extras;
  extras["slope"] = format_double(dev.slope);
  extras["confidence"] = format_double(dev.confidence);
  extras["status"] = dev.status;
  write_manifest(cfg, canon, cfg.out_path, timer.ms(), extras);
  std::cout << "slope=" << format_double(dev.slope)
            << " confidence=" << format_double(dev.confidence) << "\n";
  return 0;
}

}  // namespace

int dispatch(const std::vector<std::string>& args) {
  CLI::App app{"ietlab: interval exchange / renormalization laboratory"};
  app.require_subcommand(1);

  RunConfig cfg;
  apply_env_overrides(&cfg);
  app.add_option("--precision", cfg.precision_bits, "working precision in bits");
  app.add_option("--seed", cfg.seed, "seed for all sampling");
  app.add_option("--tol", cfg.tol_quadrature, "quadrature tolerance");
  app.add_option("--jobs", cfg.jobs, "worker cap");

  std::string spec, cocycle, out, jet_path, roof_path, obs_path;
  // iet
  auto* iet = app.add_subcommand("iet", "IET combinatorics");
  auto* iet_validate = iet->add_subcommand("validate", "validate a spec file");
  iet_validate->add_option("--spec", spec)->required();
  iet_validate->add_option("--out", out);

  // renorm
  int steps = 50;
  auto* renorm = app.add_subcommand("renorm", "Rauzy-Veech induction");
  auto* renorm_orbit = renorm->add_subcommand("orbit", "run an induction orbit");
  renorm_orbit->add_option("--spec", spec)->required();
  renorm_orbit->add_option("--steps", steps);
  renorm_orbit->add_option("--out", out)->required();

  // towers
  int levels = 8;
  double constant = 2.0;
  auto* towers = app.add_subcommand("towers", "Rokhlin tower reports");
  auto* towers_report = towers->add_subcommand("report", "tower conditions CSV");
  towers_report->add_option("--spec", spec)->required();
  towers_report->add_option("--levels", levels);
  towers_report->add_option("--constant", constant);
  towers_report->add_option("--out", out)->required();

  // cocycle
  auto* coc = app.add_subcommand("cocycle", "cocycle invariants");
  auto* coc_inv = coc->add_subcommand("invariants", "scalar invariants JSON");
  coc_inv->add_option("--spec", spec)->required();
  coc_inv->add_option("--cocycle", cocycle)->required();
  coc_inv->add_option("--out", out)->required();

  // erg
  double eps = 0.05, rmin = -0.5, rmax = 0.5;
  int rcount = 41;
  std::string nlist = "1,2,3,5,8,13,21";
  std::string levels_list = "2,4,6";
  std::string window_s = "0.1,0.9";
  std::string gname = "const1";
  int symbol_idx = 0;
  double D1 = 0.05, D2 = 0.1;
  auto* erg = app.add_subcommand("erg", "ergodicity laboratory");
  auto* erg_scan = erg->add_subcommand("scan", "essential value scan");
  erg_scan->add_option("--spec", spec)->required();
  erg_scan->add_option("--cocycle", cocycle)->required();
  erg_scan->add_option("--out", out)->required();
  erg_scan->add_option("--eps", eps);
  erg_scan->add_option("--rmin", rmin);
  erg_scan->add_option("--rmax", rmax);
  erg_scan->add_option("--rcount", rcount);
  erg_scan->add_option("--nvals", nlist);
  auto* erg_bc = erg->add_subcommand("bc", "Borel-Cantelli construction");
  erg_bc->add_option("--spec", spec)->required();
  erg_bc->add_option("--out", out)->required();
  erg_bc->add_option("--levels", levels_list);
  erg_bc->add_option("--symbol", symbol_idx);
  erg_bc->add_option("--constant", constant);
  erg_bc->add_option("--d1", D1);
  erg_bc->add_option("--d2", D2);
  erg_bc->add_option("--window", window_s);
  erg_bc->add_option("--g", gname);
  auto* erg_harness = erg->add_subcommand("harness", "ergodicity criterion harness");
  erg_harness->add_option("--spec", spec)->required();
  erg_harness->add_option("--cocycle", cocycle)->required();
  erg_harness->add_option("--out", out)->required();
  erg_harness->add_option("--levels", levels_list);
  erg_harness->add_option("--symbol", symbol_idx);
  erg_harness->add_option("--constant", constant);
  erg_harness->add_option("--g", gname);

  // saddle
  int m = 2, saddle_case = 1, sector = 1, per_decade = 2;
  std::string coeffs_s = "1,0,1";
  std::string sgrid = "1e-2:1e-10:geometric";
  auto* saddle = app.add_subcommand("saddle", "passage-time asymptotics");
  auto* saddle_slopes = saddle->add_subcommand("slopes", "slope table CSV");
  saddle_slopes->add_option("--g", gname);
  saddle_slopes->add_option("--m", m);
  saddle_slopes->add_option("--coeffs", coeffs_s);
  saddle_slopes->add_option("--case", saddle_case);
  saddle_slopes->add_option("--sector", sector);
  saddle_slopes->add_option("--sgrid", sgrid);
  saddle_slopes->add_option("--points-per-decade", per_decade);
  saddle_slopes->add_option("--out", out)->required();

  // dist
  auto* dist = app.add_subcommand("dist", "saddle distributions");
  auto* dist_frakc = dist->add_subcommand("frakc", "distribution table CSV");
  dist_frakc->add_option("--m", m);
  dist_frakc->add_option("--jet", jet_path)->required();
  dist_frakc->add_option("--out", out)->required();

  // flow
  double tmax = 1e6;
  std::string checkpoints = "geometric";
  auto* flow = app.add_subcommand("flow", "special flows");
  auto* flow_deviate = flow->add_subcommand("deviate", "deviation exponent series");
  flow_deviate->add_option("--spec", spec)->required();
  flow_deviate->add_option("--roof", roof_path)->required();
  flow_deviate->add_option("--obs", obs_path)->required();
  flow_deviate->add_option("--tmax", tmax);
  flow_deviate->add_option("--checkpoints", checkpoints);
  flow_deviate->add_option("--out", out)->required();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return 0;  // --help
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  cfg.out_path = out;
  const std::string canon = join_args(args);
  try {
    if (*iet_validate) return cmd_iet_validate(cfg, canon, spec);
    if (*renorm_orbit) return cmd_renorm_orbit(cfg, canon, spec, steps);
    if (*towers_report)
      return cmd_towers_report(cfg, canon, spec, levels, constant);
    if (*coc_inv) return cmd_cocycle_invariants(cfg, canon, spec, cocycle);
    if (*erg_scan)
      return cmd_erg_scan(cfg, canon, spec, cocycle, eps, rmin, rmax, rcount, nlist);
    if (*erg_bc)
      return cmd_erg_bc(cfg, canon, spec, levels_list, symbol_idx, constant, D1,
                        D2, window_s, gname);
    if (*erg_harness)
      return cmd_erg_harness(cfg, canon, spec, cocycle, levels_list, symbol_idx,
                             constant, gname);
    if (*saddle_slopes)
      return cmd_saddle_slopes(cfg, canon, gname, m, coeffs_s, saddle_case,
                               sector, sgrid, per_decade);
    if (*dist_frakc) return cmd_dist_frakc(cfg, canon, m, jet_path);
    if (*flow_deviate)
      return cmd_flow_deviate(cfg, canon, spec, roof_path, obs_path, tmax,
                              checkpoints);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  std::cerr << "error: no subcommand selected\n";
  return 2;
}

}  // namespace ietlab
