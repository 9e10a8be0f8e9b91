#pragma once

#include <optional>
#include <vector>

#include "ietlab/rauzy.hpp"
#include "ietlab/types.hpp"

namespace ietlab {

// Record of a Rauzy-Veech orbit with Zorich acceleration marks. Level n data
// (permutation, lambda, q = return times) is stored per step; cumulative
// matrices Q(k) = Z(k)...Z(1) are stored at block boundaries.
template <class R>
struct RenormOrbit {
  Iet<R> initial;
  std::vector<InductionStep> steps;     // steps[i]: level i -> i+1
  std::vector<Permutation> perms;       // perms[n], n = 0..steps
  std::vector<std::vector<R>> lambdas;  // lambdas[n]
  std::vector<std::vector<BigInt>> q;   // q[n], row sums of B(n); q[0] = 1
  std::vector<int> zorich_marks;        // step indices ending each block
  std::vector<BigMatrix> Q;             // Q[k-1] = cumulative matrix at mark k
  std::vector<double> log_znorm;        // log ||Z(k)||, max-row-sum norm
  bool tie_truncated = false;

  int levels() const { return static_cast<int>(steps.size()); }
  int blocks() const { return static_cast<int>(zorich_marks.size()); }

  Iet<R> iet_at(int n) const { return Iet<R>(perms[n], lambdas[n]); }

  // B(n) reconstructed from the step records (B(n) = B_n ... B_1).
  BigMatrix b_matrix(int n) const {
    BigMatrix b = BigMatrix::identity(initial.d());
    for (int i = 0; i < n; ++i) b = steps[i].matrix(initial.d()) * b;
    return b;
  }

  // Z(k) for 1 <= k <= blocks().
  BigMatrix z_matrix(int k) const {
    const int lo = k == 1 ? 0 : zorich_marks[k - 2];
    const int hi = zorich_marks[k - 1];
    BigMatrix b = BigMatrix::identity(initial.d());
    for (int i = lo; i < hi; ++i) b = steps[i].matrix(initial.d()) * b;
    return b;
  }

  double mean_log_znorm() const {
    if (log_znorm.empty()) return 0.0;
    double s = 0.0;
    for (double v : log_znorm) s += v;
    return s / static_cast<double>(log_znorm.size());
  }
};

namespace detail {

template <class R>
Rational to_rational(const R& x) {
  if constexpr (std::is_floating_point_v<R>) {
    return Rational(x);
  } else {
    return x.template convert_to<Rational>();
  }
}

template <class R>
R from_rational(const Rational& x) {
  if constexpr (std::is_floating_point_v<R>) {
    return static_cast<R>(x.convert_to<long double>());
  } else {
    return R(x);
  }
}

// Exact dyadic-rational replay of the winner/loser cascade; binary floats are
// exact rationals, so lambda^(n) = lambda B(n)^{-1} comes out exact and the
// drift of the R-typed lengths is reset.
template <class R>
void refresh_lengths(const Iet<R>& initial, const std::vector<InductionStep>& steps,
                     std::vector<R>& lambda_out) {
  std::vector<Rational> lam(initial.d());
  for (int a = 0; a < initial.d(); ++a) lam[a] = to_rational(initial.lambda()[a]);
  for (const auto& st : steps) lam[st.winner] -= lam[st.loser];
  for (int a = 0; a < initial.d(); ++a) lambda_out[a] = from_rational<R>(lam[a]);
}

}  // namespace detail

// Run n_steps of (1D) induction, grouping maximal same-type runs into Zorich
// blocks. A tie truncates the orbit and sets tie_truncated.
template <class R>
RenormOrbit<R> rv_orbit(const Iet<R>& T0, int n_steps, int drift_interval = 32) {
  RenormOrbit<R> orbit;
  orbit.initial = T0;
  const int d = T0.d();
  orbit.perms.push_back(T0.perm());
  orbit.lambdas.push_back(T0.lambda());
  orbit.q.emplace_back(d, BigInt(1));

  Iet<R> cur = T0;
  BigMatrix cumB = BigMatrix::identity(d);
  BigMatrix blockZ = BigMatrix::identity(d);
  std::optional<bool> block_type;
  auto close_block = [&](int step_idx) {
    orbit.zorich_marks.push_back(step_idx);
    orbit.Q.push_back(cumB);
    orbit.log_znorm.push_back(
        std::log(blockZ.norm_inf().convert_to<double>()));
    blockZ = BigMatrix::identity(d);
  };

  for (int nstep = 0; nstep < n_steps; ++nstep) {
    InductionStep step;
    Iet<R> nxt;
    try {
      auto res = rv_step(cur);
      nxt = std::move(res.first);
      step = res.second;
    } catch (const TieError&) {
      orbit.tie_truncated = true;
      break;
    }
    if (block_type.has_value() && *block_type != step.top) close_block(nstep);
    block_type = step.top;

    cur = std::move(nxt);
    orbit.steps.push_back(step);
    BigMatrix bs = step.matrix(d);
    cumB = bs * cumB;
    blockZ = bs * blockZ;

    std::vector<BigInt> qn = orbit.q.back();
    qn[step.loser] += qn[step.winner];
    orbit.q.push_back(std::move(qn));

    std::vector<R> lam = cur.lambda();
    if ((nstep + 1) % drift_interval == 0) {
      detail::refresh_lengths(T0, orbit.steps, lam);
      cur = Iet<R>(cur.perm(), lam);
    }
    orbit.perms.push_back(cur.perm());
    orbit.lambdas.push_back(lam);
  }
  if (block_type.has_value()) close_block(static_cast<int>(orbit.steps.size()));
  return orbit;
}

// Same orbit driven through the invertible 2D induction; stops after k_max
// Zorich blocks (or a tie).
template <class R>
RenormOrbit<R> zorich_orbit(const Suspension<R>& S0, int k_max,
                            int step_cap = 1 << 20) {
  RenormOrbit<R> orbit;
  orbit.initial = S0.iet();
  const int d = S0.d();
  orbit.perms.push_back(S0.iet().perm());
  orbit.lambdas.push_back(S0.iet().lambda());
  orbit.q.emplace_back(d, BigInt(1));

  Suspension<R> cur = S0;
  BigMatrix cumB = BigMatrix::identity(d);
  BigMatrix blockZ = BigMatrix::identity(d);
  std::optional<bool> block_type;
  auto close_block = [&](int step_idx) {
    orbit.zorich_marks.push_back(step_idx);
    orbit.Q.push_back(cumB);
    orbit.log_znorm.push_back(std::log(blockZ.norm_inf().convert_to<double>()));
    blockZ = BigMatrix::identity(d);
  };

  int nstep = 0;
  while (static_cast<int>(orbit.zorich_marks.size()) < k_max && nstep < step_cap) {
    InductionStep step;
    Suspension<R> nxt;
    try {
      auto res = rv_step_2d(cur);
      nxt = std::move(res.first);
      step = res.second;
    } catch (const TieError&) {
      orbit.tie_truncated = true;
      break;
    }
    if (block_type.has_value() && *block_type != step.top) {
      close_block(nstep);
      if (static_cast<int>(orbit.zorich_marks.size()) >= k_max) {
        // do not apply the step that opens block k_max+1
        break;
      }
    }
    block_type = step.top;

    cur = std::move(nxt);
    ++nstep;
    orbit.steps.push_back(step);
    BigMatrix bs = step.matrix(d);
    cumB = bs * cumB;
    blockZ = bs * blockZ;

    std::vector<BigInt> qn = orbit.q.back();
    qn[step.loser] += qn[step.winner];
    orbit.q.push_back(std::move(qn));

    std::vector<R> lam = cur.iet().lambda();
    if (nstep % 32 == 0) {
      detail::refresh_lengths(orbit.initial, orbit.steps, lam);
      cur = Suspension<R>(Iet<R>(cur.iet().perm(), lam), cur.tau());
    }
    orbit.perms.push_back(cur.iet().perm());
    orbit.lambdas.push_back(lam);
  }
  if (block_type.has_value() &&
      (orbit.zorich_marks.empty() ||
       orbit.zorich_marks.back() != static_cast<int>(orbit.steps.size())))
    close_block(static_cast<int>(orbit.steps.size()));
  return orbit;
}

using RenormOrbitD = RenormOrbit<double>;

// Orbit computed at precision R, converted to double for the analysis layer.
template <class R>
RenormOrbit<double> downcast_orbit(const RenormOrbit<R>& orb) {
  RenormOrbit<double> out;
  std::vector<double> l0(orb.initial.lambda().size());
  for (size_t i = 0; i < l0.size(); ++i)
    l0[i] = static_cast<double>(orb.initial.lambda()[i]);
  out.initial = Iet<double>(orb.initial.perm(), l0);
  out.steps = orb.steps;
  out.perms = orb.perms;
  out.q = orb.q;
  out.zorich_marks = orb.zorich_marks;
  out.Q = orb.Q;
  out.log_znorm = orb.log_znorm;
  out.tie_truncated = orb.tie_truncated;
  out.lambdas.reserve(orb.lambdas.size());
  for (const auto& lv : orb.lambdas) {
    std::vector<double> dl(lv.size());
    for (size_t i = 0; i < lv.size(); ++i) dl[i] = static_cast<double>(lv[i]);
    out.lambdas.push_back(std::move(dl));
  }
  return out;
}

template <>
inline RenormOrbit<double> downcast_orbit(const RenormOrbit<double>& orb) {
  return orb;
}

// Left Perron vector of a primitive nonnegative matrix at the precision of R,
// normalized to sum 1. Power iteration; R controls how many renormalization
// periods of a self-similar fixture stay on the periodic orbit (the deviation
// of a rounded eigenvector grows like rho^{2k}).
template <class R>
R bigint_to_real(const BigInt& v) {
  if constexpr (std::is_floating_point_v<R>) {
    return static_cast<R>(v.convert_to<long double>());
  } else {
    return R(v);
  }
}

template <class R>
std::vector<R> perron_left_vector(const BigMatrix& m, int iters = 400) {
  const int d = m.size();
  std::vector<std::vector<R>> mr(d, std::vector<R>(d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) mr[i][j] = bigint_to_real<R>(m(i, j));
  std::vector<R> v(d, R(1) / R(d)), nv(d);
  for (int it = 0; it < iters; ++it) {
    for (int j = 0; j < d; ++j) {
      R s(0);
      for (int i = 0; i < d; ++i) s += v[i] * mr[i][j];  // v^T M
      nv[j] = s;
    }
    R total(0);
    for (const R& x : nv) total += x;
    for (int j = 0; j < d; ++j) v[j] = nv[j] / total;
  }
  return v;
}

// Perron-Frobenius data of a closed Rauzy loop: the left eigenvector gives a
// self-similar IET whose induction replays the loop periodically.
struct SelfSimilarIet {
  Iet<double> iet;
  std::vector<bool> loop;  // move sequence, true = top
  double expansion = 0.0;  // Perron root of the loop matrix
  BigMatrix loop_matrix;
  double eigen_residual = 0.0;
};

SelfSimilarIet self_similar_from_loop(const Permutation& base,
                                      const std::vector<bool>& loop);

struct LyapunovEstimate {
  std::vector<double> exponents;   // per Zorich block, descending
  std::vector<double> normalized;  // divided by the top exponent
  std::vector<double> confidence;  // block-bootstrap half-widths
  int blocks_used = 0;
  bool degenerate = false;
};

// QR re-orthonormalization over the Zorich blocks of an orbit.
LyapunovEstimate lyapunov_estimate(const RenormOrbit<double>& orbit, int subspace_dim,
                                   unsigned seed = 0x5eed);

}  // namespace ietlab
