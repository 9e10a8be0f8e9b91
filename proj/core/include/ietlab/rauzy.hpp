#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "ietlab/iet.hpp"
#include "ietlab/permutation.hpp"
#include "ietlab/types.hpp"

namespace ietlab {

struct TieError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Tie tolerance relative to the current interval length: 2^-46 at 53-bit
// mantissa, scaled with the working precision.
template <class R>
R tie_tolerance() {
  return std::numeric_limits<R>::epsilon() * R(128);  // 2^-(digits-7)
}

struct InductionStep {
  bool top = false;  // top iff lambda_{pi0^-1(d)} > lambda_{pi1^-1(d)}
  int winner = -1;   // alphabet index
  int loser = -1;

  // B(1) = Id + E_{loser,winner}; satisfies lambda^(1) B(1) = lambda.
  BigMatrix matrix(int d) const {
    BigMatrix b = BigMatrix::identity(d);
    b(loser, winner) += 1;
    return b;
  }
};

// One step of 1-dimensional Rauzy-Veech induction.
template <class R>
std::pair<Iet<R>, InductionStep> rv_step(const Iet<R>& T) {
  using std::abs;
  const int d = T.d();
  const int a0 = T.perm().inv0(d);
  const int a1 = T.perm().inv1(d);
  const R l0 = T.lambda()[a0];
  const R l1 = T.lambda()[a1];
  if (abs(l0 - l1) <= tie_tolerance<R>() * T.total_length())
    throw TieError("rauzy-veech induction undefined: rightmost lengths tie");
  InductionStep step;
  step.top = l0 > l1;
  step.winner = step.top ? a0 : a1;
  step.loser = step.top ? a1 : a0;
  std::vector<R> lam = T.lambda();
  lam[step.winner] = lam[step.winner] - lam[step.loser];
  Permutation q = rauzy_move(T.perm(), step.top);
  return {Iet<R>(std::move(q), std::move(lam)), step};
}

// Suspension datum (pi, lambda, tau) with tau satisfying the cone conditions:
// partial sums over pi0-prefixes positive, over pi1-prefixes negative.
template <class R>
class Suspension {
 public:
  Suspension() = default;
  Suspension(Iet<R> iet, std::vector<R> tau)
      : iet_(std::move(iet)), tau_(std::move(tau)) {
    if (static_cast<int>(tau_.size()) != iet_.d())
      throw StructuralError("suspension: tau size != d");
    if (!tau_admissible()) throw DomainError("suspension: tau violates cone conditions");
  }

  const Iet<R>& iet() const { return iet_; }
  const std::vector<R>& tau() const { return tau_; }
  int d() const { return iet_.d(); }

  bool tau_admissible() const {
    const auto& p = iet_.perm();
    for (int j = 1; j < d(); ++j) {
      R s0(0), s1(0);
      for (int a = 0; a < d(); ++a) {
        if (p.pi0(a) <= j) s0 += tau_[a];
        if (p.pi1(a) <= j) s1 += tau_[a];
      }
      if (!(s0 > R(0)) || !(s1 < R(0))) return false;
    }
    return true;
  }

  // h = -Omega tau; positive under the cone conditions.
  std::vector<R> heights() const {
    auto om = omega_matrix(iet_.perm());
    std::vector<R> h(d(), R(0));
    for (int a = 0; a < d(); ++a)
      for (int b = 0; b < d(); ++b)
        if (om[a][b] != 0) h[a] -= R(om[a][b]) * tau_[b];
    return h;
  }

  // Area of the translation surface: -<lambda, Omega tau> = <lambda, h>.
  R area() const {
    auto h = heights();
    R s(0);
    for (int a = 0; a < d(); ++a) s += iet_.lambda()[a] * h[a];
    return s;
  }

  R tau_sum() const {
    R s(0);
    for (const R& t : tau_) s += t;
    return s;
  }

 private:
  Iet<R> iet_;
  std::vector<R> tau_;
};

// Forward 2-dimensional step: (pi,lambda,tau) -> (pi',lambda',tau') with
// tau' = tau B(1)^{-1}, i.e. the same winner/loser subtraction as lambda.
template <class R>
std::pair<Suspension<R>, InductionStep> rv_step_2d(const Suspension<R>& s) {
  auto [T1, step] = rv_step(s.iet());
  std::vector<R> tau = s.tau();
  tau[step.winner] = tau[step.winner] - tau[step.loser];
  Suspension<R> out(std::move(T1), std::move(tau));
  return {std::move(out), step};
}

// Backward step. Defined when sum tau != 0; backward top (sum < 0) undoes a
// forward top step and mirror for bottom.
template <class R>
Suspension<R> rv_backward(const Suspension<R>& s) {
  using std::abs;
  const R ssum = s.tau_sum();
  R tnorm(0);
  for (const R& t : s.tau()) tnorm += abs(t);
  if (abs(ssum) <= tie_tolerance<R>() * tnorm)
    throw DomainError("backward induction undefined: sum tau = 0");
  const bool top = ssum < R(0);
  const Permutation& p = s.iet().perm();
  const int d = s.d();

  std::vector<int> pi0(d), pi1(d);
  for (int i = 0; i < d; ++i) {
    pi0[i] = p.pi0(i);
    pi1[i] = p.pi1(i);
  }
  int winner, loser;
  if (top) {
    winner = p.inv0(d);
    loser = p.inv1(p.pi1(winner) + 1);
    const int k = pi1[loser];
    for (int i = 0; i < d; ++i)
      if (pi1[i] > k) --pi1[i];
    pi1[loser] = d;
  } else {
    winner = p.inv1(d);
    loser = p.inv0(p.pi0(winner) + 1);
    const int k = pi0[loser];
    for (int i = 0; i < d; ++i)
      if (pi0[i] > k) --pi0[i];
    pi0[loser] = d;
  }
  std::vector<R> lam = s.iet().lambda();
  std::vector<R> tau = s.tau();
  lam[winner] += lam[loser];
  tau[winner] += tau[loser];
  Permutation prev(p.alphabet(), std::move(pi0), std::move(pi1));
  return Suspension<R>(Iet<R>(std::move(prev), std::move(lam)), std::move(tau));
}

}  // namespace ietlab
