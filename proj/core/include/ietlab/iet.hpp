#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "ietlab/permutation.hpp"
#include "ietlab/types.hpp"

namespace ietlab {

// Interval exchange transformation over the value type R. Combinatorics stay
// in exact integers; only lengths and derived endpoints live in R.
// Endpoint membership follows the half-open convention [l_a, r_a).
template <class R>
class Iet {
 public:
  Iet() = default;
  Iet(Permutation perm, std::vector<R> lambda)
      : perm_(std::move(perm)), lambda_(std::move(lambda)) {
    if (static_cast<int>(lambda_.size()) != perm_.d())
      throw StructuralError("iet: lambda size != d");
    for (const R& l : lambda_)
      if (!(l > R(0))) throw StructuralError("iet: lengths must be positive");
    recompute();
  }

  const Permutation& perm() const { return perm_; }
  int d() const { return perm_.d(); }
  const std::vector<R>& lambda() const { return lambda_; }
  R total_length() const { return total_; }

  R left(int a) const { return left_[a]; }
  R right(int a) const { return left_[a] + lambda_[a]; }
  R midpoint(int a) const { return left_[a] + lambda_[a] / R(2); }
  R translation(int a) const { return w_[a]; }
  const std::vector<R>& translations() const { return w_; }

  // Alphabet index of the interval containing x, by the half-open rule.
  int interval_of(R x) const {
    if (!(x >= R(0)) || !(x < total_))
      throw DomainError("iet: point outside [0,|I|)");
    // d is small; linear scan over pi0 order keeps ties exact.
    for (int p = 1; p <= d(); ++p) {
      const int a = perm_.inv0(p);
      if (x < left_[a] + lambda_[a]) return a;
    }
    return perm_.inv0(d());
  }

  R apply(R x) const { return x + w_[interval_of(x)]; }

  R inverse_apply(R y) const {
    if (!(y >= R(0)) || !(y < total_))
      throw DomainError("iet: point outside [0,|I|)");
    for (int p = 1; p <= d(); ++p) {
      const int a = perm_.inv1(p);
      const R img_left = left_[a] + w_[a];
      if (y < img_left + lambda_[a]) return y - w_[a];
    }
    const int a = perm_.inv1(d());
    return y - w_[a];
  }

  // Reflection across the midpoint of [0,|I|).
  R reflect(R x) const { return total_ - x; }

  // Endpoints of all exchanged intervals (both sides), sorted.
  std::vector<R> endpoints() const {
    std::vector<R> e;
    for (int p = 1; p <= d(); ++p) {
      const int a = perm_.inv0(p);
      e.push_back(left_[a]);
    }
    e.push_back(total_);
    return e;
  }

  Iet rescaled_unit() const {
    std::vector<R> l = lambda_;
    for (R& v : l) v /= total_;
    return Iet(perm_, std::move(l));
  }

 private:
  void recompute() {
    const int dd = perm_.d();
    total_ = R(0);
    for (const R& l : lambda_) total_ += l;
    left_.assign(dd, R(0));
    R acc = R(0);
    for (int p = 1; p <= dd; ++p) {
      const int a = perm_.inv0(p);
      left_[a] = acc;
      acc += lambda_[a];
    }
    auto om = omega_matrix(perm_);
    w_.assign(dd, R(0));
    for (int a = 0; a < dd; ++a)
      for (int b = 0; b < dd; ++b)
        if (om[a][b] != 0) w_[a] += R(om[a][b]) * lambda_[b];
  }

  Permutation perm_;
  std::vector<R> lambda_;
  std::vector<R> left_;
  std::vector<R> w_;
  R total_ = R(1);
};

using IetD = Iet<double>;

// Sup over a sample grid of |I(T(x)) - T^{-1}(I(x))|, skipping points within
// `margin` of any exchanged-interval endpoint. Zero (at precision) exactly
// when T is conjugate to its inverse by the reflection.
template <class R>
R reflection_defect(const Iet<R>& T, int grid = 4096) {
  using std::abs;
  const R total = T.total_length();
  const R margin = total * R(4) * std::numeric_limits<double>::epsilon() * grid;
  auto near_endpoint = [&](R x) {
    for (const R& e : T.endpoints())
      if (abs(x - e) < margin) return true;
    return false;
  };
  R defect(0);
  for (int i = 1; i < grid; ++i) {
    R x = total * R(i) / R(grid);
    if (near_endpoint(x) || near_endpoint(T.apply(x)) ||
        near_endpoint(T.reflect(x)))
      continue;
    R lhs = T.reflect(T.apply(x));
    R rhs = T.inverse_apply(T.reflect(x));
    R diff = abs(lhs - rhs);
    if (diff > defect) defect = diff;
  }
  return defect;
}

}  // namespace ietlab
