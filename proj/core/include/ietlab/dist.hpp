#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include <boost/math/constants/constants.hpp>

#include "ietlab/gamma.hpp"
#include "ietlab/types.hpp"

namespace ietlab {

// Minimal complex type usable with multiprecision reals.
template <class R>
struct Cplx {
  R re{}, im{};
  Cplx() = default;
  Cplx(R r, R i = R(0)) : re(std::move(r)), im(std::move(i)) {}
  Cplx operator+(const Cplx& o) const { return {re + o.re, im + o.im}; }
  Cplx operator-(const Cplx& o) const { return {re - o.re, im - o.im}; }
  Cplx operator*(const Cplx& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  Cplx operator*(const R& s) const { return {re * s, im * s}; }
  Cplx conj() const { return {re, -im}; }
  R abs2() const { return re * re + im * im; }
};

// B(x, y) = pi e^{i pi (y-x)/2} / 2^{x+y-2} * Gamma(x+y-1)/(Gamma(x)Gamma(y))
// with the convention Gamma(0) = 1 applied exactly when x + y = 1.
template <class R>
Cplx<R> frak_B(const R& x, const R& y) {
  using std::cos;
  using std::pow;
  using std::sin;
  if (!(x > R(0)) || !(y > R(0)))
    throw DomainError("frak_B requires positive arguments");
  const R pi = boost::math::constants::pi<R>();
  R gnum;
  if (x + y == R(1)) {
    gnum = R(1);  // Gamma(0) := 1 by convention, never as a limit
  } else {
    if constexpr (std::is_same_v<R, double>) {
      gnum = gamma_lanczos(x + y - 1);
    } else {
      gnum = gamma_spouge<R>(x + y - R(1));
    }
  }
  R gx, gy;
  if constexpr (std::is_same_v<R, double>) {
    gx = gamma_lanczos(x);
    gy = gamma_lanczos(y);
  } else {
    gx = gamma_spouge<R>(x);
    gy = gamma_spouge<R>(y);
  }
  const R mag = pi / pow(R(2), x + y - 2) * gnum / (gx * gy);
  const R arg = pi / 2 * (y - x);
  return Cplx<R>(mag * cos(arg), mag * sin(arg));
}

// Jet of (f V) at the saddle: entries d^k (fV) / dz^i dzbar^{k-i} (0,0) for
// 0 <= i <= k <= m - 2.
template <class R>
struct SaddleJetT {
  int m = 2;
  R V0 = R(1);
  std::vector<std::vector<Cplx<R>>> jet;  // jet[k][i]

  static SaddleJetT constant(int m, const R& fv00) {
    SaddleJetT j;
    j.m = m;
    j.jet.assign(m - 1, {});
    for (int k = 0; k <= m - 2; ++k) j.jet[k].assign(k + 1, Cplx<R>(R(0)));
    j.jet[0][0] = Cplx<R>(fv00);
    return j;
  }

  // reality: jet(i, k-i) = conj(jet(k-i, i)) when f, V are real
  bool real_constraint_holds(const R& tol) const {
    using std::fabs;
    for (int k = 0; k <= m - 2; ++k)
      for (int i = 0; i <= k; ++i) {
        Cplx<R> a = jet[k][i];
        Cplx<R> b = jet[k][k - i].conj();
        if (!((a - b).abs2() <= tol * tol)) return false;
      }
    return true;
  }
};

using SaddleJet = SaddleJetT<double>;

template <class R>
Cplx<R> theta_power(int m, long long e) {
  // principal 2m-th root of unity to the power e
  const R pi = boost::math::constants::pi<R>();
  using std::cos;
  using std::sin;
  const R arg = pi * R(static_cast<double>(e)) / R(m);
  return Cplx<R>(cos(arg), sin(arg));
}

template <class R>
R binom(int n, int k) {
  R v(1);
  for (int i = 0; i < k; ++i) v = v * R(n - i) / R(i + 1);
  return v;
}

// c^k_{sigma,l} = sum_i theta^{l(2i-k)} C(k,i)
//                 B((m-1-i)/m, (m-1-k+i)/m) jet[k][i]
template <class R>
Cplx<R> frak_C(const SaddleJetT<R>& sigma, int l, int k) {
  const int m = sigma.m;
  if (k < 0 || k > m - 2) throw DomainError("frak_C: order k out of [0, m-2]");
  if (l < 0 || l >= 2 * m) throw DomainError("frak_C: sector index out of range");
  Cplx<R> acc(R(0));
  for (int i = 0; i <= k; ++i) {
    const R x = R(m - 1 - i) / R(m);
    const R y = R(m - 1 - k + i) / R(m);
    Cplx<R> term = theta_power<R>(m, static_cast<long long>(l) * (2 * i - k)) *
                   frak_B<R>(x, y) * binom<R>(k, i);
    acc = acc + term * sigma.jet[k][i];
  }
  return acc;
}

struct SectorClass {
  int m = 2;
  std::vector<int> members;  // subset of {0 .. 2m-1}, all of one parity
  int parity() const {
    if (members.empty()) return 0;
    const int p = members.front() % 2;
    for (int l : members)
      if (l % 2 != p) throw DomainError("sector class mixes parities");
    return p;
  }
};

template <class R>
Cplx<R> frak_C_class(const SaddleJetT<R>& sigma, const SectorClass& cls, int k) {
  cls.parity();  // validates
  Cplx<R> acc(R(0));
  for (int l : cls.members) acc = acc + frak_C<R>(sigma, l, k);
  return acc;
}

}  // namespace ietlab
