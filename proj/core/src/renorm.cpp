#include "ietlab/renorm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace ietlab {

namespace {

using LD = long double;
using Mat = std::vector<std::vector<LD>>;

Mat to_ld(const BigMatrix& b) {
  const int n = b.size();
  Mat m(n, std::vector<LD>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[i][j] = b(i, j).convert_to<long double>();
  return m;
}

// Solve (A - s I) x = rhs by partial-pivoting LU; A small and dense.
std::vector<LD> solve_shifted(Mat a, LD shift, std::vector<LD> rhs) {
  const int n = static_cast<int>(a.size());
  for (int i = 0; i < n; ++i) a[i][i] -= shift;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::fabs((double)a[r][col]) > std::fabs((double)a[piv][col])) piv = r;
    std::swap(a[piv], a[col]);
    std::swap(rhs[piv], rhs[col]);
    if (a[col][col] == 0) a[col][col] = std::numeric_limits<LD>::min();
    for (int r = col + 1; r < n; ++r) {
      LD f = a[r][col] / a[col][col];
      if (f == 0) continue;
      for (int c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      rhs[r] -= f * rhs[col];
    }
  }
  std::vector<LD> x(n);
  for (int r = n - 1; r >= 0; --r) {
    LD s = rhs[r];
    for (int c = r + 1; c < n; ++c) s -= a[r][c] * x[c];
    x[r] = s / a[r][r];
  }
  return x;
}

}  // namespace

SelfSimilarIet self_similar_from_loop(const Permutation& base,
                                      const std::vector<bool>& loop) {
  if (loop.empty()) throw DomainError("self_similar_from_loop: empty loop");
  const int d = base.d();
  Permutation cur = base;
  BigMatrix bl = BigMatrix::identity(d);
  for (bool top : loop) {
    const int w = top ? cur.inv0(d) : cur.inv1(d);
    const int l = top ? cur.inv1(d) : cur.inv0(d);
    BigMatrix bs = BigMatrix::identity(d);
    bs(l, w) += 1;
    bl = bs * bl;
    cur = rauzy_move(cur, top);
  }
  if (!(cur == base))
    throw DomainError("self_similar_from_loop: move sequence is not a loop");

  // Wielandt bound for primitivity of a nonnegative matrix.
  BigMatrix pw = bl;
  const int wielandt = (d - 1) * (d - 1) + 1;
  int k = 1;
  while (!pw.all_positive() && k < wielandt) {
    pw = pw * bl;
    ++k;
  }
  if (!pw.all_positive())
    throw DomainError("self_similar_from_loop: loop matrix is imprimitive");

  // Left Perron vector: power iteration on B^T, then Rayleigh polish.
  Mat bt = to_ld(bl);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) std::swap(bt[i][j], bt[j][i]);
  std::vector<LD> v(d, 1.0L / d);
  LD rho = 0;
  for (int it = 0; it < 400; ++it) {
    std::vector<LD> nv(d, 0);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) nv[i] += bt[i][j] * v[j];
    LD s = std::accumulate(nv.begin(), nv.end(), (LD)0);
    for (LD& x : nv) x /= s;
    rho = s;
    v = std::move(nv);
  }
  for (int it = 0; it < 4; ++it) {
    auto nv = solve_shifted(bt, rho * (1 - 1e-12L), v);
    LD s = std::accumulate(nv.begin(), nv.end(), (LD)0);
    for (LD& x : nv) x /= s;
    v = std::move(nv);
    LD num = 0, den = 0;
    for (int i = 0; i < d; ++i) {
      LD bi = 0;
      for (int j = 0; j < d; ++j) bi += bt[i][j] * v[j];
      num += bi * v[i];
      den += v[i] * v[i];
    }
    rho = num / den;
  }

  std::vector<double> lambda(d);
  double lsum = 0;
  for (int i = 0; i < d; ++i) {
    if (!(v[i] > 0))
      throw DomainError("self_similar_from_loop: non-positive Perron vector");
    lambda[i] = static_cast<double>(v[i]);
    lsum += lambda[i];
  }
  for (double& x : lambda) x /= lsum;

  SelfSimilarIet out;
  out.iet = Iet<double>(base, lambda);
  out.loop = loop;
  out.expansion = static_cast<double>(rho);
  out.loop_matrix = bl;

  LD res = 0;
  Mat b = to_ld(bl);
  for (int j = 0; j < d; ++j) {
    LD s = 0;
    for (int i = 0; i < d; ++i) s += (LD)lambda[i] * b[i][j];
    res = std::max(res, (LD)std::fabs((double)(s - rho * (LD)lambda[j])));
  }
  out.eigen_residual = static_cast<double>(res);
  return out;
}

LyapunovEstimate lyapunov_estimate(const RenormOrbit<double>& orbit,
                                   int subspace_dim, unsigned seed) {
  LyapunovEstimate est;
  const int d = orbit.initial.d();
  const int m = std::min(subspace_dim, d);
  const int K = orbit.blocks();
  est.blocks_used = K;
  if (K < 2 || m < 1) {
    est.degenerate = true;
    return est;
  }

  // per-block log R_ii increments from QR re-orthonormalization
  std::vector<std::vector<double>> incr(K, std::vector<double>(m, 0.0));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  std::vector<std::vector<LD>> M(d, std::vector<LD>(m));
  for (auto& row : M)
    for (auto& x : row) x = nd(rng);
  auto orthonormalize = [&](std::vector<double>* diag) {
    for (int c = 0; c < m; ++c) {
      for (int p = 0; p < c; ++p) {
        LD dot = 0;
        for (int r = 0; r < d; ++r) dot += M[r][c] * M[r][p];
        for (int r = 0; r < d; ++r) M[r][c] -= dot * M[r][p];
      }
      LD nrm = 0;
      for (int r = 0; r < d; ++r) nrm += M[r][c] * M[r][c];
      nrm = sqrtl(nrm);
      if (diag) (*diag)[c] = std::log(static_cast<double>(nrm));
      if (nrm == 0) nrm = std::numeric_limits<LD>::min();
      for (int r = 0; r < d; ++r) M[r][c] /= nrm;
    }
  };
  orthonormalize(nullptr);

  for (int k = 1; k <= K; ++k) {
    Mat z = to_ld(orbit.z_matrix(k));
    std::vector<std::vector<LD>> ZM(d, std::vector<LD>(m, 0));
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        if (z[i][j] == 0) continue;
        for (int c = 0; c < m; ++c) ZM[i][c] += z[i][j] * M[j][c];
      }
    M = std::move(ZM);
    orthonormalize(&incr[k - 1]);
  }

  est.exponents.assign(m, 0.0);
  for (int k = 0; k < K; ++k)
    for (int c = 0; c < m; ++c) est.exponents[c] += incr[k][c];
  for (int c = 0; c < m; ++c) est.exponents[c] /= K;
  std::sort(est.exponents.rbegin(), est.exponents.rend());

  const double top = est.exponents[0];
  if (!(std::fabs(top) > 0) || !std::isfinite(top)) {
    est.degenerate = true;
    return est;
  }
  est.normalized.resize(m);
  for (int c = 0; c < m; ++c) est.normalized[c] = est.exponents[c] / top;

  // moving-block bootstrap on the increment series
  const int L = std::max(1, static_cast<int>(std::sqrt((double)K)));
  const int nblocks = (K + L - 1) / L;
  std::uniform_int_distribution<int> start(0, K - L);
  const int B = 200;
  std::vector<std::vector<double>> samples(B, std::vector<double>(m));
  for (int b = 0; b < B; ++b) {
    std::vector<double> acc(m, 0.0);
    int count = 0;
    for (int nb = 0; nb < nblocks; ++nb) {
      int s = start(rng);
      for (int t = 0; t < L && count < K; ++t, ++count)
        for (int c = 0; c < m; ++c) acc[c] += incr[s + t][c];
    }
    std::vector<double> ex(m);
    for (int c = 0; c < m; ++c) ex[c] = acc[c] / count;
    std::sort(ex.rbegin(), ex.rend());
    for (int c = 0; c < m; ++c) samples[b][c] = ex[c] / ex[0];
  }
  est.confidence.assign(m, 0.0);
  for (int c = 0; c < m; ++c) {
    double mean = 0;
    for (int b = 0; b < B; ++b) mean += samples[b][c];
    mean /= B;
    double var = 0;
    for (int b = 0; b < B; ++b) var += (samples[b][c] - mean) * (samples[b][c] - mean);
    var /= (B - 1);
    est.confidence[c] = 1.96 * std::sqrt(var);
  }
  return est;
}

}  // namespace ietlab
