#include "ietlab/three_distance.hpp"

#include <algorithm>
#include <cmath>

namespace ietlab {

std::vector<std::int64_t> continued_fraction(double x, int max_terms) {
  std::vector<std::int64_t> a;
  double y = x;
  for (int i = 0; i < max_terms; ++i) {
    double fl = std::floor(y);
    a.push_back(static_cast<std::int64_t>(fl));
    double frac = y - fl;
    if (frac < 1e-14) break;
    y = 1.0 / frac;
    if (!std::isfinite(y) || y > 4.5e15) break;
  }
  return a;
}

namespace {

// Arc-length prediction of the three-distance theorem for the points
// {i*alpha mod 1 : 0 <= i < n}: lengths eta_k, eta_{k-1} - m eta_k and their
// sum with multiplicities n - q_k, r + 1, q_k - r - 1, where
// n - 1 = m q_k + q_{k-1} + r.
bool cf_prediction(double alpha, std::int64_t n, std::vector<double>* lengths,
                   std::vector<std::int64_t>* mult) {
  if (n < 2) return false;
  auto a = continued_fraction(alpha);
  if (a.size() < 3) return false;  // rational-looking input
  std::vector<std::int64_t> q{1};  // q_0
  std::vector<double> eta;
  double eta_prev = 1.0, eta_cur = alpha;  // eta_{-1}, eta_0
  std::vector<std::int64_t> qs{0, 1};      // q_{-1}, q_0
  std::vector<double> etas{eta_prev, eta_cur};
  for (size_t k = 1; k < a.size(); ++k) {
    std::int64_t qn = a[k] * qs.back() + qs[qs.size() - 2];
    double en = etas[etas.size() - 2] - static_cast<double>(a[k]) * etas.back();
    if (en <= 0) break;
    qs.push_back(qn);
    etas.push_back(en);
    if (qn > n) break;
  }
  const std::int64_t N = n - 1;
  // largest k with q_k + q_{k-1} <= N; indices into qs (offset by 1)
  int ki = -1;
  for (size_t i = 1; i + 1 < qs.size() + 1 && i < qs.size(); ++i) {
    if (qs[i] + qs[i - 1] <= N) ki = static_cast<int>(i);
  }
  if (ki < 1) return false;
  const std::int64_t qk = qs[ki], qk1 = qs[ki - 1];
  const double ek = etas[ki], ek1 = etas[ki - 1];
  const std::int64_t m = (N - qk1) / qk;
  const std::int64_t r = N - m * qk - qk1;
  if (m < 1 || r < 0 || r >= qk) return false;
  lengths->assign({ek, ek1 - static_cast<double>(m) * ek,
                   ek1 - static_cast<double>(m - 1) * ek});
  mult->assign({N + 1 - qk, r + 1, qk - r - 1});
  return true;
}

}  // namespace

ThreeDistanceGaps three_distance_gaps(double alpha, std::int64_t n, double x0) {
  ThreeDistanceGaps out;
  if (n < 1) return out;
  std::vector<double> pts;
  pts.reserve(static_cast<size_t>(n));
  double x = x0;
  const double la = 1.0 - alpha;  // rotation as the two-interval exchange
  for (std::int64_t i = 0; i < n; ++i) {
    pts.push_back(x);
    x = x < la ? x + alpha : x - la;
  }
  std::sort(pts.begin(), pts.end());
  out.sorted_gaps.reserve(pts.size());
  for (size_t i = 1; i < pts.size(); ++i) out.sorted_gaps.push_back(pts[i] - pts[i - 1]);
  out.sorted_gaps.push_back(1.0 - pts.back() + pts.front());
  std::sort(out.sorted_gaps.begin(), out.sorted_gaps.end());

  const double merge_tol = 1e-12;
  for (double g : out.sorted_gaps) {
    if (!out.distinct.empty() &&
        std::fabs(g - out.distinct.back()) <= merge_tol * std::max(1.0, g)) {
      ++out.multiplicity.back();
    } else {
      out.distinct.push_back(g);
      out.multiplicity.push_back(1);
    }
  }

  std::vector<double> plen;
  std::vector<std::int64_t> pmult;
  if (cf_prediction(alpha, n, &plen, &pmult)) {
    // compare as multisets, dropping zero-multiplicity entries
    std::vector<std::pair<double, std::int64_t>> pred;
    for (size_t i = 0; i < plen.size(); ++i)
      if (pmult[i] > 0) pred.emplace_back(plen[i], pmult[i]);
    std::sort(pred.begin(), pred.end());
    // merge predicted lengths that coincide
    std::vector<std::pair<double, std::int64_t>> merged;
    for (auto& pr : pred) {
      if (!merged.empty() && std::fabs(pr.first - merged.back().first) <=
                                 merge_tol * std::max(1.0, pr.first))
        merged.back().second += pr.second;
      else
        merged.push_back(pr);
    }
    bool ok = merged.size() == out.distinct.size();
    if (ok)
      for (size_t i = 0; i < merged.size(); ++i) {
        if (merged[i].second != out.multiplicity[i]) ok = false;
        double rel = std::fabs(merged[i].first - out.distinct[i]) /
                     std::max(1e-300, out.distinct[i]);
        if (rel > 1e-6) ok = false;
      }
    out.matches_cf_prediction = ok;
  }
  return out;
}

}  // namespace ietlab
