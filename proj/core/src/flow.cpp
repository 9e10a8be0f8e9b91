#include "ietlab/flow.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace ietlab {

SpecialFlow::SpecialFlow(Iet<double> base, CocyclePtr roof, double roof_min)
    : base_(std::move(base)), roof_(std::move(roof)), roof_min_(roof_min) {
  // sampled positivity check
  const double L = base_.total_length();
  for (int i = 1; i < 4096; ++i) {
    const double x = L * i / 4096.0;
    if (guard_distance(*roof_, x) < default_guard(base_)) continue;
    if (!(roof_->value(x) >= roof_min_))
      throw DomainError("special flow: roof drops below roof_min");
  }
}

FlowIntegral flow_integrate(const SpecialFlow& flow, const Cocycle& phi,
                            double x0, double t_max,
                            const std::vector<double>& checkpoints,
                            long long step_cap) {
  FlowIntegral out;
  const Iet<double>& T = flow.base();
  const double guard = default_guard(T);

  double x = x0;
  double t = 0.0;
  double integral = 0.0, comp = 0.0;
  auto add = [&](double v) {
    double y = v - comp;
    double s = integral + y;
    comp = (s - integral) - y;
    integral = s;
  };
  size_t ck = 0;
  long long steps = 0;
  while (t < t_max && steps < step_cap) {
    if (guard_distance(flow.roof(), x) < guard || guard_distance(phi, x) < guard) {
      out.truncated = true;
      break;
    }
    const double h = flow.roof().value(x);
    const double rate = phi.value(x) / h;
    while (ck < checkpoints.size() && checkpoints[ck] <= t + h) {
      if (checkpoints[ck] > t_max) break;
      out.times.push_back(checkpoints[ck]);
      out.values.push_back(integral + (checkpoints[ck] - t) * rate);
      ++ck;
    }
    if (t + h >= t_max) {
      out.final_time = t_max;
      out.final_height = t_max - t;
      add((t_max - t) * rate);
      t = t_max;
      break;
    }
    add(phi.value(x));
    t += h;
    x = T.apply(x);
    ++out.returns;
    ++steps;
  }
  if (steps >= step_cap) out.truncated = true;
  if (out.final_time == 0.0) out.final_time = t;
  out.final_x = x;
  return out;
}

std::vector<double> geometric_checkpoints(double t0, double t_max, int per_decade) {
  std::vector<double> out;
  const double ratio = std::pow(10.0, 1.0 / per_decade);
  for (double t = t0; t <= t_max * (1 + 1e-12); t *= ratio) out.push_back(t);
  return out;
}

DeviationEstimate deviation_exponent(const std::vector<double>& times,
                                     const std::vector<double>& values,
                                     unsigned seed) {
  DeviationEstimate est;
  if (times.size() != values.size() || times.size() < 8) {
    est.status = "degenerate samples";
    return est;
  }
  std::vector<std::pair<double, double>> pts;  // (log T, log running max)
  double run = 0.0;
  for (size_t i = 0; i < times.size(); ++i) {
    run = std::max(run, std::fabs(values[i]));
    if (run > 0 && times[i] > 0) pts.emplace_back(std::log(times[i]), std::log(run));
  }
  if (pts.size() < 8) {
    est.status = "degenerate samples (all zero)";
    return est;
  }
  const double span = (pts.back().first - pts.front().first) / std::log(10.0);
  est.decades = static_cast<int>(span + 1e-9);
  if (span < 4.0 - 1e-9) {
    est.status = "needs at least 4 decades of T";
    return est;
  }
  auto fit = [](const std::vector<std::pair<double, double>>& p) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto& [x, y] : p) {
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    const double n = static_cast<double>(p.size());
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
  };
  est.slope = fit(pts);

  // moving-block bootstrap over the checkpoint series
  std::mt19937_64 rng(seed);
  const int L = std::max<size_t>(2, pts.size() / 10);
  std::uniform_int_distribution<size_t> start(0, pts.size() - L);
  std::vector<double> slopes;
  for (int b = 0; b < 200; ++b) {
    std::vector<std::pair<double, double>> sample;
    while (sample.size() < pts.size()) {
      size_t s = start(rng);
      for (int t = 0; t < L && sample.size() < pts.size(); ++t)
        sample.push_back(pts[s + t]);
    }
    slopes.push_back(fit(sample));
  }
  double mean = 0;
  for (double v : slopes) mean += v;
  mean /= slopes.size();
  double var = 0;
  for (double v : slopes) var += (v - mean) * (v - mean);
  var /= (slopes.size() - 1);
  est.confidence = 1.96 * std::sqrt(var);
  est.ok = true;
  est.status = "ok";
  return est;
}

}  // namespace ietlab
