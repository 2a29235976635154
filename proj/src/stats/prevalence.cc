#include "footprint/stats/prevalence.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "footprint/error.h"

namespace footprint::stats {

double normal_quantile_two_sided(double confidence) {
  if (!(confidence > 0 && confidence < 1))
    throw Error(ErrorCode::kBadCount, "confidence must lie in (0, 1)");
  // Solve erfc(z / sqrt 2) = 1 - confidence by bisection; erfc is decreasing.
  const double target = 1 - confidence;
  double lo = 0, hi = 40;
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
    double mid = (lo + hi) / 2;
    (std::erfc(mid / std::sqrt(2.0)) > target ? lo : hi) = mid;
  }
  return (lo + hi) / 2;
}

PrevalenceEstimate expected_interval(double p, std::size_t n, double confidence) {
  if (n == 0) throw Error(ErrorCode::kBadCount, "sample size is zero");
  if (!(p >= 0 && p <= 1)) throw Error(ErrorCode::kBadCount, "proportion outside [0,1]");
  PrevalenceEstimate e;
  e.n = n;
  e.confidence = confidence;
  e.p = p;
  e.mu = p;
  e.sigma = std::sqrt(p * (1 - p) / static_cast<double>(n));
  double half = normal_quantile_two_sided(confidence) * e.sigma;
  e.lo = std::clamp(p - half, 0.0, 1.0);
  e.hi = std::clamp(p + half, 0.0, 1.0);
  return e;
}

PrevalenceEstimate prevalence_ci(std::size_t k, std::size_t n, double confidence) {
  if (n == 0) throw Error(ErrorCode::kBadCount, "sample size is zero");
  if (k > n) throw Error(ErrorCode::kBadCount, std::to_string(k) + " > " + std::to_string(n));
  return expected_interval(static_cast<double>(k) / static_cast<double>(n), n, confidence);
}

double quantile(std::vector<std::uint64_t> values, double q) {
  if (values.empty()) throw Error(ErrorCode::kEmptyInput, "quantile of nothing");
  std::sort(values.begin(), values.end());
  double pos = static_cast<double>(values.size() - 1) * q;
  auto below = static_cast<std::size_t>(std::floor(pos));
  auto above = std::min(below + 1, values.size() - 1);
  double frac = pos - static_cast<double>(below);
  return static_cast<double>(values[below]) +
         frac * (static_cast<double>(values[above]) - static_cast<double>(values[below]));
}

CountStats descriptive_stats(const std::vector<std::uint64_t>& counts, std::uint64_t gt_threshold) {
  if (counts.empty()) throw Error(ErrorCode::kEmptyInput, "no counts");
  CountStats s;
  s.n = counts.size();
  s.gt_threshold = gt_threshold;
  const double n = static_cast<double>(counts.size());
  s.mean = std::accumulate(counts.begin(), counts.end(), 0.0, [](double acc, auto v) {
             return acc + static_cast<double>(v);
           }) / n;
  s.q1 = quantile(counts, 0.25);
  s.median = quantile(counts, 0.5);
  s.q3 = quantile(counts, 0.75);
  s.pct_gt = static_cast<double>(std::count_if(counts.begin(), counts.end(),
                                               [&](auto v) { return v > gt_threshold; })) / n;
  s.pct_none = static_cast<double>(std::count(counts.begin(), counts.end(), 0u)) / n;
  return s;
}

}  // namespace footprint::stats
