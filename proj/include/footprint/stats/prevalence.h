#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace footprint::stats {

// Normal-approximation interval for a proportion. mu and sigma are the
// parameters of the sampling distribution N(mu, sigma^2) of the mean.
struct PrevalenceEstimate {
  double p = 0;
  std::size_t n = 0;
  double lo = 0;
  double hi = 0;
  double confidence = 0.95;
  double mu = 0;
  double sigma = 0;

  double width() const { return hi - lo; }
};

// Two-sided standard-normal quantile for `confidence` (1.95996 at 0.95).
double normal_quantile_two_sided(double confidence);

// Throws BadCount when k > n, n == 0 or confidence is outside (0, 1).
// Interval a sample of n apps would give if the true prevalence is p; used
// to size samples from a known corpus-wide share.
PrevalenceEstimate expected_interval(double p, std::size_t n, double confidence = 0.95);
PrevalenceEstimate prevalence_ci(std::size_t k, std::size_t n, double confidence = 0.95);

struct CountStats {
  double median = 0;
  double mean = 0;
  double q1 = 0;
  double q3 = 0;
  double pct_gt = 0;  // strictly above the threshold
  double pct_none = 0;
  std::size_t n = 0;
  std::uint64_t gt_threshold = 10;

  bool operator==(const CountStats&) const = default;
};

// Linear interpolation at position (n-1)q of the sorted values.
double quantile(std::vector<std::uint64_t> values, double q);

// Throws EmptyInput.
CountStats descriptive_stats(const std::vector<std::uint64_t>& counts, std::uint64_t gt_threshold = 10);

}  // namespace footprint::stats
