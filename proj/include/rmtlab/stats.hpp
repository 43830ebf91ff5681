#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "rmtlab/quadrature.hpp"
#include "rmtlab/rng.hpp"

namespace rmtlab::stats {

inline double mean(std::span<const double> v) {
  if (v.empty()) throw std::invalid_argument("stats::mean: empty sample");
  return pairwise_sum(v.data(), v.size()) / static_cast<double>(v.size());
}

/// Population variance (divide by n), so that msd = variance + bias^2 holds
/// as an exact floating-point identity in the estimator records.
inline double population_variance(std::span<const double> v, double mu) {
  std::vector<double> sq(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) sq[i] = (v[i] - mu) * (v[i] - mu);
  return pairwise_sum(sq) / static_cast<double>(v.size());
}

inline double stderr_of_mean(std::span<const double> v, double mu) {
  const std::size_t n = v.size();
  if (n < 2) throw std::invalid_argument("stats::stderr_of_mean: need n >= 2");
  std::vector<double> sq(n);
  for (std::size_t i = 0; i < n; ++i) sq[i] = (v[i] - mu) * (v[i] - mu);
  return std::sqrt(pairwise_sum(sq) / (static_cast<double>(n) * (n - 1)));
}

inline double normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

/// Kolmogorov distance of a sample against the standard normal law.
inline double ks_vs_normal(std::vector<double> sample) {
  if (sample.empty()) throw std::invalid_argument("stats::ks_vs_normal: empty sample");
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double sup = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double c = normal_cdf(sample[i]);
    sup = std::max(sup, std::abs((i + 1) / n - c));
    sup = std::max(sup, std::abs(i / n - c));
  }
  return sup;
}

/// Two-sample Kolmogorov distance (sup over the pooled jump points).
inline double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("stats::ks_two_sample: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  double sup = 0.0;
  std::size_t ia = 0, ib = 0;
  while (ia < a.size() && ib < b.size()) {
    const double x = std::min(a[ia], b[ib]);
    while (ia < a.size() && a[ia] <= x) ++ia;
    while (ib < b.size() && b[ib] <= x) ++ib;
    sup = std::max(sup, std::abs(ia / na - ib / nb));
  }
  return sup;
}

/// One-sided Wilson score upper confidence limit for a binomial proportion.
inline double wilson_upper(std::int64_t successes, std::int64_t trials,
                           double z = 1.6448536269514722) {
  if (trials <= 0) throw std::invalid_argument("stats::wilson_upper: need trials > 0");
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = p + z2 / (2.0 * n);
  const double spread = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  return std::min(1.0, (center + spread) / denom);
}

struct BootstrapStderr {
  double mean_se = 0.0;
  double variance_se = 0.0;
  double msd_se = 0.0;
};

/// Percentile-free bootstrap standard errors (sd over resampled statistics)
/// for the mean, the population variance, and the mean square around a fixed
/// target. Deterministic given the seed.
inline BootstrapStderr bootstrap_stderr(std::span<const double> values,
                                        double target, int resamples,
                                        std::uint64_t seed) {
  const std::size_t n = values.size();
  if (n < 2 || resamples < 2) {
    throw std::invalid_argument("stats::bootstrap_stderr: need n >= 2 and resamples >= 2");
  }
  std::vector<double> means(resamples), vars(resamples), msds(resamples);
  std::vector<double> draw(n);
  for (int b = 0; b < resamples; ++b) {
    Rng rng(child_seed(seed, static_cast<std::uint64_t>(b)));
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t idx =
          std::min<std::size_t>(n - 1, static_cast<std::size_t>(rng.uniform01() * n));
      draw[i] = values[idx];
    }
    const double m = mean(draw);
    means[b] = m;
    vars[b] = population_variance(draw, m);
    std::vector<double> sq(n);
    for (std::size_t i = 0; i < n; ++i) sq[i] = (draw[i] - target) * (draw[i] - target);
    msds[b] = pairwise_sum(sq) / static_cast<double>(n);
  }
  auto sd = [](std::span<const double> v) {
    const double m = mean(v);
    std::vector<double> sq(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) sq[i] = (v[i] - m) * (v[i] - m);
    return std::sqrt(pairwise_sum(sq) / static_cast<double>(v.size() - 1));
  };
  return {sd(means), sd(vars), sd(msds)};
}

}  // namespace rmtlab::stats
