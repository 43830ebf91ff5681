#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rmtlab/ensembles.hpp"
#include "rmtlab/laws.hpp"

namespace rmtlab::transport {

struct EmpiricalMeasure {
  std::vector<double> support;  // sorted ascending, mass 1/n each

  static EmpiricalMeasure from_sorted(std::vector<double> values);
  static EmpiricalMeasure from_unsorted(std::vector<double> values);
  int size() const { return static_cast<int>(support.size()); }
};

/// Per-n cache of the semicircle quantile moments
/// A_j = int_{(j-1)/n}^{j/n} Q(x) dx and B_j = same with Q^2, where Q is the
/// semicircle quantile function. The two edge intervals are integrated on a
/// geometrically graded mesh (Q has a p^(2/3) endpoint there). With the
/// cache, W2^2 against the semicircle law is an O(n) evaluation per sample.
class SemicircleQuantileGrid {
 public:
  explicit SemicircleQuantileGrid(int n);
  int size() const { return n_; }
  double w2_squared(std::span<const double> sorted_support) const;

 private:
  int n_ = 0;
  std::vector<double> a_;  // quantile means per interval
  std::vector<double> b_;  // quantile second moments per interval
};

/// W2^2(mu, semicircle) by the quantile-coupling formula
/// sum_j int_{(j-1)/n}^{j/n} (lambda_j - Q(x))^2 dx, absolute error <= 1e-9.
double w2_squared_to_semicircle(const EmpiricalMeasure& mu);

struct W2Decomposition {
  double term1 = 0.0;  // (2/n) sum (lambda_j - gamma_j)^2
  double term2 = 0.0;  // (2/n) sum (gamma_j - gamma_{j-1})^2, gamma_0 = -2
  double bound = 0.0;  // term1 + term2, dominates W2^2
};

W2Decomposition w2_upper_bound_decomposition(const EmpiricalMeasure& mu,
                                             const laws::QuantileTable& gammas);

/// W1(mu, semicircle) = int_0^1 |F^{-1} - Q|; each interval is split at the
/// sign change of lambda_j - Q(x) when there is one.
double w1_to_semicircle(const EmpiricalMeasure& mu);

/// sup_x |F_n(x) - G(x)|, attained at the jump points.
double kolmogorov_to_semicircle(const EmpiricalMeasure& mu);

struct MeanStderr {
  double mean = 0.0;
  double stderr_ = 0.0;
};

/// Monte Carlo mean of W2^2 over spectra of the given ensemble; replicate r
/// uses child_seed(seed, r), the fast sampling path when the kind admits it.
MeanStderr expected_w2_experiment(const ensembles::EnsembleSpec& spec,
                                  int replicates, std::uint64_t seed,
                                  int workers = 1, bool fast = true);

}  // namespace rmtlab::transport
