#include "rmtlab/transport.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rmtlab/parallel.hpp"
#include "rmtlab/quadrature.hpp"
#include "rmtlab/rng.hpp"

namespace rmtlab::transport {

namespace {

// Panels for one quantile-moment integral: plain [alpha, beta] when the
// interval stays inside (0, 1); geometric grading (ratio 4, 12 levels)
// toward an endpoint that touches 0 or 1, where the quantile has an
// algebraic p^(2/3) kink.
void graded_panels(double alpha, double beta, std::vector<double>& pts) {
  constexpr int kLevels = 12;
  constexpr double kRatio = 0.25;
  pts.clear();
  const double width = beta - alpha;
  pts.push_back(alpha);
  if (alpha <= 0.0) {
    double w = width;
    for (int l = 0; l < kLevels; ++l) w *= kRatio;
    for (int l = 0; l < kLevels; ++l) {
      pts.push_back(alpha + w);
      w /= kRatio;
    }
  }
  if (beta >= 1.0) {
    double w = width * kRatio;
    std::vector<double> right;
    for (int l = 0; l < kLevels; ++l) {
      right.push_back(beta - w);
      w *= kRatio;
    }
    for (auto it = right.begin(); it != right.end(); ++it) {
      if (*it > pts.back()) pts.push_back(*it);
    }
  }
  pts.push_back(beta);
}

// int_alpha^beta f(Q(x)) dx with f supplied as a callable of the quantile.
template <typename F>
double quantile_integral(double alpha, double beta, F&& f) {
  if (!(beta > alpha)) return 0.0;
  static thread_local std::vector<double> pts;
  graded_panels(alpha, beta, pts);
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    acc += gl_integrate(
        [&](double x) { return f(laws::sc_quantile(x)); }, pts[i], pts[i + 1], 16);
  }
  return acc;
}

}  // namespace

EmpiricalMeasure EmpiricalMeasure::from_sorted(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("EmpiricalMeasure: empty support");
  if (!std::is_sorted(values.begin(), values.end())) {
    throw std::invalid_argument("EmpiricalMeasure: support must be ascending");
  }
  return EmpiricalMeasure{std::move(values)};
}

EmpiricalMeasure EmpiricalMeasure::from_unsorted(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("EmpiricalMeasure: empty support");
  std::sort(values.begin(), values.end());
  return EmpiricalMeasure{std::move(values)};
}

SemicircleQuantileGrid::SemicircleQuantileGrid(int n) {
  if (n < 1) throw std::invalid_argument("SemicircleQuantileGrid: n must be >= 1");
  n_ = n;
  a_.resize(n);
  b_.resize(n);
  for (int j = 1; j <= n; ++j) {
    const double alpha = static_cast<double>(j - 1) / n;
    const double beta = static_cast<double>(j) / n;
    a_[j - 1] = quantile_integral(alpha, beta, [](double q) { return q; });
    b_[j - 1] = quantile_integral(alpha, beta, [](double q) { return q * q; });
  }
}

double SemicircleQuantileGrid::w2_squared(std::span<const double> sorted_support) const {
  if (static_cast<int>(sorted_support.size()) != n_) {
    throw std::invalid_argument("SemicircleQuantileGrid: size mismatch");
  }
  const double h = 1.0 / n_;
  std::vector<double> terms(n_);
  for (int j = 0; j < n_; ++j) {
    const double lam = sorted_support[j];
    terms[j] = lam * lam * h - 2.0 * lam * a_[j] + b_[j];
  }
  return pairwise_sum(terms);
}

double w2_squared_to_semicircle(const EmpiricalMeasure& mu) {
  SemicircleQuantileGrid grid(mu.size());
  return grid.w2_squared(mu.support);
}

W2Decomposition w2_upper_bound_decomposition(const EmpiricalMeasure& mu,
                                             const laws::QuantileTable& gammas) {
  const int n = mu.size();
  if (gammas.n != n || static_cast<int>(gammas.values.size()) != n) {
    throw std::invalid_argument("w2_upper_bound_decomposition: size mismatch");
  }
  std::vector<double> dev(n), gaps(n);
  for (int j = 0; j < n; ++j) {
    const double d = mu.support[j] - gammas.values[j];
    dev[j] = d * d;
    const double prev = (j == 0) ? -2.0 : gammas.values[j - 1];
    const double g = gammas.values[j] - prev;
    gaps[j] = g * g;
  }
  W2Decomposition out;
  out.term1 = 2.0 / n * pairwise_sum(dev);
  out.term2 = 2.0 / n * pairwise_sum(gaps);
  out.bound = out.term1 + out.term2;
  return out;
}

double w1_to_semicircle(const EmpiricalMeasure& mu) {
  const int n = mu.size();
  double acc = 0.0;
  for (int j = 1; j <= n; ++j) {
    const double alpha = static_cast<double>(j - 1) / n;
    const double beta = static_cast<double>(j) / n;
    const double lam = mu.support[j - 1];
    // lambda - Q(x) changes sign at most once on the interval, at G(lambda).
    const double cross = laws::sc_cdf(lam);
    auto signed_piece = [&](double a, double b) {
      const double integral =
          lam * (b - a) - quantile_integral(a, b, [](double q) { return q; });
      return std::abs(integral);
    };
    if (cross > alpha && cross < beta) {
      acc += signed_piece(alpha, cross) + signed_piece(cross, beta);
    } else {
      acc += signed_piece(alpha, beta);
    }
  }
  return acc;
}

double kolmogorov_to_semicircle(const EmpiricalMeasure& mu) {
  const int n = mu.size();
  double sup = 0.0;
  for (int j = 1; j <= n; ++j) {
    const double g = laws::sc_cdf(mu.support[j - 1]);
    sup = std::max(sup, std::abs(static_cast<double>(j) / n - g));
    sup = std::max(sup, std::abs(static_cast<double>(j - 1) / n - g));
  }
  return sup;
}

MeanStderr expected_w2_experiment(const ensembles::EnsembleSpec& spec,
                                  int replicates, std::uint64_t seed,
                                  int workers, bool fast) {
  if (replicates < 2) throw std::invalid_argument("expected_w2_experiment: need R >= 2");
  const SemicircleQuantileGrid grid(spec.n);
  std::vector<double> values(replicates);
  parallel_for(replicates, workers, [&](std::size_t r) {
    const auto sample = ensembles::sample_spectrum(spec, child_seed(seed, r), fast);
    values[r] = grid.w2_squared(sample.eigenvalues);
  });
  const double mean = pairwise_sum(values) / replicates;
  std::vector<double> sq(replicates);
  for (int r = 0; r < replicates; ++r) {
    sq[r] = (values[r] - mean) * (values[r] - mean);
  }
  MeanStderr out;
  out.mean = mean;
  out.stderr_ = std::sqrt(pairwise_sum(sq) /
                          (static_cast<double>(replicates) * (replicates - 1)));
  return out;
}

}  // namespace rmtlab::transport
