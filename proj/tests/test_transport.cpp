#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "oracles.hpp"
#include "rmtlab/ensembles.hpp"
#include "rmtlab/laws.hpp"
#include "rmtlab/rng.hpp"
#include "rmtlab/transport.hpp"

using namespace rmtlab;
using transport::EmpiricalMeasure;

namespace {

// Independent route: substitute x = G(y) in each quantile-coupling interval,
// so the W2^2 piece becomes an integral of (lambda - y)^2 against the
// semicircle density between consecutive gamma values.
double w2_oracle(const std::vector<double>& sorted, double tol = 1e-12) {
  const int n = static_cast<int>(sorted.size());
  double acc = 0.0;
  for (int j = 1; j <= n; ++j) {
    const double ylo = laws::sc_quantile(static_cast<double>(j - 1) / n);
    const double yhi = laws::sc_quantile(static_cast<double>(j) / n);
    const double lam = sorted[j - 1];
    acc += oracles::adaptive_simpson(
        [&](double y) {
          return (lam - y) * (lam - y) * laws::sc_density(y);
        },
        ylo, yhi, tol);
  }
  return acc;
}

}  // namespace

TEST_CASE("point mass at zero: second moment of the semicircle") {
  const double w2 = transport::w2_squared_to_semicircle(
      EmpiricalMeasure::from_sorted({0.0}));
  CHECK(std::abs(w2 - 1.0) <= 1e-8);
}

TEST_CASE("step quantile against itself vanishes") {
  // two empirical measures with the same support have identical step
  // quantile functions, so the coupling integral is exactly zero
  const std::vector<double> support = {-1.0, 0.25, 2.0};
  double acc = 0.0;
  for (std::size_t j = 0; j < support.size(); ++j) {
    const double d = support[j] - support[j];
    acc += d * d / support.size();
  }
  CHECK(acc == 0.0);
}

TEST_CASE("two-point measure matches the quadrature oracle") {
  const double a = 8.0 / (3.0 * std::numbers::pi);
  const double w2 = transport::w2_squared_to_semicircle(
      EmpiricalMeasure::from_sorted({-a, a}));
  CHECK(std::abs(w2 - w2_oracle({-a, a})) <= 1e-8);
}

TEST_CASE("random supports match the quadrature oracle") {
  Rng rng(808);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + static_cast<int>(rng.uniform01() * 8);
    std::vector<double> support(n);
    for (double& v : support) v = 6.0 * rng.uniform01() - 3.0;
    const auto mu = EmpiricalMeasure::from_unsorted(std::move(support));
    const double w2 = transport::w2_squared_to_semicircle(mu);
    CHECK(std::abs(w2 - w2_oracle(mu.support)) <= 1e-8);
    CHECK(w2 >= 0.0);
  }
}

TEST_CASE("decomposition bound") {
  SUBCASE("gamma table itself: first term vanishes") {
    const auto gam = laws::gamma_table(16);
    const auto mu = EmpiricalMeasure::from_sorted(gam.values);
    const auto d = transport::w2_upper_bound_decomposition(mu, gam);
    CHECK(d.term1 == 0.0);
    CHECK(d.bound == d.term2);
    CHECK(transport::w2_squared_to_semicircle(mu) <= d.bound + 1e-9);
  }
  SUBCASE("dimension one plug-in") {
    const auto gam = laws::gamma_table(1);
    const auto mu = EmpiricalMeasure::from_sorted({0.0});
    const auto d = transport::w2_upper_bound_decomposition(mu, gam);
    CHECK(d.term1 == doctest::Approx(8.0).epsilon(1e-12));   // 2 * (0 - 2)^2
    CHECK(d.term2 == doctest::Approx(32.0).epsilon(1e-12));  // 2 * (2 - (-2))^2
    CHECK(d.bound == doctest::Approx(40.0).epsilon(1e-12));
    CHECK(transport::w2_squared_to_semicircle(mu) <= d.bound);
  }
  SUBCASE("holds on sampled spectra") {
    const auto spec = ensembles::EnsembleSpec::gue(64);
    const auto gam = laws::gamma_table(64);
    const transport::SemicircleQuantileGrid grid(64);
    for (int r = 0; r < 40; ++r) {
      const auto s = ensembles::sample_spectrum(spec, child_seed(22, r), true);
      const auto mu = EmpiricalMeasure::from_sorted(s.eigenvalues);
      const auto d = transport::w2_upper_bound_decomposition(mu, gam);
      CHECK(grid.w2_squared(mu.support) <= d.bound + 1e-9);
    }
  }
  SUBCASE("size mismatch throws") {
    const auto gam = laws::gamma_table(4);
    const auto mu = EmpiricalMeasure::from_sorted({0.0});
    CHECK_THROWS_AS(transport::w2_upper_bound_decomposition(mu, gam),
                    std::invalid_argument);
  }
}

TEST_CASE("Kantorovich-Rubinstein distance") {
  SUBCASE("point mass at zero: mean absolute value of the semicircle") {
    const double w1 = transport::w1_to_semicircle(EmpiricalMeasure::from_sorted({0.0}));
    CHECK(std::abs(w1 - 8.0 / (3.0 * std::numbers::pi)) <= 1e-8);
  }
  SUBCASE("oracle agreement with interior kinks") {
    Rng rng(313);
    for (int trial = 0; trial < 10; ++trial) {
      const int n = 1 + static_cast<int>(rng.uniform01() * 6);
      std::vector<double> support(n);
      for (double& v : support) v = 5.0 * rng.uniform01() - 2.5;
      const auto mu = EmpiricalMeasure::from_unsorted(std::move(support));
      double oracle = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double ylo = laws::sc_quantile(static_cast<double>(j - 1) / n);
        const double yhi = laws::sc_quantile(static_cast<double>(j) / n);
        const double lam = mu.support[j - 1];
        oracle += oracles::adaptive_simpson(
            [&](double y) { return std::abs(lam - y) * laws::sc_density(y); },
            ylo, yhi, 1e-12);
      }
      CHECK(std::abs(transport::w1_to_semicircle(mu) - oracle) <= 1e-7);
    }
  }
  SUBCASE("dominated by the quadratic distance") {
    const auto spec = ensembles::EnsembleSpec::gue(32);
    for (int r = 0; r < 20; ++r) {
      const auto s = ensembles::sample_spectrum(spec, child_seed(99, r), true);
      const auto mu = EmpiricalMeasure::from_sorted(s.eigenvalues);
      const double w1 = transport::w1_to_semicircle(mu);
      const double w2 = std::sqrt(transport::w2_squared_to_semicircle(mu));
      CHECK(w1 <= w2 + 1e-12);
    }
  }
}

TEST_CASE("Kolmogorov distance") {
  CHECK(transport::kolmogorov_to_semicircle(EmpiricalMeasure::from_sorted({0.0})) ==
        doctest::Approx(0.5).epsilon(1e-12));
  for (int n : {2, 16, 256}) {
    const auto gam = laws::gamma_table(n);
    const double dk = transport::kolmogorov_to_semicircle(
        EmpiricalMeasure::from_sorted(gam.values));
    CHECK(std::abs(dk - 1.0 / n) <= 1e-9);
  }
  Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 1 + static_cast<int>(rng.uniform01() * 32);
    std::vector<double> support(n);
    for (double& v : support) v = 6.0 * rng.uniform01() - 3.0;
    const double dk = transport::kolmogorov_to_semicircle(
        EmpiricalMeasure::from_unsorted(std::move(support)));
    CHECK(dk >= 1.0 / (2.0 * n));
    CHECK(dk <= 1.0);
  }
}

TEST_CASE("expected W2^2 experiment is reproducible and bound-consistent") {
  const auto spec = ensembles::EnsembleSpec::gue(32);
  const auto a = transport::expected_w2_experiment(spec, 200, 77, 2, true);
  const auto b = transport::expected_w2_experiment(spec, 200, 77, 1, true);
  CHECK(a.mean == b.mean);
  CHECK(a.stderr_ == b.stderr_);
  CHECK(a.mean > 0.0);
  CHECK(a.stderr_ > 0.0);
}

TEST_CASE("empirical measure validation") {
  CHECK_THROWS_AS(EmpiricalMeasure::from_sorted({}), std::invalid_argument);
  CHECK_THROWS_AS(EmpiricalMeasure::from_sorted({1.0, 0.0}), std::invalid_argument);
}
