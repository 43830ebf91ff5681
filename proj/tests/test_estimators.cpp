#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "rmtlab/counting.hpp"
#include "rmtlab/ensembles.hpp"
#include "rmtlab/estimators.hpp"
#include "rmtlab/laws.hpp"
#include "rmtlab/rng.hpp"
#include "rmtlab/stats.hpp"

using namespace rmtlab;
using ensembles::EnsembleSpec;
using estimators::Regime;
using estimators::RegimeSpec;

TEST_CASE("dimension-one statistics: unit variance Gaussian") {
  const auto st = estimators::estimate_eigenvalue_stats(EnsembleSpec::gue(1), 1,
                                                        30000, 4242, true, 2);
  CHECK(std::abs(st.variance - 1.0) <= 4.0 * st.variance_stderr);
  CHECK(st.msd >= st.variance - 1e-12);
}

TEST_CASE("bias decomposition identity") {
  for (std::uint64_t seed : {1ull, 77ull, 900ull}) {
    const auto st = estimators::estimate_eigenvalue_stats(EnsembleSpec::gue(32), 20,
                                                          400, seed, true, 2);
    const double recon = st.variance + (st.mean - st.target) * (st.mean - st.target);
    CHECK(std::abs(st.msd - recon) <= 1e-10 * std::max(1.0, std::abs(st.msd)));
    CHECK(st.msd >= st.variance - 1e-12);
    CHECK(st.mean_stderr > 0.0);
    CHECK(st.variance_stderr > 0.0);
    CHECK(st.msd_stderr > 0.0);
  }
}

TEST_CASE("independent master seeds agree within error bars") {
  const auto a = estimators::estimate_eigenvalue_stats(EnsembleSpec::gue(64), 32,
                                                       1500, 1111, true, 2);
  const auto b = estimators::estimate_eigenvalue_stats(EnsembleSpec::gue(64), 32,
                                                       1500, 2222, true, 2);
  const double pooled = std::hypot(a.msd_stderr, b.msd_stderr);
  CHECK(std::abs(a.msd - b.msd) <= 4.0 * pooled);
}

TEST_CASE("worker-count independence is bit exact") {
  const auto a = estimators::estimate_eigenvalue_stats(EnsembleSpec::goe(48), 24,
                                                       600, 5, true, 1);
  const auto b = estimators::estimate_eigenvalue_stats(EnsembleSpec::goe(48), 24,
                                                       600, 5, true, 2);
  CHECK(a.mean == b.mean);
  CHECK(a.variance == b.variance);
  CHECK(a.msd == b.msd);
  CHECK(a.mean_stderr == b.mean_stderr);
  CHECK(a.variance_stderr == b.variance_stderr);
  CHECK(a.msd_stderr == b.msd_stderr);
}

TEST_CASE("covariance targets use the Marchenko-Pastur quantiles") {
  const auto st = estimators::estimate_eigenvalue_stats(EnsembleSpec::lue(32, 64),
                                                        32, 200, 9, true, 2);
  const auto [a_edge, b_edge] = laws::mp_edges(64, 32);
  CHECK(st.target == doctest::Approx(b_edge).epsilon(1e-9));
}

TEST_CASE("scaling fits on synthetic data") {
  SUBCASE("exact power law") {
    std::vector<std::pair<double, double>> pts;
    for (double n : {64.0, 128.0, 256.0}) pts.emplace_back(n, 1.0 / (n * n));
    const auto fit = estimators::fit_power_law(pts);
    CHECK(std::abs(fit.slope + 2.0) <= 1e-12);
    CHECK(fit.r2 == doctest::Approx(1.0));
  }
  SUBCASE("exact log-corrected law recovers a unit prefactor") {
    std::vector<std::pair<double, double>> pts;
    for (double n : {64.0, 128.0, 256.0, 512.0}) {
      pts.emplace_back(n, std::log(n) / (n * n));
    }
    const auto fit = estimators::fit_power_with_log(pts);
    CHECK(std::abs(fit.prefactor - 1.0) <= 1e-10);
  }
  SUBCASE("short grids are refused") {
    std::vector<std::pair<double, double>> pts = {{64.0, 1.0}, {128.0, 0.5}};
    CHECK_THROWS_AS(estimators::fit_power_law(pts), std::invalid_argument);
  }
}

TEST_CASE("regime index policies") {
  RegimeSpec bulk{Regime::Bulk, 0.5, 30.0};
  CHECK(bulk.default_index(101) == 51);
  CHECK(bulk.index_in_window(100, 50));
  CHECK_FALSE(bulk.index_in_window(100, 2));
  RegimeSpec edge{Regime::Edge, 0.5, 30.0};
  CHECK(edge.default_index(100) == 100);
  RegimeSpec inter{Regime::Intermediate, 0.5, 30.0};
  CHECK(inter.default_index(256) == 224);
  CHECK(inter.default_index(1024) == 960);
  // the strict window needs min(j, n-j) >= k log n, violated at desk scale
  CHECK_FALSE(inter.index_in_window(256, 224));
  RegimeSpec bad{Regime::Bulk, 0.0, 30.0};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("variance scan runs and is deterministic") {
  const std::vector<int> grid = {24, 32, 48};
  RegimeSpec regime{Regime::Bulk, 0.5, 30.0};
  auto spec_for_n = [](int n) { return EnsembleSpec::gue(n); };
  const auto a = estimators::variance_scan(spec_for_n, grid, regime, 300, 77, true, 1);
  const auto b = estimators::variance_scan(spec_for_n, grid, regime, 300, 77, true, 2);
  REQUIRE(a.stats.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(a.stats[i].variance == b.stats[i].variance);
    CHECK(a.ratios[i] == b.ratios[i]);
    CHECK(a.ratios[i] > 0.0);
  }
  CHECK(a.fit.slope == b.fit.slope);
  CHECK(a.fit.slope < -1.0);
  CHECK(a.fit.slope > -3.0);
  CHECK(a.ratio_max_over_min >= 1.0);

  CHECK_THROWS_AS(
      estimators::variance_scan(spec_for_n, {24, 32}, regime, 100, 1, true, 1),
      std::invalid_argument);
}

TEST_CASE("universality gap vanishes for identical inputs") {
  const auto spec = EnsembleSpec::gue(24);
  const auto g = estimators::universality_gap(spec, spec, 12, 200, 5, true, true, 2);
  CHECK(g.gap == 0.0);
  CHECK(g.msd_a == g.msd_b);
  CHECK(g.pooled_stderr > 0.0);
}

TEST_CASE("matched ensembles agree; the orthogonal ensemble does not") {
  const int n = 64, j = 32, reps = 1200;
  const auto gue = EnsembleSpec::gue(n);
  SUBCASE("four-moment matched complex ensemble") {
    const auto g = estimators::universality_gap(
        gue, EnsembleSpec::wigner_complex_matched(n), j, reps, 31337, false, false, 2);
    CHECK(std::abs(g.gap) <= 3.0 * g.pooled_stderr);
  }
  SUBCASE("orthogonal ensemble has visibly larger fluctuations") {
    const auto g = estimators::universality_gap(gue, EnsembleSpec::goe(n), j, reps,
                                                31337, false, false, 2);
    CHECK(g.gap > 2.0 * g.pooled_stderr);
  }
}

TEST_CASE("interlacing mean check") {
  SUBCASE("saturated thresholds give exact zero") {
    const auto lo = estimators::interlacing_mean_check(16, -10.0, 60, 3, 2);
    CHECK(lo.delta == 0.0);
    CHECK(lo.mean_gue == 0.0);
    const auto hi = estimators::interlacing_mean_check(16, 10.0, 60, 3, 2);
    CHECK(hi.delta == 0.0);
    CHECK(hi.mean_gue == 16.0);
  }
  SUBCASE("center threshold stays within the bounded correction") {
    const auto res = estimators::interlacing_mean_check(32, 0.0, 2000, 11, 2);
    CHECK(res.delta <= 1.0 + 3.0 * res.stderr_);
    REQUIRE(res.counts_gue.size() == 2000);
  }
}

TEST_CASE("standardized bulk deviations") {
  const auto spec = EnsembleSpec::gue(256);
  const auto s = estimators::standardized_bulk_deviations(spec, 128, 800, 99, true, 2);
  REQUIRE(s.values.size() == 800);
  // centering at the j/n quantile leaves the half-spacing offset
  // -pi / sqrt(2 log n) (order statistics sit at the midpoint quantiles)
  const double predicted = -std::numbers::pi / std::sqrt(2.0 * std::log(256.0));
  CHECK(std::abs(s.mean - predicted) <= 0.25);
  CHECK(s.variance > 0.5);
  CHECK(s.variance < 2.0);
  CHECK(s.ks_vs_normal <= 0.5);
  // the formula itself: a value at the target standardizes to zero
  const double gamma = laws::sc_quantile(0.5);
  const double scale = std::sqrt(2.0 * std::log(256.0) / ((4.0 - gamma * gamma) * 256.0 * 256.0));
  CHECK((gamma - gamma) / scale == 0.0);

  CHECK_THROWS_AS(
      estimators::standardized_bulk_deviations(spec, 256, 100, 1, true, 1),
      std::invalid_argument);  // edge index rejected
}

TEST_CASE("bulk constant calibration produces a valid deviation bound") {
  const int n = 64, j = 32;
  const counting::KernelModel model(n);
  const std::vector<double> us = {6.0, 8.0};
  const auto cal = estimators::calibrate_bulk_constants(model, j, us);
  CHECK(cal.big_c > 0.0);
  CHECK(cal.c1 < 1.0);
  CHECK(cal.c_delta > 0.0);
  CHECK(cal.c_delta < 1.0);

  const auto spec = EnsembleSpec::gue(n);
  const double gamma = laws::sc_quantile(0.5);
  const int reps = 4000;
  std::vector<double> lam(reps);
  for (int r = 0; r < reps; ++r) {
    lam[r] = ensembles::sample_spectrum(spec, child_seed(515, r), true)
                 .eigenvalues[j - 1];
  }
  for (double u : us) {
    int hits = 0;
    for (double v : lam) {
      if (std::abs(v - gamma) >= u / n) ++hits;
    }
    const double bound = counting::eigenvalue_deviation_bound_bulk(n, u, cal.big_c,
                                                                   cal.c_delta);
    CHECK(stats::wilson_upper(hits, reps) <= bound);
  }
}
