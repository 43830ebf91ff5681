#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "rmtlab/ensembles.hpp"
#include "rmtlab/rng.hpp"
#include "rmtlab/stats.hpp"

using namespace rmtlab;
using ensembles::EnsembleSpec;
using ensembles::EntryDistribution;
using ensembles::EntryKind;

TEST_CASE("entry moments: Gaussian halves and the matched three-point law") {
  const auto gauss = ensembles::entry_moments(
      EntryDistribution::make(EntryKind::GaussianComplexHalves));
  CHECK(gauss.m1 == 0.0);
  CHECK(gauss.m2 == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(gauss.m3 == 0.0);
  CHECK(gauss.m4 == doctest::Approx(0.75).epsilon(1e-15));

  // finite sum over the atoms, done by hand: (1/6 + 1/6) a^k
  const double a = std::sqrt(1.5);
  const auto tp = ensembles::entry_moments(
      EntryDistribution::make(EntryKind::ThreePointComplexHalves));
  CHECK(std::abs(tp.m1 - 0.0) < 1e-15);
  CHECK(std::abs(tp.m2 - a * a / 3.0) < 1e-15);
  CHECK(std::abs(tp.m3 - 0.0) < 1e-15);
  CHECK(std::abs(tp.m4 - a * a * a * a / 3.0) < 1e-15);

  // four-moment match between the Gaussian and three-point laws
  CHECK(std::abs(gauss.m1 - tp.m1) < 1e-14);
  CHECK(std::abs(gauss.m2 - tp.m2) < 1e-14);
  CHECK(std::abs(gauss.m3 - tp.m3) < 1e-14);
  CHECK(std::abs(gauss.m4 - tp.m4) < 1e-14);
}

TEST_CASE("entry moments: real matched laws") {
  const auto unit = ensembles::entry_moments(
      EntryDistribution::make(EntryKind::GaussianRealUnit));
  const auto tp_unit = ensembles::entry_moments(
      EntryDistribution::make(EntryKind::ThreePointRealUnit));
  CHECK(std::abs(unit.m2 - tp_unit.m2) < 1e-14);
  CHECK(std::abs(unit.m4 - tp_unit.m4) < 1e-14);  // both 3

  const auto var2 = ensembles::entry_moments(
      EntryDistribution::make(EntryKind::GaussianRealVar2));
  const auto tp_var2 = ensembles::entry_moments(
      EntryDistribution::make(EntryKind::ThreePointRealVar2));
  CHECK(std::abs(var2.m2 - tp_var2.m2) < 1e-14);  // order-2 match for diagonals

  const auto rad = ensembles::entry_moments(
      EntryDistribution::make(EntryKind::RademacherReal));
  CHECK(rad.m1 == 0.0);
  CHECK(rad.m2 == doctest::Approx(1.0));
  CHECK(rad.m3 == 0.0);
  CHECK(rad.m4 == doctest::Approx(1.0));
}

TEST_CASE("sampled matrices have exact symmetry") {
  const auto gue = ensembles::sample_matrix(EnsembleSpec::gue(2), 5);
  CHECK(gue.re[1] == gue.re[2]);
  CHECK(gue.im[1] == -gue.im[2]);
  CHECK(gue.im[0] == 0.0);
  CHECK(gue.im[3] == 0.0);

  const auto goe = ensembles::sample_matrix(EnsembleSpec::goe(3), 9);
  CHECK(goe.im.empty());
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      CHECK(goe.re[i * 3 + j] == goe.re[j * 3 + i]);
    }
  }
}

TEST_CASE("LUE draws are positive semidefinite") {
  const auto s = ensembles::sample_matrix(EnsembleSpec::lue(2, 4), 77);
  const auto eig = ensembles::matrix_eigenvalues(s);
  for (double v : eig) CHECK(v >= -1e-10);
}

TEST_CASE("determinism: fixed seed reproduces the sample") {
  for (auto spec : {EnsembleSpec::gue(6), EnsembleSpec::goe(6),
                    EnsembleSpec::wigner_complex_matched(6), EnsembleSpec::lue(4, 8)}) {
    const auto a = ensembles::sample_spectrum(spec, 1234, false);
    const auto b = ensembles::sample_spectrum(spec, 1234, false);
    REQUIRE(a.eigenvalues.size() == b.eigenvalues.size());
    for (std::size_t i = 0; i < a.eigenvalues.size(); ++i) {
      CHECK(a.eigenvalues[i] == b.eigenvalues[i]);
    }
  }
  const auto f1 = ensembles::sample_spectrum(EnsembleSpec::gue(32), 7, true);
  const auto f2 = ensembles::sample_spectrum(EnsembleSpec::gue(32), 7, true);
  for (std::size_t i = 0; i < f1.eigenvalues.size(); ++i) {
    CHECK(f1.eigenvalues[i] == f2.eigenvalues[i]);
  }
}

TEST_CASE("dense-path spectra preserve the first two trace moments") {
  for (auto spec : {EnsembleSpec::gue(8), EnsembleSpec::goe(8),
                    EnsembleSpec::wigner_real_matched(8), EnsembleSpec::lue(8, 16)}) {
    const auto w = ensembles::sample_matrix(spec, 99);
    const auto eig = ensembles::matrix_eigenvalues(w);
    const double sum1 = std::accumulate(eig.begin(), eig.end(), 0.0);
    double sum2 = 0.0;
    for (double v : eig) sum2 += v * v;
    CHECK(std::abs(sum1 - w.trace()) <= 1e-8 * spec.n);
    CHECK(std::abs(sum2 - w.trace_square()) <= 1e-7 * spec.n);
  }
}

TEST_CASE("GUE at dimension one is a standard Gaussian") {
  const auto spec = EnsembleSpec::gue(1);
  const int reps = 100000;
  std::vector<double> values(reps);
  for (int r = 0; r < reps; ++r) {
    values[r] = ensembles::sample_spectrum(spec, child_seed(42, r), false)
                    .eigenvalues[0];
  }
  const double mean = stats::mean(values);
  const double var = stats::population_variance(values, mean);
  CHECK(var > 0.97);
  CHECK(var < 1.03);
}

TEST_CASE("fast path agrees in law with the dense path") {
  const int reps = 2000;
  SUBCASE("GUE n=64, largest and median eigenvalue") {
    const auto spec = EnsembleSpec::gue(64);
    std::vector<double> dense_max(reps), fast_max(reps), dense_mid(reps), fast_mid(reps);
    for (int r = 0; r < reps; ++r) {
      const auto d = ensembles::sample_spectrum(spec, child_seed(1000, r), false);
      const auto f = ensembles::sample_spectrum(spec, child_seed(2000, r), true);
      dense_max[r] = d.eigenvalues[63];
      fast_max[r] = f.eigenvalues[63];
      dense_mid[r] = d.eigenvalues[31];
      fast_mid[r] = f.eigenvalues[31];
    }
    CHECK(stats::ks_two_sample(dense_max, fast_max) <= 0.05);
    CHECK(stats::ks_two_sample(dense_mid, fast_mid) <= 0.05);
  }
  SUBCASE("GOE n=48") {
    const auto spec = EnsembleSpec::goe(48);
    std::vector<double> dense(reps), fast(reps);
    for (int r = 0; r < reps; ++r) {
      dense[r] = ensembles::sample_spectrum(spec, child_seed(3000, r), false)
                     .eigenvalues[47];
      fast[r] = ensembles::sample_spectrum(spec, child_seed(4000, r), true)
                    .eigenvalues[47];
    }
    CHECK(stats::ks_two_sample(dense, fast) <= 0.06);
  }
  SUBCASE("LUE n=32, m=64") {
    const auto spec = EnsembleSpec::lue(32, 64);
    std::vector<double> dense(reps), fast(reps);
    for (int r = 0; r < reps; ++r) {
      dense[r] = ensembles::sample_spectrum(spec, child_seed(5000, r), false)
                     .eigenvalues[31];
      fast[r] = ensembles::sample_spectrum(spec, child_seed(6000, r), true)
                    .eigenvalues[31];
    }
    CHECK(stats::ks_two_sample(dense, fast) <= 0.06);
  }
  SUBCASE("LOE n=32, m=64, smallest eigenvalue") {
    const auto spec = EnsembleSpec::loe(32, 64);
    std::vector<double> dense(reps), fast(reps);
    for (int r = 0; r < reps; ++r) {
      dense[r] = ensembles::sample_spectrum(spec, child_seed(7000, r), false)
                     .eigenvalues[0];
      fast[r] = ensembles::sample_spectrum(spec, child_seed(8000, r), true)
                    .eigenvalues[0];
    }
    CHECK(stats::ks_two_sample(dense, fast) <= 0.06);
  }
}

TEST_CASE("fast path refuses matched kinds") {
  CHECK_THROWS_AS(
      ensembles::sample_spectrum(EnsembleSpec::wigner_complex_matched(8), 1, true),
      std::invalid_argument);
  CHECK_THROWS_AS(
      ensembles::sample_spectrum(EnsembleSpec::covariance_matched(4, 8), 1, true),
      std::invalid_argument);
}

TEST_CASE("covariance specs require m >= n") {
  CHECK_THROWS_AS(EnsembleSpec::lue(8, 4), std::invalid_argument);
}

TEST_CASE("trace power means") {
  SUBCASE("dimension one, fourth power: mean 3") {
    const auto r = ensembles::trace_power_mean(EnsembleSpec::gue(1), 4, 100000, 7, 2);
    CHECK(std::abs(r.mean - 3.0) <= 4.0 * r.stderr_);
  }
  SUBCASE("n = 8, fourth power: mean 2n + 1/n") {
    const auto r = ensembles::trace_power_mean(EnsembleSpec::gue(8), 4, 10000, 11, 2);
    CHECK(std::abs(r.mean - 16.125) <= 4.0 * r.stderr_);
  }
  SUBCASE("second power equals the direct entry-sum oracle on the same seeds") {
    const auto spec = EnsembleSpec::gue(8);
    const int reps = 2000;
    const auto r = ensembles::trace_power_mean(spec, 2, reps, 13, 1);
    double acc = 0.0;
    for (int i = 0; i < reps; ++i) {
      const auto w = ensembles::sample_matrix(spec, child_seed(13, i));
      double t = 0.0;
      for (double v : w.re) t += v * v;
      for (double v : w.im) t += v * v;
      acc += t;
    }
    CHECK(std::abs(r.mean - acc / reps) < 1e-10);
  }
  SUBCASE("preconditions") {
    CHECK_THROWS_AS(ensembles::trace_power_mean(EnsembleSpec::gue(2), 3, 100, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(ensembles::trace_power_mean(EnsembleSpec::gue(2), 4, 1, 1),
                    std::invalid_argument);
  }
}

TEST_CASE("worker-count independence of trace means") {
  const auto spec = EnsembleSpec::goe(16);
  const auto a = ensembles::trace_power_mean(spec, 4, 500, 3, 1);
  const auto b = ensembles::trace_power_mean(spec, 4, 500, 3, 2);
  CHECK(a.mean == b.mean);
  CHECK(a.stderr_ == b.stderr_);
}
