#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "rmtlab/counting.hpp"
#include "rmtlab/ensembles.hpp"

namespace rmtlab::estimators {

enum class Regime { Bulk, Edge, Intermediate };

Regime regime_from_name(const std::string& name);
std::string regime_name(Regime r);

/// Index-range policy for the three fluctuation regimes. `eta` is the bulk
/// fraction, `k_cut` the intermediate cutoff multiplier (the asymptotic
/// statements need k_cut > 20 sqrt(2); desk-scale scans use smaller values
/// and report whether the strict window held).
struct RegimeSpec {
  Regime regime = Regime::Bulk;
  double eta = 0.5;
  double k_cut = 30.0;

  void validate() const;
  /// Default index for a given dimension: bulk -> ceil(n/2), edge -> n,
  /// intermediate -> n - ceil(2 sqrt(n)).
  int default_index(int n) const;
  /// Whether (n, j) sits in the regime's strict window.
  bool index_in_window(int n, int j) const;
};

struct EigenvalueStats {
  ensembles::EnsembleSpec spec;
  int j = 0;
  int replicates = 0;
  std::uint64_t seed = 0;
  double target = 0.0;    // theoretical location gamma_j (semicircle or MP)
  double mean = 0.0;
  double variance = 0.0;  // population variance across replicates
  double msd = 0.0;       // mean of (lambda_j - target)^2
  double mean_stderr = 0.0;
  double variance_stderr = 0.0;
  double msd_stderr = 0.0;
};

/// Draw `replicates` spectra (replicate r from child_seed(seed, r)), record
/// eigenvalue j, and summarize with bootstrap standard errors (1000
/// resamples). Results are bit-identical for fixed inputs regardless of the
/// worker count.
EigenvalueStats estimate_eigenvalue_stats(const ensembles::EnsembleSpec& spec,
                                          int j, int replicates,
                                          std::uint64_t seed, bool fast = true,
                                          int workers = 1);

struct ScalingFit {
  enum class Model { PurePower, PowerWithLog };
  Model model = Model::PurePower;
  std::vector<std::pair<double, double>> points;  // (n, value)
  double slope = 0.0;      // log-log OLS slope
  double intercept = 0.0;  // log-log OLS intercept
  double r2 = 0.0;
  std::vector<double> residuals;  // log-log residuals
  double prefactor = 0.0;  // PowerWithLog: mean of value * n^2 / log n
};

/// Log-log least squares; throws if fewer than 3 points or nonpositive values.
ScalingFit fit_power_law(const std::vector<std::pair<double, double>>& points);

/// Constancy fit of value / (log n / n^2); same point-count requirement.
ScalingFit fit_power_with_log(const std::vector<std::pair<double, double>>& points);

struct ScanResult {
  std::vector<EigenvalueStats> stats;
  ScalingFit fit;               // pure-power fit of the variances
  std::vector<double> ratios;   // regime-scaled variances, one per n
  double ratio_max_over_min = 0.0;
  bool strict_window = true;    // every (n, j) inside the regime window
};

/// Variance scan over a dimension grid. `spec_for_n` builds the ensemble at
/// each dimension; `index_for_n` may override the regime's default index.
/// The per-n ratio is Var * n^2 / log n (bulk), Var * n^(4/3) (edge), or
/// Var * n^(4/3) (n-j)^(2/3) / log(n-j) (intermediate).
ScanResult variance_scan(
    const std::function<ensembles::EnsembleSpec(int)>& spec_for_n,
    const std::vector<int>& grid, const RegimeSpec& regime, int replicates,
    std::uint64_t seed, bool fast = true, int workers = 1,
    const std::function<int(int)>& index_for_n = nullptr);

struct GapResult {
  double gap = 0.0;  // msd(spec_b) - msd(spec_a)
  double pooled_stderr = 0.0;
  double msd_a = 0.0;
  double msd_b = 0.0;
};

/// Difference of E[(lambda_j - gamma_j)^2] between two same-dimension
/// ensembles, both runs keyed by the same master seed.
GapResult universality_gap(const ensembles::EnsembleSpec& spec_a,
                           const ensembles::EnsembleSpec& spec_b, int j,
                           int replicates, std::uint64_t seed,
                           bool fast_a = false, bool fast_b = false,
                           int workers = 1);

struct InterlaceResult {
  double delta = 0.0;   // |mean_unitary - mean of the two-orthogonal average|
  double stderr_ = 0.0;
  double mean_gue = 0.0;
  double mean_goe_avg = 0.0;
  std::vector<int> counts_gue;    // per-replicate raw counts
  std::vector<int> counts_goe_a;
  std::vector<int> counts_goe_b;
};

/// Counting-function mean identity check: draws independent GUE, GOE, GOE'
/// spectra per replicate and compares E[N_t] of the unitary ensemble with the
/// average of the two orthogonal ones. The interlacing correction is bounded
/// by 1, so delta <= 1 + noise.
InterlaceResult interlacing_mean_check(int n, double t, int replicates,
                                       std::uint64_t seed, int workers = 1);

struct StandardizedSample {
  std::vector<double> values;
  double mean = 0.0;
  double variance = 0.0;  // population variance
  double ks_vs_normal = 0.0;
};

/// Bulk-eigenvalue deviations standardized by sqrt(2 log n / ((4 - gamma^2)
/// n^2)); asymptotically standard normal for bulk indices.
StandardizedSample standardized_bulk_deviations(const ensembles::EnsembleSpec& spec,
                                                int j, int replicates,
                                                std::uint64_t seed,
                                                bool fast = true, int workers = 1);

struct BulkCalibration {
  double big_c = 0.0;    // slope constant of the deviation bound
  double c1 = 0.0;       // kernel-mean offset sup |E N_t - n G(t)|
  double c_delta = 0.0;  // counting-variance growth constant sigma^2 / log n
};

/// Pilot calibration of the bulk deviation-bound constants from the kernel
/// model at dimension n: c1 from the mean offset over a bulk grid, c_delta
/// from the counting variance near gamma_j, and the slope constant from the
/// exact semicircle mass increments at the deviations u/n that will be
/// tested. Throws if some u is too small for a positive slope.
BulkCalibration calibrate_bulk_constants(const counting::KernelModel& model,
                                         int j, const std::vector<double>& u_values);

}  // namespace rmtlab::estimators
