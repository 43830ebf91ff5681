#include "rmtlab/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "rmtlab/laws.hpp"
#include "rmtlab/parallel.hpp"
#include "rmtlab/quadrature.hpp"
#include "rmtlab/rng.hpp"
#include "rmtlab/stats.hpp"

namespace rmtlab::estimators {

namespace {

constexpr int kBootstrapResamples = 1000;
constexpr std::uint64_t kBootstrapTag = 0xB007577A9ull;

double theoretical_location(const ensembles::EnsembleSpec& spec, int j) {
  const double p = static_cast<double>(j) / spec.n;
  if (!spec.is_covariance()) return laws::sc_quantile(p);
  const laws::MarchenkoPasturLaw law = laws::MarchenkoPasturLaw::from_counts(spec.m, spec.n);
  return law.quantile(p);
}

std::vector<double> collect_eigenvalue(const ensembles::EnsembleSpec& spec, int j,
                                       int replicates, std::uint64_t seed,
                                       bool fast, int workers) {
  std::vector<double> values(replicates);
  parallel_for(replicates, workers, [&](std::size_t r) {
    const auto sample = ensembles::sample_spectrum(spec, child_seed(seed, r), fast);
    values[r] = sample.eigenvalues[j - 1];
  });
  return values;
}

int count_at_most(const std::vector<double>& sorted, double t) {
  return static_cast<int>(std::upper_bound(sorted.begin(), sorted.end(), t) -
                          sorted.begin());
}

}  // namespace

Regime regime_from_name(const std::string& name) {
  if (name == "bulk") return Regime::Bulk;
  if (name == "edge") return Regime::Edge;
  if (name == "intermediate") return Regime::Intermediate;
  throw std::invalid_argument("unknown regime: " + name);
}

std::string regime_name(Regime r) {
  switch (r) {
    case Regime::Bulk: return "bulk";
    case Regime::Edge: return "edge";
    case Regime::Intermediate: return "intermediate";
  }
  return "unknown";
}

void RegimeSpec::validate() const {
  if (!(eta > 0.0 && eta <= 0.5)) {
    throw std::invalid_argument("RegimeSpec: eta must lie in (0, 1/2]");
  }
  if (!(k_cut > 0.0)) throw std::invalid_argument("RegimeSpec: k_cut must be > 0");
}

int RegimeSpec::default_index(int n) const {
  switch (regime) {
    case Regime::Bulk:
      return (n + 1) / 2;
    case Regime::Edge:
      return n;
    case Regime::Intermediate: {
      const int gap = static_cast<int>(std::ceil(2.0 * std::sqrt(static_cast<double>(n))));
      return std::max(1, n - gap);
    }
  }
  return n;
}

bool RegimeSpec::index_in_window(int n, int j) const {
  if (j < 1 || j > n) return false;
  switch (regime) {
    case Regime::Bulk:
      return j >= eta * n && j <= (1.0 - eta) * n;
    case Regime::Edge:
      return j == 1 || j == n;
    case Regime::Intermediate: {
      const double rank = static_cast<double>(std::min(j, n - j));
      return rank >= k_cut * std::log(static_cast<double>(n)) && rank <= eta * n;
    }
  }
  return false;
}

EigenvalueStats estimate_eigenvalue_stats(const ensembles::EnsembleSpec& spec,
                                          int j, int replicates,
                                          std::uint64_t seed, bool fast,
                                          int workers) {
  spec.validate();
  if (j < 1 || j > spec.n) {
    throw std::invalid_argument("estimate_eigenvalue_stats: index out of range");
  }
  if (replicates < 2) {
    throw std::invalid_argument("estimate_eigenvalue_stats: need R >= 2");
  }
  EigenvalueStats out;
  out.spec = spec;
  out.j = j;
  out.replicates = replicates;
  out.seed = seed;
  out.target = theoretical_location(spec, j);

  const std::vector<double> values =
      collect_eigenvalue(spec, j, replicates, seed, fast, workers);
  out.mean = stats::mean(values);
  out.variance = stats::population_variance(values, out.mean);
  std::vector<double> sq(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    sq[i] = (values[i] - out.target) * (values[i] - out.target);
  }
  out.msd = pairwise_sum(sq) / static_cast<double>(values.size());

  const auto se = stats::bootstrap_stderr(values, out.target, kBootstrapResamples,
                                          child_seed(seed ^ kBootstrapTag, j));
  out.mean_stderr = se.mean_se;
  out.variance_stderr = se.variance_se;
  out.msd_stderr = se.msd_se;
  return out;
}

ScalingFit fit_power_law(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3) {
    throw std::invalid_argument("fit_power_law: grid shorter than 3 points, fit refused");
  }
  ScalingFit fit;
  fit.model = ScalingFit::Model::PurePower;
  fit.points = points;
  const std::size_t n = points.size();
  std::vector<double> lx(n), ly(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(points[i].first > 0.0) || !(points[i].second > 0.0)) {
      throw std::invalid_argument("fit_power_law: points must be positive");
    }
    lx[i] = std::log(points[i].first);
    ly[i] = std::log(points[i].second);
  }
  const double mx = stats::mean(lx), my = stats::mean(ly);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.residuals.resize(n);
  double ss_res = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    fit.residuals[i] = ly[i] - (fit.intercept + fit.slope * lx[i]);
    ss_res += fit.residuals[i] * fit.residuals[i];
  }
  fit.r2 = (syy > 0.0) ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
  return fit;
}

ScalingFit fit_power_with_log(const std::vector<std::pair<double, double>>& points) {
  ScalingFit fit = fit_power_law(points);
  fit.model = ScalingFit::Model::PowerWithLog;
  std::vector<double> ratios(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double n = points[i].first;
    ratios[i] = points[i].second * n * n / std::log(n);
  }
  fit.prefactor = stats::mean(ratios);
  return fit;
}

ScanResult variance_scan(
    const std::function<ensembles::EnsembleSpec(int)>& spec_for_n,
    const std::vector<int>& grid, const RegimeSpec& regime, int replicates,
    std::uint64_t seed, bool fast, int workers,
    const std::function<int(int)>& index_for_n) {
  regime.validate();
  if (grid.empty()) throw std::invalid_argument("variance_scan: empty grid");
  if (grid.size() < 3) {
    throw std::invalid_argument("variance_scan: grid shorter than 3 points, fit refused");
  }
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (grid[i] <= grid[i - 1]) {
      throw std::invalid_argument("variance_scan: grid must be ascending");
    }
  }

  ScanResult result;
  std::vector<std::pair<double, double>> points;
  for (int n : grid) {
    const ensembles::EnsembleSpec spec = spec_for_n(n);
    const int j = index_for_n ? index_for_n(n) : regime.default_index(n);
    EigenvalueStats st =
        estimate_eigenvalue_stats(spec, j, replicates, child_seed(seed, n), fast, workers);
    result.strict_window = result.strict_window && regime.index_in_window(n, j);
    points.emplace_back(static_cast<double>(n), st.variance);
    double ratio = 0.0;
    const double nd = static_cast<double>(n);
    switch (regime.regime) {
      case Regime::Bulk:
        ratio = st.variance * nd * nd / std::log(nd);
        break;
      case Regime::Edge:
        ratio = st.variance * std::pow(nd, 4.0 / 3.0);
        break;
      case Regime::Intermediate: {
        const double gap = static_cast<double>(n - j);
        ratio = st.variance * std::pow(nd, 4.0 / 3.0) * std::pow(gap, 2.0 / 3.0) /
                std::log(gap);
        break;
      }
    }
    result.ratios.push_back(ratio);
    result.stats.push_back(std::move(st));
  }
  result.fit = (regime.regime == Regime::Bulk) ? fit_power_with_log(points)
                                               : fit_power_law(points);
  const auto [mn, mx] = std::minmax_element(result.ratios.begin(), result.ratios.end());
  result.ratio_max_over_min = (*mn > 0.0) ? *mx / *mn : 0.0;
  return result;
}

GapResult universality_gap(const ensembles::EnsembleSpec& spec_a,
                           const ensembles::EnsembleSpec& spec_b, int j,
                           int replicates, std::uint64_t seed, bool fast_a,
                           bool fast_b, int workers) {
  if (spec_a.n != spec_b.n) {
    throw std::invalid_argument("universality_gap: dimensions must match");
  }
  const EigenvalueStats a =
      estimate_eigenvalue_stats(spec_a, j, replicates, seed, fast_a, workers);
  const EigenvalueStats b =
      estimate_eigenvalue_stats(spec_b, j, replicates, seed, fast_b, workers);
  GapResult out;
  out.msd_a = a.msd;
  out.msd_b = b.msd;
  out.gap = b.msd - a.msd;
  out.pooled_stderr = std::hypot(a.msd_stderr, b.msd_stderr);
  return out;
}

InterlaceResult interlacing_mean_check(int n, double t, int replicates,
                                       std::uint64_t seed, int workers) {
  if (replicates < 2) throw std::invalid_argument("interlacing_mean_check: need R >= 2");
  const ensembles::EnsembleSpec gue = ensembles::EnsembleSpec::gue(n);
  const ensembles::EnsembleSpec goe = ensembles::EnsembleSpec::goe(n);
  std::vector<double> diff(replicates), cplx(replicates), real_avg(replicates);
  InterlaceResult out;
  out.counts_gue.resize(replicates);
  out.counts_goe_a.resize(replicates);
  out.counts_goe_b.resize(replicates);
  parallel_for(replicates, workers, [&](std::size_t r) {
    const auto su = ensembles::sample_spectrum(gue, child_seed(seed, 3 * r), true);
    const auto so1 = ensembles::sample_spectrum(goe, child_seed(seed, 3 * r + 1), true);
    const auto so2 = ensembles::sample_spectrum(goe, child_seed(seed, 3 * r + 2), true);
    out.counts_gue[r] = count_at_most(su.eigenvalues, t);
    out.counts_goe_a[r] = count_at_most(so1.eigenvalues, t);
    out.counts_goe_b[r] = count_at_most(so2.eigenvalues, t);
    const double cu = out.counts_gue[r];
    const double avg = 0.5 * (out.counts_goe_a[r] + out.counts_goe_b[r]);
    cplx[r] = cu;
    real_avg[r] = avg;
    diff[r] = cu - avg;
  });
  out.mean_gue = stats::mean(cplx);
  out.mean_goe_avg = stats::mean(real_avg);
  const double mean_diff = stats::mean(diff);
  out.delta = std::abs(mean_diff);
  out.stderr_ = stats::stderr_of_mean(diff, mean_diff);
  return out;
}

StandardizedSample standardized_bulk_deviations(const ensembles::EnsembleSpec& spec,
                                                int j, int replicates,
                                                std::uint64_t seed, bool fast,
                                                int workers) {
  spec.validate();
  if (spec.is_covariance()) {
    throw std::invalid_argument("standardized_bulk_deviations: Wigner kinds only");
  }
  if (j < 1 || j > spec.n) {
    throw std::invalid_argument("standardized_bulk_deviations: index out of range");
  }
  const double gamma = laws::sc_quantile(static_cast<double>(j) / spec.n);
  const double curvature = 4.0 - gamma * gamma;
  if (curvature < 0.01) {
    throw std::invalid_argument(
        "standardized_bulk_deviations: index too close to the edge");
  }
  const double nd = static_cast<double>(spec.n);
  const double scale = std::sqrt(2.0 * std::log(nd) / (curvature * nd * nd));
  StandardizedSample out;
  out.values = collect_eigenvalue(spec, j, replicates, seed, fast, workers);
  for (double& v : out.values) v = (v - gamma) / scale;
  out.mean = stats::mean(out.values);
  out.variance = stats::population_variance(out.values, out.mean);
  out.ks_vs_normal = stats::ks_vs_normal(out.values);
  return out;
}

BulkCalibration calibrate_bulk_constants(const counting::KernelModel& model,
                                         int j, const std::vector<double>& u_values) {
  const int n = model.order();
  if (j < 1 || j > n) throw std::invalid_argument("calibrate_bulk_constants: bad index");
  if (u_values.empty()) {
    throw std::invalid_argument("calibrate_bulk_constants: need at least one u");
  }
  const double gamma = laws::sc_quantile(static_cast<double>(j) / n);
  const double u_max = *std::max_element(u_values.begin(), u_values.end());

  BulkCalibration cal;
  // Mean offset over a bulk grid plus the local deviation range.
  double c1 = 0.0;
  for (double t = -1.6; t <= 1.6; t += 0.05) {
    c1 = std::max(c1, std::abs(model.counting_mean(t) - n * laws::sc_cdf(t)));
  }
  for (double u : u_values) {
    for (double s : {-1.0, 1.0}) {
      const double t = gamma + s * u / n;
      c1 = std::max(c1, std::abs(model.counting_mean(t) - n * laws::sc_cdf(t)));
    }
  }
  cal.c1 = c1;

  // Counting-variance growth constant near gamma_j.
  double sigma2 = 0.0;
  for (double t : {gamma - u_max / n, gamma, gamma + u_max / n}) {
    sigma2 = std::max(sigma2, model.counting_variance(t));
  }
  cal.c_delta = sigma2 / std::log(static_cast<double>(n));

  // Slope constant: the exact semicircle mass crossed by a deviation of u/n
  // must dominate big_c * u + c1 for every tested u.
  double big_c = std::numeric_limits<double>::infinity();
  for (double u : u_values) {
    for (double s : {-1.0, 1.0}) {
      const double mass =
          n * std::abs(laws::sc_cdf(gamma + s * u / n) - laws::sc_cdf(gamma));
      big_c = std::min(big_c, (mass - cal.c1) / u);
    }
  }
  if (!(big_c > 0.0)) {
    throw std::runtime_error(
        "calibrate_bulk_constants: deviation range too small for a positive slope constant");
  }
  cal.big_c = big_c;
  return cal;
}

}  // namespace rmtlab::estimators
