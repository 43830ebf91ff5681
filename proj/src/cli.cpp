#include "rmtlab/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rmtlab/counting.hpp"
#include "rmtlab/ensembles.hpp"
#include "rmtlab/estimators.hpp"
#include "rmtlab/laws.hpp"
#include "rmtlab/quadrature.hpp"
#include "rmtlab/rng.hpp"
#include "rmtlab/stats.hpp"
#include "rmtlab/transport.hpp"

namespace rmtlab::cli {

namespace {

using nlohmann::json;

constexpr const char* kVersion = "0.1.0";

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

/// Collects output files in memory, writes them together with a manifest
/// carrying the config echo and per-file checksums of the numeric outputs.
class OutputSet {
 public:
  OutputSet(std::string prefix, std::string command, json config)
      : prefix_(std::move(prefix)),
        command_(std::move(command)),
        config_(std::move(config)),
        start_(std::chrono::steady_clock::now()) {}

  void add(const std::string& suffix, std::string content) {
    files_.emplace_back(prefix_ + suffix, std::move(content));
  }

  void add_csv(const std::string& header, const std::vector<std::string>& rows) {
    std::string out = header + "\n";
    for (const auto& r : rows) {
      out += r;
      out += '\n';
    }
    add(".csv", std::move(out));
  }

  void add_summary(json summary) {
    summary["command"] = command_;
    add(".summary.json", summary.dump(2) + "\n");
  }

  void add_plotdata(const std::vector<std::array<double, 3>>& rows) {
    std::string out = "x,y,yerr\n";
    for (const auto& r : rows) {
      out += fmt17(r[0]) + "," + fmt17(r[1]) + "," + fmt17(r[2]) + "\n";
    }
    add(".plot.csv", std::move(out));
  }

  void flush() {
    json checksums = json::object();
    for (const auto& [name, content] : files_) {
      checksums[std::filesystem::path(name).filename().string()] =
          fnv1a_hex(content);
    }
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
            .count();
    json manifest;
    manifest["command"] = command_;
    manifest["config"] = config_;
    manifest["version"] = kVersion;
    manifest["wall_clock_seconds"] = wall;
    manifest["checksums"] = checksums;
    files_.emplace_back(prefix_ + ".manifest.json", manifest.dump(2) + "\n");

    for (const auto& [name, content] : files_) {
      const std::filesystem::path p(name);
      if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
      std::ofstream f(p, std::ios::binary);
      if (!f) throw std::runtime_error("cannot open output file: " + name);
      f.write(content.data(), static_cast<std::streamsize>(content.size()));
    }
  }

 private:
  std::string prefix_;
  std::string command_;
  json config_;
  std::chrono::steady_clock::time_point start_;
  std::vector<std::pair<std::string, std::string>> files_;
};

struct CommonOpts {
  std::uint64_t seed = 0;
  std::string out;
  int replicates = 1000;
  int workers = 2;
  bool fast = false;
  bool plotdata = false;
};

void add_common(CLI::App* cmd, CommonOpts& c, const std::string& default_out) {
  c.out = default_out;
  cmd->fallthrough();  // lets --config after the subcommand reach the app
  cmd->add_option("--seed", c.seed, "master seed (required; no entropy defaults)")
      ->envname("RMT_LAB_SEED")
      ->required();
  cmd->add_option("--out", c.out, "output path prefix");
  cmd->add_option("--r", c.replicates, "Monte Carlo replicates")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--workers", c.workers, "worker threads")->check(CLI::PositiveNumber);
  cmd->add_flag("--fast", c.fast, "tridiagonal/bidiagonal sampling path");
  cmd->add_flag("--emit-plotdata", c.plotdata, "write (x, y, yerr) triples");
}

json common_config(const CommonOpts& c) {
  return json{{"seed", c.seed},   {"out", c.out},     {"r", c.replicates},
              {"workers", c.workers}, {"fast", c.fast}, {"emit_plotdata", c.plotdata}};
}

ensembles::EnsembleSpec spec_from_kind(const std::string& kind, int n, int m) {
  using ensembles::EnsembleSpec;
  if (kind == "gue") return EnsembleSpec::gue(n);
  if (kind == "goe") return EnsembleSpec::goe(n);
  if (kind == "wigner-complex-matched") return EnsembleSpec::wigner_complex_matched(n);
  if (kind == "wigner-real-matched") return EnsembleSpec::wigner_real_matched(n);
  if (kind == "lue") return EnsembleSpec::lue(n, m);
  if (kind == "loe") return EnsembleSpec::loe(n, m);
  if (kind == "covariance-matched") return EnsembleSpec::covariance_matched(n, m);
  throw CLI::ValidationError("--kind", "unknown ensemble kind: " + kind);
}

// ---------------------------------------------------------------------------

int run_gamma(const CommonOpts& c, int n) {
  const laws::QuantileTable table = laws::gamma_table(n);
  json config = common_config(c);
  config["n"] = n;
  OutputSet out(c.out, "gamma", config);
  std::vector<std::string> rows;
  std::vector<std::array<double, 3>> plot;
  for (int j = 1; j <= n; ++j) {
    rows.push_back(std::to_string(j) + "," + fmt17(table.values[j - 1]));
    if (c.plotdata) plot.push_back({static_cast<double>(j), table.values[j - 1], 0.0});
  }
  out.add_csv("j,gamma", rows);
  out.add_summary(json{{"n", n}, {"law", table.law}});
  if (c.plotdata) out.add_plotdata(plot);
  out.flush();
  return 0;
}

int run_sample(const CommonOpts& c, const std::string& kind, int n, int m) {
  const ensembles::EnsembleSpec spec = spec_from_kind(kind, n, m);
  json config = common_config(c);
  config["kind"] = kind;
  config["n"] = n;
  config["m"] = m;
  OutputSet out(c.out, "sample", config);
  std::vector<std::string> rows;
  double min_acc = 0.0, max_acc = 0.0;
  for (int r = 0; r < c.replicates; ++r) {
    const auto s = ensembles::sample_spectrum(spec, child_seed(c.seed, r), c.fast);
    for (int j = 1; j <= n; ++j) {
      rows.push_back(std::to_string(r) + "," + std::to_string(j) + "," +
                     fmt17(s.eigenvalues[j - 1]));
    }
    min_acc += s.eigenvalues.front();
    max_acc += s.eigenvalues.back();
  }
  out.add_csv("replicate,j,lambda", rows);
  out.add_summary(json{{"kind", kind},
                       {"n", n},
                       {"m", m},
                       {"r", c.replicates},
                       {"fast", c.fast},
                       {"mean_lambda_min", min_acc / c.replicates},
                       {"mean_lambda_max", max_acc / c.replicates}});
  if (c.plotdata) {
    out.add_plotdata({{static_cast<double>(n), max_acc / c.replicates, 0.0}});
  }
  out.flush();
  return 0;
}

int run_counting(const CommonOpts& c, int n, double t) {
  const counting::KernelModel model(n);
  const double kernel_mean = model.counting_mean(t);
  const double kernel_variance = model.counting_variance(t);
  const counting::BernoulliRepresentation rep = model.bernoulli_representation(t);
  const double bern_mean = pairwise_sum(rep.p);
  double bern_var = 0.0;
  for (double p : rep.p) bern_var += p * (1.0 - p);

  const ensembles::EnsembleSpec gue = ensembles::EnsembleSpec::gue(n);
  std::vector<std::string> rows;
  std::vector<double> bern_counts(c.replicates), direct_counts(c.replicates);
  for (int r = 0; r < c.replicates; ++r) {
    const int bc = counting::sample_counting(rep, child_seed(c.seed, 2 * r));
    const auto spec = ensembles::sample_spectrum(gue, child_seed(c.seed, 2 * r + 1), true);
    const int dc = static_cast<int>(std::upper_bound(spec.eigenvalues.begin(),
                                                     spec.eigenvalues.end(), t) -
                                    spec.eigenvalues.begin());
    bern_counts[r] = bc;
    direct_counts[r] = dc;
    rows.push_back(std::to_string(r) + "," + std::to_string(bc) + "," +
                   std::to_string(dc));
  }
  const double ks = stats::ks_two_sample(bern_counts, direct_counts);
  const double direct_mean = stats::mean(direct_counts);

  json config = common_config(c);
  config["n"] = n;
  config["t"] = t;
  OutputSet out(c.out, "counting", config);
  out.add_csv("replicate,bernoulli_count,direct_count", rows);
  out.add_summary(json{{"n", n},
                       {"t", t},
                       {"r", c.replicates},
                       {"kernel_mean", kernel_mean},
                       {"kernel_variance", kernel_variance},
                       {"bernoulli_mean", bern_mean},
                       {"bernoulli_variance", bern_var},
                       {"bernoulli_count_mean", stats::mean(bern_counts)},
                       {"direct_count_mean", direct_mean},
                       {"direct_count_variance",
                        stats::population_variance(direct_counts, direct_mean)},
                       {"ks_distance", ks},
                       {"clamp_defect", rep.clamp_defect}});
  if (c.plotdata) {
    out.add_plotdata({{t, kernel_mean, std::sqrt(kernel_variance)}});
  }
  out.flush();
  return 0;
}

int run_scan(const CommonOpts& c, const std::string& kind, std::vector<int> grid,
             const std::string& regime_name, double eta, double k_cut,
             const std::string& j_rule, int j_fixed, double m_ratio,
             bool calibrate) {
  estimators::RegimeSpec regime;
  regime.regime = estimators::regime_from_name(regime_name);
  regime.eta = eta;
  regime.k_cut = k_cut;
  regime.validate();

  auto spec_for_n = [&](int n) {
    const int m = static_cast<int>(std::lround(m_ratio * n));
    return spec_from_kind(kind, n, m);
  };
  std::function<int(int)> index_for_n;
  if (j_fixed > 0) {
    index_for_n = [j_fixed](int) { return j_fixed; };
  } else if (j_rule == "mid") {
    index_for_n = [](int n) { return (n + 1) / 2; };
  } else if (j_rule == "max") {
    index_for_n = [](int n) { return n; };
  } else if (j_rule == "sqrt-gap") {
    index_for_n = [](int n) {
      return std::max(1, n - static_cast<int>(std::ceil(2.0 * std::sqrt(double(n)))));
    };
  } else if (j_rule != "default") {
    throw CLI::ValidationError("--j-rule", "unknown rule: " + j_rule);
  }

  const estimators::ScanResult result = estimators::variance_scan(
      spec_for_n, grid, regime, c.replicates, c.seed, c.fast, c.workers, index_for_n);

  json config = common_config(c);
  config["kind"] = kind;
  config["grid"] = grid;
  config["regime"] = regime_name;
  config["eta"] = eta;
  config["k"] = k_cut;
  config["j_rule"] = j_rule;
  config["j"] = j_fixed;
  config["m_ratio"] = m_ratio;
  OutputSet out(c.out, "scan", config);

  std::vector<std::string> rows;
  std::vector<std::array<double, 3>> plot;
  for (std::size_t i = 0; i < result.stats.size(); ++i) {
    const auto& st = result.stats[i];
    rows.push_back(std::to_string(st.spec.n) + "," + std::to_string(st.j) + "," +
                   std::to_string(st.replicates) + "," + fmt17(st.mean) + "," +
                   fmt17(st.variance) + "," + fmt17(st.msd) + "," +
                   fmt17(st.mean_stderr) + "," + fmt17(st.variance_stderr) + "," +
                   fmt17(st.msd_stderr) + "," + fmt17(st.target) + "," +
                   fmt17(result.ratios[i]));
    plot.push_back({static_cast<double>(st.spec.n), st.variance, st.variance_stderr});
  }
  out.add_csv(
      "n,j,replicates,mean,variance,msd,mean_stderr,variance_stderr,msd_stderr,target,ratio",
      rows);

  json summary{{"regime", regime_name},
               {"grid", grid},
               {"slope", result.fit.slope},
               {"intercept", result.fit.intercept},
               {"r2", result.fit.r2},
               {"ratio_max_over_min", result.ratio_max_over_min},
               {"strict_window", result.strict_window}};
  if (result.fit.model == estimators::ScalingFit::Model::PowerWithLog) {
    summary["prefactor"] = result.fit.prefactor;
  }
  if (calibrate && regime.regime == estimators::Regime::Bulk) {
    const int n_cal = std::min(grid.back(), 256);
    const counting::KernelModel model(n_cal);
    const auto cal = estimators::calibrate_bulk_constants(
        model, (n_cal + 1) / 2, {8.0, 12.0, 16.0});
    summary["calibration"] =
        json{{"n", n_cal}, {"C", cal.big_c}, {"C1", cal.c1}, {"c_delta", cal.c_delta}};
  }
  out.add_summary(summary);
  if (c.plotdata) out.add_plotdata(plot);
  out.flush();
  return 0;
}

int run_universality(const CommonOpts& c, const std::string& pair, int n, int j) {
  ensembles::EnsembleSpec spec_a = ensembles::EnsembleSpec::gue(n);
  ensembles::EnsembleSpec spec_b = (pair == "gue-vs-goe")
                                       ? ensembles::EnsembleSpec::goe(n)
                                       : ensembles::EnsembleSpec::wigner_complex_matched(n);
  if (pair != "gue-vs-goe" && pair != "gue-vs-matched") {
    throw CLI::ValidationError("--pair", "unknown pair: " + pair);
  }
  const auto gap = estimators::universality_gap(spec_a, spec_b, j, c.replicates,
                                                c.seed, false, false, c.workers);
  const auto sa = estimators::estimate_eigenvalue_stats(spec_a, j, c.replicates,
                                                        c.seed, false, c.workers);
  const auto sb = estimators::estimate_eigenvalue_stats(spec_b, j, c.replicates,
                                                        c.seed, false, c.workers);

  json config = common_config(c);
  config["pair"] = pair;
  config["n"] = n;
  config["j"] = j;
  OutputSet out(c.out, "universality", config);
  std::vector<std::string> rows;
  for (const auto& st : {sa, sb}) {
    rows.push_back(st.spec.kind_name() + "," + std::to_string(st.spec.n) + "," +
                   std::to_string(st.j) + "," + std::to_string(st.replicates) + "," +
                   fmt17(st.msd) + "," + fmt17(st.msd_stderr));
  }
  out.add_csv("ensemble,n,j,replicates,msd,msd_stderr", rows);
  out.add_summary(json{{"pair", pair},
                       {"n", n},
                       {"j", j},
                       {"r", c.replicates},
                       {"gap", gap.gap},
                       {"pooled_stderr", gap.pooled_stderr},
                       {"msd_a", gap.msd_a},
                       {"msd_b", gap.msd_b}});
  if (c.plotdata) {
    out.add_plotdata({{0.0, gap.msd_a, sa.msd_stderr}, {1.0, gap.msd_b, sb.msd_stderr}});
  }
  out.flush();
  return 0;
}

int run_interlace(const CommonOpts& c, int n, double t) {
  const auto res =
      estimators::interlacing_mean_check(n, t, c.replicates, c.seed, c.workers);
  json config = common_config(c);
  config["n"] = n;
  config["t"] = t;
  OutputSet out(c.out, "interlace", config);
  std::vector<std::string> rows;
  for (int r = 0; r < c.replicates; ++r) {
    rows.push_back(std::to_string(r) + "," + std::to_string(res.counts_gue[r]) + "," +
                   std::to_string(res.counts_goe_a[r]) + "," +
                   std::to_string(res.counts_goe_b[r]));
  }
  out.add_csv("replicate,count_gue,count_goe_a,count_goe_b", rows);
  out.add_summary(json{{"n", n},
                       {"t", t},
                       {"r", c.replicates},
                       {"delta", res.delta},
                       {"stderr", res.stderr_},
                       {"mean_gue", res.mean_gue},
                       {"mean_goe_avg", res.mean_goe_avg}});
  if (c.plotdata) out.add_plotdata({{t, res.delta, res.stderr_}});
  out.flush();
  return 0;
}

int run_transport(const CommonOpts& c, const std::string& kind,
                  std::vector<int> grid, double m_ratio) {
  json config = common_config(c);
  config["kind"] = kind;
  config["grid"] = grid;
  config["m_ratio"] = m_ratio;
  OutputSet out(c.out, "transport", config);

  std::vector<std::string> rows;
  std::vector<std::array<double, 3>> plot;
  json per_n = json::array();
  int violations = 0;
  std::vector<double> log_ratios;
  for (int n : grid) {
    const int m = static_cast<int>(std::lround(m_ratio * n));
    const ensembles::EnsembleSpec spec = spec_from_kind(kind, n, m);
    const transport::SemicircleQuantileGrid qgrid(n);
    const laws::QuantileTable gammas = laws::gamma_table(n);
    const std::uint64_t seed_n = child_seed(c.seed, n);
    std::vector<double> w2(c.replicates);
    for (int r = 0; r < c.replicates; ++r) {
      const auto s = ensembles::sample_spectrum(spec, child_seed(seed_n, r), c.fast);
      const transport::EmpiricalMeasure mu =
          transport::EmpiricalMeasure::from_sorted(s.eigenvalues);
      const double w2sq = qgrid.w2_squared(mu.support);
      const auto dec = transport::w2_upper_bound_decomposition(mu, gammas);
      const double w1 = transport::w1_to_semicircle(mu);
      const double dk = transport::kolmogorov_to_semicircle(mu);
      if (w2sq > dec.bound + 1e-9) ++violations;
      w2[r] = w2sq;
      rows.push_back(std::to_string(n) + "," + std::to_string(r) + "," + fmt17(w2sq) +
                     "," + fmt17(w1) + "," + fmt17(dk) + "," + fmt17(dec.term1) + "," +
                     fmt17(dec.term2));
    }
    const double mean = stats::mean(w2);
    const double se = stats::stderr_of_mean(w2, mean);
    const double ratio = mean * n * static_cast<double>(n) / std::log(double(n));
    log_ratios.push_back(ratio);
    per_n.push_back(json{{"n", n},
                         {"mean_w2_squared", mean},
                         {"stderr", se},
                         {"ratio_n2_over_log", ratio}});
    plot.push_back({static_cast<double>(n), mean, se});
  }
  out.add_csv("n,replicate,w2_squared,w1,kolmogorov,bound_term1,bound_term2", rows);
  const auto [mn, mx] = std::minmax_element(log_ratios.begin(), log_ratios.end());
  out.add_summary(json{{"grid", grid},
                       {"r", c.replicates},
                       {"per_n", per_n},
                       {"ratio_max_over_min", log_ratios.empty() ? 0.0 : *mx / *mn},
                       {"bound_violations", violations}});
  if (c.plotdata) out.add_plotdata(plot);
  out.flush();
  return violations == 0 ? 0 : 2;
}

int run_covariance(const CommonOpts& c, const std::string& kind,
                   std::vector<int> grid, int m_fixed, double m_ratio) {
  json config = common_config(c);
  config["kind"] = kind;
  config["grid"] = grid;
  config["m"] = m_fixed;
  config["m_ratio"] = m_ratio;
  OutputSet out(c.out, "covariance", config);

  std::vector<std::string> rows;
  std::vector<std::array<double, 3>> plot;
  std::vector<double> edge_ratios;
  json per_n = json::array();
  for (int n : grid) {
    const int m = (m_fixed > 0 && grid.size() == 1)
                      ? m_fixed
                      : static_cast<int>(std::lround(m_ratio * n));
    const ensembles::EnsembleSpec spec = spec_from_kind(kind, n, m);
    if (!spec.is_covariance()) {
      throw CLI::ValidationError("--kind", "covariance command needs a covariance kind");
    }
    const auto st = estimators::estimate_eigenvalue_stats(
        spec, n, c.replicates, child_seed(c.seed, n), c.fast, c.workers);
    const auto [a_edge, b_edge] = laws::mp_edges(m, n);
    const double scaled = st.variance * std::pow(static_cast<double>(n), 4.0 / 3.0);
    edge_ratios.push_back(scaled);
    rows.push_back(std::to_string(n) + "," + std::to_string(m) + "," +
                   std::to_string(st.j) + "," + std::to_string(st.replicates) + "," +
                   fmt17(st.mean) + "," + fmt17(st.variance) + "," + fmt17(st.msd) +
                   "," + fmt17(st.variance_stderr) + "," + fmt17(st.target) + "," +
                   fmt17(scaled));
    per_n.push_back(json{{"n", n},
                         {"m", m},
                         {"a_edge", a_edge},
                         {"b_edge", b_edge},
                         {"variance", st.variance},
                         {"var_times_n43", scaled}});
    plot.push_back({static_cast<double>(n), st.variance, st.variance_stderr});
  }
  out.add_csv("n,m,j,replicates,mean,variance,msd,variance_stderr,target,var_times_n43",
              rows);
  const auto [mn, mx] = std::minmax_element(edge_ratios.begin(), edge_ratios.end());
  json summary{{"grid", grid},
               {"r", c.replicates},
               {"per_n", per_n},
               {"edge_ratio_max_over_min", edge_ratios.empty() ? 0.0 : *mx / *mn}};
  if (grid.size() >= 3) {
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      pts.emplace_back(static_cast<double>(grid[i]),
                       edge_ratios[i] / std::pow(double(grid[i]), 4.0 / 3.0));
    }
    const auto fit = estimators::fit_power_law(pts);
    summary["slope"] = fit.slope;
    summary["r2"] = fit.r2;
  }
  out.add_summary(summary);
  if (c.plotdata) out.add_plotdata(plot);
  out.flush();
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args);
}

int run(const std::vector<std::string>& args) {
  CLI::App app{"rmtlab: Monte Carlo laboratory for eigenvalue fluctuation scaling"};
  app.require_subcommand(1);
  app.set_config("--config", "",
                 "flat key=value configuration file; keys carry the subcommand "
                 "prefix (e.g. gamma.n=8)");

  // gamma
  auto* gamma_cmd = app.add_subcommand("gamma", "emit the theoretical-location table");
  CommonOpts gamma_opts;
  int gamma_n = 16;
  add_common(gamma_cmd, gamma_opts, "gamma");
  gamma_cmd->add_option("--n", gamma_n, "table size")->required()->check(CLI::PositiveNumber);

  // sample
  auto* sample_cmd = app.add_subcommand("sample", "emit raw spectra");
  CommonOpts sample_opts;
  std::string sample_kind = "gue";
  int sample_n = 16, sample_m = 0;
  add_common(sample_cmd, sample_opts, "sample");
  sample_cmd->add_option("--kind", sample_kind, "ensemble kind");
  sample_cmd->add_option("--n", sample_n, "dimension")->required()->check(CLI::PositiveNumber);
  sample_cmd->add_option("--m", sample_m, "covariance rows");

  // counting
  auto* counting_cmd =
      app.add_subcommand("counting", "kernel counting statistics and Bernoulli comparison");
  CommonOpts counting_opts;
  int counting_n = 16;
  double counting_t = 0.0;
  add_common(counting_cmd, counting_opts, "counting");
  counting_cmd->add_option("--n", counting_n, "kernel order")->required()->check(CLI::PositiveNumber);
  counting_cmd->add_option("--t", counting_t, "threshold");

  // scan
  auto* scan_cmd = app.add_subcommand("scan", "variance scaling scan over a dimension grid");
  CommonOpts scan_opts;
  std::string scan_kind = "gue", scan_regime = "bulk", scan_j_rule = "default";
  std::vector<int> scan_grid;
  double scan_eta = 0.5, scan_k = 30.0, scan_m_ratio = 2.0;
  int scan_j = 0;
  bool scan_calibrate = false;
  add_common(scan_cmd, scan_opts, "scan");
  scan_cmd->add_option("--kind", scan_kind, "ensemble kind");
  scan_cmd->add_option("--grid", scan_grid, "dimension grid")->required()->delimiter(',');
  scan_cmd->add_option("--regime", scan_regime, "bulk | edge | intermediate");
  scan_cmd->add_option("--eta", scan_eta, "bulk fraction");
  scan_cmd->add_option("--k", scan_k, "intermediate cutoff multiplier");
  scan_cmd->add_option("--j-rule", scan_j_rule, "default | mid | max | sqrt-gap");
  scan_cmd->add_option("--j", scan_j, "fixed index override");
  scan_cmd->add_option("--m-ratio", scan_m_ratio, "rows/columns ratio for covariance kinds");
  scan_cmd->add_flag("--calibrate", scan_calibrate, "report calibrated bound constants");

  // universality
  auto* uni_cmd = app.add_subcommand("universality", "moment-matched msd gap");
  CommonOpts uni_opts;
  std::string uni_pair = "gue-vs-matched";
  int uni_n = 64, uni_j = 32;
  add_common(uni_cmd, uni_opts, "universality");
  uni_cmd->add_option("--pair", uni_pair, "gue-vs-matched | gue-vs-goe");
  uni_cmd->add_option("--n", uni_n, "dimension")->required();
  uni_cmd->add_option("--j", uni_j, "eigenvalue index")->required();

  // interlace
  auto* inter_cmd = app.add_subcommand("interlace", "counting-function interlacing check");
  CommonOpts inter_opts;
  int inter_n = 64;
  double inter_t = 0.0;
  add_common(inter_cmd, inter_opts, "interlace");
  inter_cmd->add_option("--n", inter_n, "dimension")->required();
  inter_cmd->add_option("--t", inter_t, "threshold");

  // transport
  auto* transport_cmd =
      app.add_subcommand("transport", "Wasserstein and Kolmogorov distances to the limit law");
  CommonOpts transport_opts;
  std::string transport_kind = "gue";
  std::vector<int> transport_grid;
  double transport_m_ratio = 2.0;
  add_common(transport_cmd, transport_opts, "transport");
  transport_cmd->add_option("--kind", transport_kind, "ensemble kind");
  transport_cmd->add_option("--grid", transport_grid, "dimension grid")->required()->delimiter(',');
  transport_cmd->add_option("--m-ratio", transport_m_ratio, "rows/columns ratio");

  // covariance
  auto* cov_cmd = app.add_subcommand("covariance", "covariance-ensemble edge scan");
  CommonOpts cov_opts;
  std::string cov_kind = "lue";
  std::vector<int> cov_grid;
  int cov_m = 0;
  double cov_m_ratio = 2.0;
  add_common(cov_cmd, cov_opts, "covariance");
  cov_cmd->add_option("--kind", cov_kind, "lue | loe | covariance-matched");
  cov_cmd->add_option("--grid", cov_grid, "column-count grid")->required()->delimiter(',');
  cov_cmd->add_option("--m", cov_m, "covariance rows (single-point grids)");
  cov_cmd->add_option("--m-ratio", cov_m_ratio, "rows/columns ratio");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (gamma_cmd->parsed()) return run_gamma(gamma_opts, gamma_n);
    if (sample_cmd->parsed()) return run_sample(sample_opts, sample_kind, sample_n, sample_m);
    if (counting_cmd->parsed()) return run_counting(counting_opts, counting_n, counting_t);
    if (scan_cmd->parsed()) {
      return run_scan(scan_opts, scan_kind, scan_grid, scan_regime, scan_eta, scan_k,
                      scan_j_rule, scan_j, scan_m_ratio, scan_calibrate);
    }
    if (uni_cmd->parsed()) return run_universality(uni_opts, uni_pair, uni_n, uni_j);
    if (inter_cmd->parsed()) return run_interlace(inter_opts, inter_n, inter_t);
    if (transport_cmd->parsed()) {
      return run_transport(transport_opts, transport_kind, transport_grid,
                           transport_m_ratio);
    }
    if (cov_cmd->parsed()) {
      return run_covariance(cov_opts, cov_kind, cov_grid, cov_m, cov_m_ratio);
    }
  } catch (const CLI::Error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "numeric guard failure: " << e.what() << "\n";
    return 2;
  }
  return 1;
}

}  // namespace rmtlab::cli
