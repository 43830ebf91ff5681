#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "rmtlab/cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  REQUIRE(f.good());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

fs::path out_dir() {
  const fs::path dir = fs::temp_directory_path() / "rmtlab_cli_test";
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("gamma table emission") {
  const fs::path prefix = out_dir() / "gamma4";
  const int rc = rmtlab::cli::run({"gamma", "--n", "4", "--seed", "7", "--out",
                                   prefix.string()});
  REQUIRE(rc == 0);
  const std::string csv = slurp(prefix.string() + ".csv");
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "j,gamma");
  std::getline(lines, line);  // j = 1
  std::getline(lines, line);  // j = 2
  const double g2 = std::stod(line.substr(line.find(',') + 1));
  CHECK(std::abs(g2) < 1e-9);

  const json summary = json::parse(slurp(prefix.string() + ".summary.json"));
  CHECK(summary["law"] == "semicircle");
  const json manifest = json::parse(slurp(prefix.string() + ".manifest.json"));
  CHECK(manifest["version"] == "0.1.0");
  CHECK(manifest["checksums"].size() >= 2);
}

TEST_CASE("scan output is byte-identical across runs and worker counts") {
  const fs::path p1 = out_dir() / "scan_a";
  const fs::path p2 = out_dir() / "scan_b";
  const fs::path p3 = out_dir() / "scan_c";
  const std::vector<std::string> base = {"scan",   "--regime", "bulk", "--grid",
                                         "24,32,48", "--r",    "25",   "--seed",
                                         "7",      "--fast"};
  auto with = [&](const fs::path& p, const std::string& workers) {
    auto v = base;
    v.push_back("--out");
    v.push_back(p.string());
    v.push_back("--workers");
    v.push_back(workers);
    return v;
  };
  REQUIRE(rmtlab::cli::run(with(p1, "1")) == 0);
  REQUIRE(rmtlab::cli::run(with(p2, "1")) == 0);
  REQUIRE(rmtlab::cli::run(with(p3, "2")) == 0);
  CHECK(slurp(p1.string() + ".csv") == slurp(p2.string() + ".csv"));
  CHECK(slurp(p1.string() + ".csv") == slurp(p3.string() + ".csv"));
  CHECK(slurp(p1.string() + ".summary.json") == slurp(p3.string() + ".summary.json"));
}

TEST_CASE("counting command: Bernoulli mean consistent with the kernel mean") {
  const fs::path prefix = out_dir() / "counting16";
  const int rc = rmtlab::cli::run({"counting", "--n", "16", "--t", "0", "--r", "300",
                                   "--seed", "7", "--out", prefix.string()});
  REQUIRE(rc == 0);
  const json summary = json::parse(slurp(prefix.string() + ".summary.json"));
  const double kernel_mean = summary["kernel_mean"];
  const double bern_mean = summary["bernoulli_mean"];
  CHECK(std::abs(bern_mean - kernel_mean) <= 1e-3 * 16);
  CHECK(summary["ks_distance"].get<double>() <= 0.2);
}

TEST_CASE("missing seed is a config error") {
  unsetenv("RMT_LAB_SEED");
  CHECK(rmtlab::cli::run({"gamma", "--n", "4"}) == 1);
}

TEST_CASE("environment variable supplies the seed, flag wins") {
  setenv("RMT_LAB_SEED", "99", 1);
  const fs::path prefix = out_dir() / "env_seed";
  CHECK(rmtlab::cli::run({"gamma", "--n", "2", "--out", prefix.string()}) == 0);
  const json manifest = json::parse(slurp(prefix.string() + ".manifest.json"));
  CHECK(manifest["config"]["seed"] == 99);

  const fs::path prefix2 = out_dir() / "flag_seed";
  CHECK(rmtlab::cli::run({"gamma", "--n", "2", "--seed", "123", "--out",
                          prefix2.string()}) == 0);
  const json manifest2 = json::parse(slurp(prefix2.string() + ".manifest.json"));
  CHECK(manifest2["config"]["seed"] == 123);
  unsetenv("RMT_LAB_SEED");
}

TEST_CASE("short scan grids are refused") {
  CHECK(rmtlab::cli::run({"scan", "--regime", "bulk", "--grid", "24,32", "--r", "10",
                          "--seed", "7", "--fast", "--out",
                          (out_dir() / "short").string()}) == 1);
}

TEST_CASE("fast flag on a matched kind is a config error") {
  CHECK(rmtlab::cli::run({"sample", "--kind", "wigner-complex-matched", "--n", "8",
                          "--r", "2", "--seed", "7", "--fast", "--out",
                          (out_dir() / "matched").string()}) == 1);
}

TEST_CASE("unknown ensemble kind is a config error") {
  CHECK(rmtlab::cli::run({"sample", "--kind", "nope", "--n", "8", "--r", "2",
                          "--seed", "7", "--out", (out_dir() / "bad").string()}) == 1);
}

TEST_CASE("interlace and transport commands run end to end") {
  const fs::path ip = out_dir() / "inter";
  REQUIRE(rmtlab::cli::run({"interlace", "--n", "16", "--t", "0", "--r", "200",
                            "--seed", "3", "--out", ip.string()}) == 0);
  const json isum = json::parse(slurp(ip.string() + ".summary.json"));
  CHECK(isum["delta"].get<double>() <= 1.0 + 3.0 * isum["stderr"].get<double>());

  const fs::path tp = out_dir() / "trans";
  REQUIRE(rmtlab::cli::run({"transport", "--grid", "16,32", "--r", "30", "--seed",
                            "3", "--fast", "--out", tp.string(),
                            "--emit-plotdata"}) == 0);
  const json tsum = json::parse(slurp(tp.string() + ".summary.json"));
  CHECK(tsum["bound_violations"] == 0);
  CHECK(fs::exists(tp.string() + ".plot.csv"));
}

TEST_CASE("covariance command reports edge-scaled variances") {
  const fs::path cp = out_dir() / "cov";
  REQUIRE(rmtlab::cli::run({"covariance", "--grid", "16,32", "--r", "150", "--seed",
                            "5", "--fast", "--out", cp.string()}) == 0);
  const json csum = json::parse(slurp(cp.string() + ".summary.json"));
  CHECK(csum["per_n"].size() == 2);
  CHECK(csum["edge_ratio_max_over_min"].get<double>() >= 1.0);
}

TEST_CASE("config file supplies options with command-line override") {
  const fs::path dir = out_dir();
  const fs::path cfg = dir / "gamma.cfg";
  {
    std::ofstream f(cfg);
    f << "gamma.n=8\ngamma.seed=55\ngamma.out=" << (dir / "cfg_run").string() << "\n";
  }
  REQUIRE(rmtlab::cli::run({"gamma", "--config", cfg.string()}) == 0);
  const json manifest = json::parse(slurp((dir / "cfg_run").string() + ".manifest.json"));
  CHECK(manifest["config"]["n"] == 8);
  CHECK(manifest["config"]["seed"] == 55);

  REQUIRE(rmtlab::cli::run({"gamma", "--config", cfg.string(), "--n", "3", "--out",
                            (dir / "cfg_run2").string()}) == 0);
  const json manifest2 =
      json::parse(slurp((dir / "cfg_run2").string() + ".manifest.json"));
  CHECK(manifest2["config"]["n"] == 3);
}
