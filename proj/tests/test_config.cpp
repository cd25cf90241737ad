#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "levygas/config.hpp"
#include "levygas/ensemble.hpp"
#include "levygas/errors.hpp"

using namespace levygas;

namespace {

ExperimentConfig smoke_config() {
  ExperimentConfig c;
  c.n_trajectories = 10;
  c.scale_grid = {100, 200, 400, 1000};
  c.x_times = {50, 100, 200, 400};
  c.xbar_q = 100;
  c.limit_times = {0.5, 1.0};
  c.limit_replicas = 6;
  c.dt_over_tmax = 0.005;
  c.rwrs_n = 500;
  c.rwrs_replicas = 8;
  c.growth_replicas = 4;
  c.workers = 2;
  return c;
}

std::string all_bytes(const EnsembleResult& r) {
  std::string s = render_quantiles_csv(r) + render_fits_csv(r) +
                  render_kstests_csv(r) + render_manifest(r, false);
  for (const auto& [name, values] : r.samples) s += name + render_sample_csv(values);
  return s;
}

}  // namespace

TEST_CASE("the checked-in default config is the built-in default") {
  ExperimentConfig repo =
      ExperimentConfig::load(std::string(LEVYGAS_SOURCE_DIR) + "/configs/default.cfg");
  CHECK(repo == ExperimentConfig{});
}

TEST_CASE("config round-trips losslessly") {
  ExperimentConfig cfg;
  cfg.alpha = 0.31830988618367;
  cfg.master_seed = 18446744073709551615ull;
  cfg.scale_grid = {7, 77, 777};
  cfg.quantile_levels = {0.25, 0.5, 0.75};
  cfg.dt_over_tmax = 3.333e-5;
  cfg.walk = "pmf";
  cfg.walk_pmf = "-2:0.25,1:0.5,0:0.25";  // deliberately invalid, parse only
  ExperimentConfig back = ExperimentConfig::parse(cfg.serialize());
  CHECK(back == cfg);
}

TEST_CASE("config save/load") {
  ExperimentConfig cfg = smoke_config();
  std::string path = (std::filesystem::temp_directory_path() / "lg_cfg.cfg").string();
  cfg.save(path);
  CHECK(ExperimentConfig::load(path) == cfg);
  std::remove(path.c_str());
  CHECK_THROWS_AS(ExperimentConfig::load("/nonexistent/file.cfg"), config_error);
}

TEST_CASE("validation reports field-level diagnostics") {
  ExperimentConfig cfg;
  cfg.alpha = 1.5;
  cfg.dx = -1.0;
  cfg.scale_grid = {100, 50};
  try {
    cfg.validate();
    FAIL("expected config_error");
  } catch (const config_error& e) {
    std::string msg = e.what();
    CHECK(msg.find("alpha") != std::string::npos);
    CHECK(msg.find("dx") != std::string::npos);
    CHECK(msg.find("scale_grid") != std::string::npos);
  }
}

TEST_CASE("unknown keys and malformed lines are rejected") {
  CHECK_THROWS_AS(ExperimentConfig::parse("no_such_key = 1\n"), config_error);
  CHECK_THROWS_AS(ExperimentConfig::parse("alpha 0.5\n"), config_error);
  CHECK_THROWS_AS(ExperimentConfig::parse("alpha = zebra\n"), config_error);
  // Comments and blank lines are fine.
  ExperimentConfig cfg = ExperimentConfig::parse("# comment\n\nalpha = 0.4\n");
  CHECK(cfg.alpha == 0.4);
}

TEST_CASE("explicit pmf walks flow through the config") {
  ExperimentConfig cfg;
  cfg.walk = "pmf";
  cfg.walk_pmf = "-2:0.25,-1:0.25,1:0.25,2:0.25";
  WalkSpec spec = cfg.walk_spec();
  CHECK(spec.mu_xi() == doctest::Approx(1.5));
  CHECK(spec.v_xi() == doctest::Approx(2.5));
  cfg.validate();

  cfg.walk_pmf = "0:0.5,1:0.5";
  CHECK_THROWS_AS(cfg.validate(), config_error);
}

TEST_CASE("smoke run emits every declared output file") {
  ExperimentConfig cfg = smoke_config();
  EnsembleResult r = run_simulate(cfg);
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "lg_smoke_out";
  fs::remove_all(dir);
  write_outputs(r, dir.string());
  CHECK(fs::exists(dir / "manifest.json"));
  CHECK(fs::exists(dir / "quantiles.csv"));
  CHECK(fs::exists(dir / "fits.csv"));
  CHECK(fs::exists(dir / "kstests.csv"));
  CHECK(fs::exists(dir / "samples" / "y_abs_n100.csv"));
  CHECK(fs::exists(dir / "samples" / "t_n1000.csv"));
  CHECK(fs::exists(dir / "samples" / "x_abs_t400.csv"));
  CHECK(fs::exists(dir / "samples" / "xbar_q100_s1.csv"));
  CHECK(fs::exists(dir / "samples" / "rwrs_scaled_n500.csv"));

  // Samples re-read byte-exactly.
  auto y = read_sample_csv((dir / "samples" / "y_abs_n100.csv").string());
  REQUIRE(y.size() == 10);
  for (std::size_t i = 0; i < y.size(); ++i)
    CHECK(y[i] == r.samples[0].second[i]);
  fs::remove_all(dir);
}

TEST_CASE("runs are deterministic and schedule independent") {
  ExperimentConfig cfg = smoke_config();
  EnsembleResult a = run_simulate(cfg);
  EnsembleResult b = run_simulate(cfg);
  CHECK(all_bytes(a) == all_bytes(b));

  ExperimentConfig w1 = cfg, w8 = cfg;
  w1.workers = 1;
  w8.workers = 8;
  EnsembleResult r1 = run_simulate(w1);
  EnsembleResult r8 = run_simulate(w8);
  r1.config.workers = 0;
  r8.config.workers = 0;
  CHECK(all_bytes(r1) == all_bytes(r8));
}

TEST_CASE("analyze recomputes fits and KS rows from stored samples") {
  namespace fs = std::filesystem;
  ExperimentConfig cfg = smoke_config();
  cfg.n_trajectories = 250;  // enough for well-posed fits
  EnsembleResult sim = run_simulate(cfg);
  ExperimentConfig lcfg = cfg;
  EnsembleResult lim = run_limit_sample(lcfg);

  fs::path sim_dir = fs::temp_directory_path() / "lg_analyze_sim";
  fs::path lim_dir = fs::temp_directory_path() / "lg_analyze_lim";
  fs::remove_all(sim_dir);
  fs::remove_all(lim_dir);
  write_outputs(sim, sim_dir.string());
  write_outputs(lim, lim_dir.string());

  AnalyzeOutcome an = run_analyze(cfg, {sim_dir.string(), lim_dir.string()}, false);
  CHECK(an.result.fits.size() >= 3);     // y, t, x slopes
  CHECK(!an.result.ks_rows.empty());     // xbar vs composite etc.
  CHECK(an.failures.empty());            // assert mode off never fails
  fs::remove_all(sim_dir);
  fs::remove_all(lim_dir);
}

TEST_CASE("analyze assert mode flags planted violations") {
  namespace fs = std::filesystem;
  ExperimentConfig cfg = smoke_config();
  cfg.scale_grid = {10, 100, 1000, 10000};
  fs::path dir = fs::temp_directory_path() / "lg_assert_in";
  fs::remove_all(dir);
  fs::create_directories(dir / "samples");

  // |Y_n| samples growing like n^{1.3}: far outside the 1.00 +/- 0.07 window.
  for (std::int64_t n : cfg.scale_grid) {
    std::vector<double> v(300);
    for (std::size_t i = 0; i < v.size(); ++i)
      v[i] = std::pow(static_cast<double>(n), 1.3) *
             (0.5 + static_cast<double>(i) / 600.0);
    std::ofstream out(dir / "samples" / (sample_name_y(n, 1.0) + ".csv"));
    out << render_sample_csv(v);
  }
  // Two samples from visibly different laws for the delta-vs-rwrs check.
  {
    std::vector<double> a(300), b(300);
    for (std::size_t i = 0; i < a.size(); ++i) {
      a[i] = static_cast<double>(i);
      b[i] = static_cast<double>(i) + 1000.0;
    }
    std::ofstream oa(dir / "samples" / (sample_name_delta(1.0) + ".csv"));
    oa << render_sample_csv(a);
    std::ofstream ob(dir / "samples" / (sample_name_rwrs(cfg.rwrs_n) + ".csv"));
    ob << render_sample_csv(b);
  }

  AnalyzeOutcome an = run_analyze(cfg, {dir.string()}, true);
  REQUIRE(an.failures.size() >= 2);
  bool slope_flagged = false, ks_flagged = false;
  for (const auto& f : an.failures) {
    if (f.find("y_abs slope") != std::string::npos) slope_flagged = true;
    if (f.find("delta_t1_vs_") != std::string::npos) ks_flagged = true;
  }
  CHECK(slope_flagged);
  CHECK(ks_flagged);
  fs::remove_all(dir);
}

TEST_CASE("limit-sample runs are deterministic and schedule independent") {
  ExperimentConfig cfg = smoke_config();
  EnsembleResult a = run_limit_sample(cfg);
  EnsembleResult b = run_limit_sample(cfg);
  CHECK(all_bytes(a) == all_bytes(b));
  CHECK(a.has_calibration);
  CHECK(a.calibration.cal.scale == b.calibration.cal.scale);

  ExperimentConfig w1 = cfg, w8 = cfg;
  w1.workers = 1;
  w8.workers = 8;
  EnsembleResult r1 = run_limit_sample(w1);
  EnsembleResult r8 = run_limit_sample(w8);
  r1.config.workers = 0;
  r8.config.workers = 0;
  CHECK(all_bytes(r1) == all_bytes(r8));
}
