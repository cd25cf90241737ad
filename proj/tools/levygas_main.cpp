// Command-line driver for the Levy-Lorentz gas simulator: declarative
// experiment runs, statistical verification, and reanalysis of stored
// samples. Exit codes: 0 success, 2 invalid configuration, 3 failed
// verification/assertion.

#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "levygas/checks.hpp"
#include "levygas/config.hpp"
#include "levygas/ensemble.hpp"
#include "levygas/errors.hpp"
#include "levygas/format.hpp"

namespace {

struct CommonOpts {
  std::string config_path;
  std::string out_dir;
  std::string seed;
  int workers = -1;
};

levygas::ExperimentConfig load_config(const CommonOpts& opts) {
  levygas::ExperimentConfig cfg;
  if (!opts.config_path.empty())
    cfg = levygas::ExperimentConfig::load(opts.config_path);
  if (!opts.seed.empty()) {
    try {
      cfg.master_seed = std::stoull(opts.seed);
    } catch (const std::exception&) {
      throw levygas::config_error("--seed: not an unsigned integer: " + opts.seed);
    }
  }
  if (opts.workers >= 0) cfg.workers = opts.workers;
  if (!opts.out_dir.empty()) cfg.out_dir = opts.out_dir;
  cfg.validate();
  return cfg;
}

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config_path, "experiment config file (key = value)");
  cmd->add_option("--seed", opts.seed, "override master_seed");
  cmd->add_option("--workers", opts.workers, "override worker count (0 = hardware)");
  cmd->add_option("--out", opts.out_dir, "override output directory");
}

void report(const levygas::EnsembleResult& r) {
  levygas::write_outputs(r, r.config.out_dir);
  std::cout << "wrote " << r.config.out_dir << "/manifest.json";
  if (r.has_calibration)
    std::cout << " (calibration scale " << levygas::fmt_g17(r.calibration.cal.scale)
              << ", KS " << levygas::fmt_g17(r.calibration.ks_distance) << ")";
  std::cout << "\n";
  for (const auto& f : r.fits)
    std::cout << "fit " << f.quantity << ": slope " << levygas::fmt_g17(f.slope)
              << " (target " << levygas::fmt_g17(f.target) << ")\n";
  for (const auto& k : r.ks_rows)
    std::cout << "ks " << k.comparison << ": D " << levygas::fmt_g17(k.d) << " p "
              << levygas::fmt_g17(k.p) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo simulator for random walks between heavy-tailed "
               "targets on the line"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::vector<std::string> in_dirs;
  bool assert_mode = false;

  CLI::App* simulate = app.add_subcommand(
      "simulate", "trajectory ensembles: scaling snapshots, positions, scenery sums");
  add_common(simulate, opts);
  CLI::App* limit = app.add_subcommand(
      "limit-sample", "limit-object ensembles: Delta(t) and composite draws");
  add_common(limit, opts);
  CLI::App* calibrate =
      app.add_subcommand("calibrate", "stable-scale calibration only");
  add_common(calibrate, opts);
  CLI::App* verify = app.add_subcommand(
      "verify", "exact-identity and invariant suites (exit 3 on failure)");
  add_common(verify, opts);
  CLI::App* analyze = app.add_subcommand(
      "analyze", "fits and KS tests from stored samples of earlier runs");
  add_common(analyze, opts);
  analyze
      ->add_option("--in", in_dirs,
                   "directory holding samples/ from an earlier run (repeatable)")
      ->required();
  analyze->add_flag("--assert", assert_mode,
                    "enforce acceptance windows; exit 3 when any fails");

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) {
      report(levygas::run_simulate(load_config(opts)));
    } else if (limit->parsed()) {
      report(levygas::run_limit_sample(load_config(opts)));
    } else if (calibrate->parsed()) {
      report(levygas::run_calibrate(load_config(opts)));
    } else if (verify->parsed()) {
      levygas::ExperimentConfig cfg = load_config(opts);
      bool all = true;
      for (const auto& check : levygas::run_identity_checks(cfg)) {
        std::cout << (check.pass ? "PASS " : "FAIL ") << check.name << ": "
                  << check.detail << "\n";
        all = all && check.pass;
      }
      if (!all) return 3;
    } else if (analyze->parsed()) {
      levygas::ExperimentConfig cfg = load_config(opts);
      levygas::AnalyzeOutcome outcome = levygas::run_analyze(cfg, in_dirs, assert_mode);
      report(outcome.result);
      for (const auto& f : outcome.failures) std::cout << "ASSERT FAIL " << f << "\n";
      if (!outcome.failures.empty()) return 3;
    }
  } catch (const levygas::config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
