#ifndef LEVYGAS_CONFIG_HPP
#define LEVYGAS_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "levygas/heavy_tail.hpp"
#include "levygas/walker.hpp"

namespace levygas {

// Declarative experiment description. Serialized as a flat key = value
// text file; round-trips losslessly. All randomness in a run derives from
// master_seed, so a result is regenerable from this struct alone.
struct ExperimentConfig {
  double alpha = 0.5;
  std::string gap_law = "pareto";
  double gap_x_min = 1.0;
  std::string walk = "simple-symmetric";  // or "pmf" with walk_pmf set
  std::string walk_pmf;                   // e.g. "-1:0.5,1:0.5"
  std::uint64_t master_seed = 20190326;
  std::int64_t n_trajectories = 1000;
  std::vector<std::int64_t> scale_grid = {1000, 3162, 10000, 31623, 100000};
  std::vector<double> time_points = {1.0};
  std::vector<double> s_points = {1.0};
  std::vector<double> x_times = {1000, 3162, 10000, 31623, 100000};
  double xbar_q = 10000;
  std::vector<double> quantile_levels = {0.25, 0.5, 0.75};
  std::vector<double> limit_times = {0.5, 1.0, 2.0};
  double dt_over_tmax = 1e-5;
  double dx = 0.01;
  std::int64_t limit_replicas = 1000;
  std::int64_t rwrs_n = 100000;
  std::int64_t rwrs_replicas = 1000;
  std::int64_t growth_replicas = 200;
  std::int64_t calib_n_block = 10000;
  std::int64_t calib_n_samples = 1000;
  double calib_ks_ceiling = 0.05;
  int workers = 0;  // 0 = hardware concurrency
  std::string out_dir = "out";

  // Throws config_error with one diagnostic per offending field.
  void validate() const;

  GapDistribution gap_distribution() const;
  WalkSpec walk_spec() const;

  std::string serialize() const;
  static ExperimentConfig parse(const std::string& text);
  static ExperimentConfig load(const std::string& path);
  void save(const std::string& path) const;

  bool operator==(const ExperimentConfig&) const = default;
};

// JSON echo of a config (ordered keys), used in run manifests.
std::string config_to_json(const ExperimentConfig& cfg);

}  // namespace levygas

#endif
