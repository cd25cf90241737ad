#ifndef LEVYGAS_ENSEMBLE_HPP
#define LEVYGAS_ENSEMBLE_HPP

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "levygas/config.hpp"
#include "levygas/heavy_tail.hpp"

namespace levygas {

// Disjoint stream-index blocks per ensemble, so no two ensembles of a run
// ever touch the same (purpose, index) pair. Echoed in the manifest's
// stream audit.
namespace stream_block {
inline constexpr std::uint64_t width = 1ull << 40;
inline constexpr std::uint64_t scaling = 0 * width;
inline constexpr std::uint64_t position = 1 * width;
inline constexpr std::uint64_t rwrs = 2 * width;
inline constexpr std::uint64_t growth = 3 * width;
inline constexpr std::uint64_t delta = 4 * width;  // + time_index * 2^32 + replica
inline constexpr std::uint64_t composite = 5 * width;
inline constexpr std::uint64_t local_time = 6 * width;
inline constexpr std::uint64_t nulls = 7 * width;
inline constexpr std::uint64_t diagnostics = 8 * width;
}  // namespace stream_block

// Snapshots of |Y_n| and T_n over the (scale, time point) grid; one
// trajectory per (environment, walk) stream pair.
struct ScalingEnsemble {
  std::vector<std::int64_t> n_grid;
  std::vector<double> time_points;
  // indexed [scale][time][trajectory]
  std::vector<std::vector<std::vector<double>>> y_abs;
  std::vector<std::vector<std::vector<double>>> t_val;
};
ScalingEnsemble run_scaling_ensemble(const ExperimentConfig& cfg);

// |X(t)| at physical times plus the rescaled positions X(sq)/q^{1/(alpha+1)},
// each trajectory simulated until its collision-time horizon covers both.
struct PositionEnsemble {
  std::vector<double> times;
  std::vector<std::vector<double>> x_abs;  // [time][trajectory]
  double q;
  std::vector<double> s_points;
  std::vector<std::vector<double>> xbar;   // [s][trajectory], signed
};
PositionEnsemble run_position_ensemble(const ExperimentConfig& cfg);

// Independent draws of Delta(t) per requested time, and joint composite
// draws Z(B(Delta^{-1}(s))) at the configured s points.
struct LimitEnsembles {
  std::vector<double> delta_times;
  std::vector<std::vector<double>> delta;      // [time][replica]
  std::vector<double> composite_s;
  std::vector<std::vector<double>> composite;  // [s][replica]
};
LimitEnsembles run_limit_ensembles(const ExperimentConfig& cfg,
                                   const StableCalibration& cal);

// Normalized scenery sums n^{-(1+alpha)/(2 alpha)} * sum_{k<=n} zeta_{S_k}.
std::vector<double> run_rwrs_ensemble(const ExperimentConfig& cfg);

// Path statistics of the underlying walk over the scale grid:
// range R_n, self-intersection V_n, sum_y N_n(y)^beta_site and
// sum_y |bond_n(y) - mu_xi N_n(y)|^beta_mismatch.
struct GrowthLawEnsemble {
  std::vector<std::int64_t> n_grid;
  std::vector<std::vector<double>> range_val;          // [scale][replica]
  std::vector<std::vector<double>> self_intersection;  // [scale][replica]
  std::vector<std::vector<double>> site_moment;        // [scale][replica]
  std::vector<std::vector<double>> bond_mismatch;      // [scale][replica]
};
GrowthLawEnsemble run_growth_ensemble(const ExperimentConfig& cfg, double beta_site,
                                      double beta_mismatch);

// Monte Carlo mean of the occupation-density estimate of L_t(0).
double mean_local_time_at_zero(const ExperimentConfig& cfg, std::int64_t replicas,
                               double t, double dt, double dx);

struct FitRow {
  std::string quantity;
  double slope;
  double stderr_slope;
  double target;
};

struct KSRow {
  std::string comparison;
  double d;
  std::int64_t n_a;
  std::int64_t n_b;
  double p;
};

struct QuantileRow {
  std::string quantity;
  double scale;
  double time_point;
  double level;
  double value;
};

struct EnsembleResult {
  ExperimentConfig config;
  bool has_calibration = false;
  CalibrationResult calibration{};
  std::vector<QuantileRow> quantiles;
  std::vector<FitRow> fits;
  std::vector<KSRow> ks_rows;
  std::vector<std::pair<std::string, std::vector<double>>> samples;
  std::vector<std::string> stream_audit;
  double wall_seconds = 0.0;
};

// CSV renderers; what write_outputs puts on disk, byte for byte.
std::string render_quantiles_csv(const EnsembleResult& r);
std::string render_fits_csv(const EnsembleResult& r);
std::string render_kstests_csv(const EnsembleResult& r);
std::string render_sample_csv(const std::vector<double>& values);
// Manifest JSON; volatile keys (timestamps, wall clock) only when asked.
std::string render_manifest(const EnsembleResult& r, bool include_volatile);

void write_outputs(const EnsembleResult& r, const std::string& out_dir);

std::vector<double> read_sample_csv(const std::string& path);

// Subcommand drivers.
EnsembleResult run_calibrate(const ExperimentConfig& cfg);
EnsembleResult run_simulate(const ExperimentConfig& cfg);
EnsembleResult run_limit_sample(const ExperimentConfig& cfg);

struct AnalyzeOutcome {
  EnsembleResult result;
  std::vector<std::string> failures;  // populated in assert mode
};
// Sample files are looked up across the given directories in order, so
// the outputs of separate simulate and limit-sample runs combine.
AnalyzeOutcome run_analyze(const ExperimentConfig& cfg,
                           const std::vector<std::string>& in_dirs,
                           bool assert_mode);

// Conventional sample-file names shared by the writers and the analyzer.
std::string sample_name_y(std::int64_t n, double time_point);
std::string sample_name_t(std::int64_t n, double time_point);
std::string sample_name_x(double t);
std::string sample_name_xbar(double q, double s);
std::string sample_name_delta(double t);
std::string sample_name_composite(double s);
std::string sample_name_rwrs(std::int64_t n);

}  // namespace levygas

#endif
