#include "levygas/ensemble.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include <json.hpp>

#include "levygas/checks.hpp"
#include "levygas/errors.hpp"
#include "levygas/format.hpp"
#include "levygas/limit.hpp"
#include "levygas/medium.hpp"
#include "levygas/parallel.hpp"
#include "levygas/stats.hpp"
#include "levygas/walker.hpp"

namespace levygas {

namespace {

struct KahanAcc {
  double sum = 0.0;
  double carry = 0.0;
  void add(double v) {
    double term = v - carry;
    double next = sum + term;
    carry = (next - sum) - term;
    sum = next;
  }
};

double reference_time_point(const std::vector<double>& pts) {
  for (double t : pts)
    if (t == 1.0) return 1.0;
  return pts.front();
}

}  // namespace

ScalingEnsemble run_scaling_ensemble(const ExperimentConfig& cfg) {
  const GapDistribution dist = cfg.gap_distribution();
  const WalkSpec spec = cfg.walk_spec();
  ScalingEnsemble out;
  out.n_grid = cfg.scale_grid;
  out.time_points = cfg.time_points;

  struct Snap {
    std::int64_t k;
    std::size_t si, ti;
  };
  std::vector<Snap> snaps;
  std::int64_t n_sim = 0;
  for (std::size_t si = 0; si < out.n_grid.size(); ++si)
    for (std::size_t ti = 0; ti < out.time_points.size(); ++ti) {
      auto k = static_cast<std::int64_t>(
          std::floor(out.time_points[ti] * static_cast<double>(out.n_grid[si])));
      snaps.push_back({k, si, ti});
      n_sim = std::max(n_sim, k);
    }
  std::sort(snaps.begin(), snaps.end(),
            [](const Snap& a, const Snap& b) { return a.k < b.k; });

  const auto n_traj = static_cast<std::size_t>(cfg.n_trajectories);
  out.y_abs.assign(out.n_grid.size(),
                   std::vector<std::vector<double>>(
                       out.time_points.size(), std::vector<double>(n_traj)));
  out.t_val = out.y_abs;

  parallel_for_index(cfg.n_trajectories, cfg.workers, [&](std::int64_t i) {
    auto idx = stream_block::scaling + static_cast<std::uint64_t>(i);
    Environment env(dist, stream_key(cfg.master_seed, Purpose::environment, idx));
    RngStream walk_rng(cfg.master_seed, Purpose::walk, idx);
    std::int64_t pos = 0;
    double y = 0.0;
    KahanAcc t;
    std::size_t next_snap = 0;
    auto record = [&](std::int64_t k) {
      while (next_snap < snaps.size() && snaps[next_snap].k == k) {
        const Snap& sn = snaps[next_snap];
        out.y_abs[sn.si][sn.ti][static_cast<std::size_t>(i)] = std::abs(y);
        out.t_val[sn.si][sn.ti][static_cast<std::size_t>(i)] = t.sum;
        ++next_snap;
      }
    };
    record(0);
    for (std::int64_t k = 1; k <= n_sim; ++k) {
      pos += spec.sample_increment(walk_rng);
      double y_next = env.target(pos);
      t.add(std::abs(y_next - y));
      y = y_next;
      record(k);
    }
  });
  return out;
}

PositionEnsemble run_position_ensemble(const ExperimentConfig& cfg) {
  const GapDistribution dist = cfg.gap_distribution();
  const WalkSpec spec = cfg.walk_spec();
  PositionEnsemble out;
  out.times = cfg.x_times;
  std::sort(out.times.begin(), out.times.end());
  out.q = cfg.xbar_q;
  out.s_points = cfg.s_points;

  double horizon = out.times.back();
  double max_s = 0.0;
  for (double s : out.s_points) max_s = std::max(max_s, s);
  horizon = std::max(horizon, out.q * max_s);

  const auto n_traj = static_cast<std::size_t>(cfg.n_trajectories);
  out.x_abs.assign(out.times.size(), std::vector<double>(n_traj));
  out.xbar.assign(out.s_points.size(), std::vector<double>(n_traj));

  parallel_for_index(cfg.n_trajectories, cfg.workers, [&](std::int64_t i) {
    auto idx = stream_block::position + static_cast<std::uint64_t>(i);
    Environment env(dist, stream_key(cfg.master_seed, Purpose::environment, idx));
    RngStream walk_rng(cfg.master_seed, Purpose::walk, idx);
    WalkPath path;
    path.steps.push_back(0);
    Trajectory traj;
    std::int64_t chunk = 1024;
    do {
      extend_walk(path, spec, chunk, walk_rng);
      traj = run_trajectory(env, path);
      chunk *= 2;
    } while (traj.horizon() < horizon);
    PositionCursor cursor(traj);
    for (std::size_t ti = 0; ti < out.times.size(); ++ti)
      out.x_abs[ti][static_cast<std::size_t>(i)] = std::abs(cursor.at(out.times[ti]));
    RescaledSample xb = rescale_position(traj, cfg.alpha, out.q, out.s_points);
    for (std::size_t sj = 0; sj < out.s_points.size(); ++sj)
      out.xbar[sj][static_cast<std::size_t>(i)] = xb.values[sj];
  });
  return out;
}

LimitEnsembles run_limit_ensembles(const ExperimentConfig& cfg,
                                   const StableCalibration& cal) {
  const WalkSpec spec = cfg.walk_spec();
  const double v_xi = spec.v_xi();
  const double mu_xi = spec.mu_xi();
  LimitEnsembles out;
  out.delta_times = cfg.limit_times;
  out.composite_s = cfg.s_points;
  const auto reps = static_cast<std::size_t>(cfg.limit_replicas);
  out.delta.assign(out.delta_times.size(), std::vector<double>(reps));
  out.composite.assign(out.composite_s.size(), std::vector<double>(reps));

  for (std::size_t ti = 0; ti < out.delta_times.size(); ++ti) {
    const double t = out.delta_times[ti];
    parallel_for_index(cfg.limit_replicas, cfg.workers, [&](std::int64_t i) {
      auto idx = stream_block::delta + (static_cast<std::uint64_t>(ti) << 32) +
                 static_cast<std::uint64_t>(i);
      RngStream bm(cfg.master_seed, Purpose::brownian, idx);
      RngStream zp(cfg.master_seed, Purpose::sub_plus, idx);
      RngStream zm(cfg.master_seed, Purpose::sub_minus, idx);
      BrownianPath bp = sample_brownian(v_xi, t, cfg.dt_over_tmax * t, bm);
      LocalTimeField ltf = local_time_field(bp, cfg.dx, {t});
      SubordinatorField sub = sample_subordinator_field(cal, ltf, zp, zm);
      KSProcessSample ks = ks_process(ltf, sub, mu_xi);
      out.delta[ti][static_cast<std::size_t>(i)] = ks.delta[0];
    });
  }

  CompositeLimitParams params{v_xi, mu_xi, cal, cfg.dt_over_tmax, cfg.dx, 0.0, 5};
  parallel_for_index(cfg.limit_replicas, cfg.workers, [&](std::int64_t i) {
    auto idx = stream_block::composite + static_cast<std::uint64_t>(i);
    RngStream bm(cfg.master_seed, Purpose::brownian, idx);
    RngStream zp(cfg.master_seed, Purpose::sub_plus, idx);
    RngStream zm(cfg.master_seed, Purpose::sub_minus, idx);
    std::vector<double> vals = composite_limit_sample(params, out.composite_s, bm, zp, zm);
    for (std::size_t sj = 0; sj < out.composite_s.size(); ++sj)
      out.composite[sj][static_cast<std::size_t>(i)] = vals[sj];
  });
  return out;
}

std::vector<double> run_rwrs_ensemble(const ExperimentConfig& cfg) {
  const GapDistribution dist = cfg.gap_distribution();
  const WalkSpec spec = cfg.walk_spec();
  const double norm =
      std::pow(static_cast<double>(cfg.rwrs_n), -(1.0 + cfg.alpha) / (2.0 * cfg.alpha));
  std::vector<double> out(static_cast<std::size_t>(cfg.rwrs_replicas));
  parallel_for_index(cfg.rwrs_replicas, cfg.workers, [&](std::int64_t i) {
    auto idx = stream_block::rwrs + static_cast<std::uint64_t>(i);
    Environment env(dist, stream_key(cfg.master_seed, Purpose::environment, idx));
    RngStream walk_rng(cfg.master_seed, Purpose::walk, idx);
    WalkPath path = sample_walk(spec, cfg.rwrs_n, walk_rng);
    out[static_cast<std::size_t>(i)] = norm * rwrs_sum(env, path, cfg.rwrs_n);
  });
  return out;
}

GrowthLawEnsemble run_growth_ensemble(const ExperimentConfig& cfg, double beta_site,
                                      double beta_mismatch) {
  const WalkSpec spec = cfg.walk_spec();
  const double mu_xi = spec.mu_xi();
  GrowthLawEnsemble out;
  out.n_grid = cfg.scale_grid;
  const auto reps = static_cast<std::size_t>(cfg.growth_replicas);
  out.range_val.assign(out.n_grid.size(), std::vector<double>(reps));
  out.self_intersection = out.range_val;
  out.site_moment = out.range_val;
  out.bond_mismatch = out.range_val;
  const std::int64_t n_max = out.n_grid.back();

  parallel_for_index(cfg.growth_replicas, cfg.workers, [&](std::int64_t i) {
    RngStream walk_rng(cfg.master_seed, Purpose::walk,
                       stream_block::growth + static_cast<std::uint64_t>(i));
    std::unordered_map<std::int64_t, std::int64_t> site, bond;
    site.reserve(2048);
    bond.reserve(2048);
    std::int64_t pos = 0, range = 0, self_int = 0;
    std::size_t gi = 0;
    for (std::int64_t k = 1; k <= n_max; ++k) {
      // Site local time counts S_0..S_{n-1}, so index k accounts S_{k-1}.
      auto& c = site[pos];
      self_int += 2 * c + 1;
      if (c == 0) ++range;
      ++c;
      std::int64_t from = pos;
      pos += spec.sample_increment(walk_rng);
      if (pos > from)
        for (std::int64_t y = from + 1; y <= pos; ++y) ++bond[y];
      else
        for (std::int64_t y = pos + 1; y <= from; ++y) ++bond[y];

      if (gi < out.n_grid.size() && k == out.n_grid[gi]) {
        double site_sum = 0.0, mismatch = 0.0;
        for (const auto& [y, n_y] : site) {
          site_sum += std::pow(static_cast<double>(n_y), beta_site);
          auto it = bond.find(y);
          double b = it == bond.end() ? 0.0 : static_cast<double>(it->second);
          mismatch += std::pow(std::abs(b - mu_xi * static_cast<double>(n_y)),
                               beta_mismatch);
        }
        for (const auto& [y, b] : bond)
          if (!site.count(y))
            mismatch += std::pow(static_cast<double>(b), beta_mismatch);
        auto ii = static_cast<std::size_t>(i);
        out.range_val[gi][ii] = static_cast<double>(range);
        out.self_intersection[gi][ii] = static_cast<double>(self_int);
        out.site_moment[gi][ii] = site_sum;
        out.bond_mismatch[gi][ii] = mismatch;
        ++gi;
      }
    }
  });
  return out;
}

double mean_local_time_at_zero(const ExperimentConfig& cfg, std::int64_t replicas,
                               double t, double dt, double dx) {
  const WalkSpec spec = cfg.walk_spec();
  const double v_xi = spec.v_xi();
  std::vector<double> values(static_cast<std::size_t>(replicas));
  parallel_for_index(replicas, cfg.workers, [&](std::int64_t i) {
    RngStream bm(cfg.master_seed, Purpose::brownian,
                 stream_block::local_time + static_cast<std::uint64_t>(i));
    BrownianPath bp = sample_brownian(v_xi, t, dt, bm);
    std::int64_t hits = 0;
    for (std::size_t s = 0; s + 1 < bp.values.size(); ++s)
      if (bp.values[s] >= 0.0 && bp.values[s] < dx) ++hits;
    values[static_cast<std::size_t>(i)] = static_cast<double>(hits) * dt / dx;
  });
  KahanAcc acc;
  for (double v : values) acc.add(v);
  return acc.sum / static_cast<double>(replicas);
}

// ---------------------------------------------------------------------------
// Output rendering

std::string sample_name_y(std::int64_t n, double time_point) {
  std::string name = "y_abs_n" + std::to_string(n);
  if (time_point != 1.0) name += "_t" + fmt_compact(time_point);
  return name;
}
std::string sample_name_t(std::int64_t n, double time_point) {
  std::string name = "t_n" + std::to_string(n);
  if (time_point != 1.0) name += "_t" + fmt_compact(time_point);
  return name;
}
std::string sample_name_x(double t) { return "x_abs_t" + fmt_compact(t); }
std::string sample_name_xbar(double q, double s) {
  return "xbar_q" + fmt_compact(q) + "_s" + fmt_compact(s);
}
std::string sample_name_delta(double t) { return "delta_t" + fmt_compact(t); }
std::string sample_name_composite(double s) { return "composite_s" + fmt_compact(s); }
std::string sample_name_rwrs(std::int64_t n) {
  return "rwrs_scaled_n" + std::to_string(n);
}

std::string render_quantiles_csv(const EnsembleResult& r) {
  std::string out = "quantity,scale,time_point,quantile_level,value\n";
  for (const auto& row : r.quantiles)
    out += row.quantity + "," + fmt_g17(row.scale) + "," + fmt_g17(row.time_point) +
           "," + fmt_g17(row.level) + "," + fmt_g17(row.value) + "\n";
  return out;
}

std::string render_fits_csv(const EnsembleResult& r) {
  std::string out = "quantity,slope,stderr,target_exponent\n";
  for (const auto& row : r.fits)
    out += row.quantity + "," + fmt_g17(row.slope) + "," + fmt_g17(row.stderr_slope) +
           "," + fmt_g17(row.target) + "\n";
  return out;
}

std::string render_kstests_csv(const EnsembleResult& r) {
  std::string out = "comparison,D,n_a,n_b,p\n";
  for (const auto& row : r.ks_rows)
    out += row.comparison + "," + fmt_g17(row.d) + "," + std::to_string(row.n_a) + "," +
           std::to_string(row.n_b) + "," + fmt_g17(row.p) + "\n";
  return out;
}

std::string render_sample_csv(const std::vector<double>& values) {
  std::string out = "trajectory,value\n";
  for (std::size_t i = 0; i < values.size(); ++i)
    out += std::to_string(i) + "," + fmt_g17(values[i]) + "\n";
  return out;
}

std::string render_manifest(const EnsembleResult& r, bool include_volatile) {
  nlohmann::ordered_json m;
  m["config"] = nlohmann::ordered_json::parse(config_to_json(r.config));
  if (r.has_calibration) {
    m["calibration"] = {{"alpha", r.calibration.cal.alpha},
                        {"scale", r.calibration.cal.scale},
                        {"c1", r.calibration.cal.c1},
                        {"ks_distance", r.calibration.ks_distance},
                        {"n_block", r.calibration.n_block},
                        {"n_samples", r.calibration.n_samples}};
  }
  auto fits = nlohmann::ordered_json::array();
  for (const auto& f : r.fits)
    fits.push_back({{"quantity", f.quantity},
                    {"slope", f.slope},
                    {"stderr", f.stderr_slope},
                    {"target_exponent", f.target}});
  m["fits"] = fits;
  auto ks = nlohmann::ordered_json::array();
  for (const auto& k : r.ks_rows)
    ks.push_back({{"comparison", k.comparison},
                  {"D", k.d},
                  {"n_a", k.n_a},
                  {"n_b", k.n_b},
                  {"p", k.p}});
  m["ks_tests"] = ks;
  auto names = nlohmann::ordered_json::array();
  for (const auto& [name, values] : r.samples)
    names.push_back({{"name", name}, {"size", values.size()}});
  m["samples"] = names;
  m["stream_audit"] = r.stream_audit;
  // Distributional tolerances are engineering budgets of this artifact,
  // not claims of the underlying theory; recorded here per run.
  m["tolerance_note"] =
      "KS acceptance thresholds carry a +0.05 discretization allowance over "
      "the asymptotic 1% critical value; no convergence rate is asserted.";
  if (include_volatile) {
    m["wall_seconds"] = r.wall_seconds;
    auto now = std::chrono::system_clock::now();
    m["created_unix"] =
        std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch())
            .count();
  }
  return m.dump(2) + "\n";
}

void write_outputs(const EnsembleResult& r, const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(fs::path(out_dir) / "samples");
  auto dump = [](const fs::path& p, const std::string& content) {
    std::ofstream out(p);
    if (!out) throw std::runtime_error("cannot write " + p.string());
    out << content;
  };
  dump(fs::path(out_dir) / "manifest.json", render_manifest(r, true));
  dump(fs::path(out_dir) / "quantiles.csv", render_quantiles_csv(r));
  dump(fs::path(out_dir) / "fits.csv", render_fits_csv(r));
  dump(fs::path(out_dir) / "kstests.csv", render_kstests_csv(r));
  for (const auto& [name, values] : r.samples)
    dump(fs::path(out_dir) / "samples" / (name + ".csv"), render_sample_csv(values));
}

std::vector<double> read_sample_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read sample file: " + path);
  std::vector<double> values;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (header) {
      header = false;
      continue;
    }
    if (line.empty()) continue;
    auto comma = line.find(',');
    if (comma == std::string::npos)
      throw std::runtime_error("malformed sample row in " + path);
    values.push_back(std::stod(line.substr(comma + 1)));
  }
  return values;
}

// ---------------------------------------------------------------------------
// Subcommand drivers

namespace {

class WallTimer {
public:
  WallTimer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
        .count();
  }

private:
  std::chrono::steady_clock::time_point start_;
};

void append_quantiles(EnsembleResult& r, const std::string& quantity, double scale,
                      double time_point, const std::vector<double>& sample) {
  std::vector<double> sorted(sample);
  std::sort(sorted.begin(), sorted.end());
  for (double level : r.config.quantile_levels)
    r.quantiles.push_back(
        {quantity, scale, time_point, level, quantile_sorted(sorted, level)});
}

bool fit_well_posed(const ExperimentConfig& cfg, std::size_t n_scales) {
  return n_scales >= 4 && cfg.n_trajectories >= 200;
}

}  // namespace

EnsembleResult run_calibrate(const ExperimentConfig& cfg) {
  cfg.validate();
  WallTimer timer;
  EnsembleResult r;
  r.config = cfg;
  r.calibration = calibrate_stable_scale(cfg.gap_distribution(), cfg.calib_n_block,
                                         cfg.calib_n_samples, cfg.master_seed,
                                         cfg.calib_ks_ceiling);
  r.has_calibration = true;
  r.stream_audit.push_back("calib_block/calib_stable: indices [0, " +
                           std::to_string(cfg.calib_n_samples) + ")");
  r.wall_seconds = timer.seconds();
  return r;
}

EnsembleResult run_simulate(const ExperimentConfig& cfg) {
  cfg.validate();
  WallTimer timer;
  EnsembleResult r;
  r.config = cfg;

  ScalingEnsemble se = run_scaling_ensemble(cfg);
  for (std::size_t si = 0; si < se.n_grid.size(); ++si)
    for (std::size_t ti = 0; ti < se.time_points.size(); ++ti) {
      auto scale = static_cast<double>(se.n_grid[si]);
      r.samples.emplace_back(sample_name_y(se.n_grid[si], se.time_points[ti]),
                             se.y_abs[si][ti]);
      r.samples.emplace_back(sample_name_t(se.n_grid[si], se.time_points[ti]),
                             se.t_val[si][ti]);
      append_quantiles(r, "y_abs", scale, se.time_points[ti], se.y_abs[si][ti]);
      append_quantiles(r, "collision_time", scale, se.time_points[ti],
                       se.t_val[si][ti]);
    }

  double t_ref = reference_time_point(se.time_points);
  std::size_t t_ref_idx = 0;
  for (std::size_t ti = 0; ti < se.time_points.size(); ++ti)
    if (se.time_points[ti] == t_ref) t_ref_idx = ti;
  if (fit_well_posed(cfg, se.n_grid.size())) {
    std::map<double, std::vector<double>> y_map, t_map;
    for (std::size_t si = 0; si < se.n_grid.size(); ++si) {
      y_map[static_cast<double>(se.n_grid[si])] = se.y_abs[si][t_ref_idx];
      t_map[static_cast<double>(se.n_grid[si])] = se.t_val[si][t_ref_idx];
    }
    ExponentFit fy = quantile_exponent_fit(y_map, 0.5);
    ExponentFit ft = quantile_exponent_fit(t_map, 0.5);
    r.fits.push_back({"y_abs", fy.slope, fy.stderr_slope, windows::y_target(cfg.alpha)});
    r.fits.push_back(
        {"collision_time", ft.slope, ft.stderr_slope, windows::t_target(cfg.alpha)});
  }

  PositionEnsemble pe = run_position_ensemble(cfg);
  for (std::size_t ti = 0; ti < pe.times.size(); ++ti) {
    r.samples.emplace_back(sample_name_x(pe.times[ti]), pe.x_abs[ti]);
    append_quantiles(r, "x_abs", pe.times[ti], 0.0, pe.x_abs[ti]);
  }
  for (std::size_t sj = 0; sj < pe.s_points.size(); ++sj)
    r.samples.emplace_back(sample_name_xbar(pe.q, pe.s_points[sj]), pe.xbar[sj]);
  if (fit_well_posed(cfg, pe.times.size())) {
    std::map<double, std::vector<double>> x_map;
    for (std::size_t ti = 0; ti < pe.times.size(); ++ti)
      x_map[pe.times[ti]] = pe.x_abs[ti];
    ExponentFit fx = quantile_exponent_fit(x_map, 0.5);
    r.fits.push_back({"x_abs", fx.slope, fx.stderr_slope, windows::x_target(cfg.alpha)});
  }

  r.samples.emplace_back(sample_name_rwrs(cfg.rwrs_n), run_rwrs_ensemble(cfg));

  r.stream_audit.push_back(
      "environment/walk: scaling ensemble indices [scaling, scaling + " +
      std::to_string(cfg.n_trajectories) + ")");
  r.stream_audit.push_back(
      "environment/walk: position ensemble indices [position, position + " +
      std::to_string(cfg.n_trajectories) + ")");
  r.stream_audit.push_back("environment/walk: rwrs ensemble indices [rwrs, rwrs + " +
                           std::to_string(cfg.rwrs_replicas) + ")");
  r.wall_seconds = timer.seconds();
  return r;
}

EnsembleResult run_limit_sample(const ExperimentConfig& cfg) {
  cfg.validate();
  WallTimer timer;
  EnsembleResult r = run_calibrate(cfg);

  LimitEnsembles le = run_limit_ensembles(cfg, r.calibration.cal);
  for (std::size_t ti = 0; ti < le.delta_times.size(); ++ti)
    r.samples.emplace_back(sample_name_delta(le.delta_times[ti]), le.delta[ti]);
  for (std::size_t sj = 0; sj < le.composite_s.size(); ++sj)
    r.samples.emplace_back(sample_name_composite(le.composite_s[sj]),
                           le.composite[sj]);

  // Self-similarity: Delta(t)/t^{(1+alpha)/(2 alpha)} has a t-independent
  // law; pairwise KS across the configured times.
  const double expo = (1.0 + cfg.alpha) / (2.0 * cfg.alpha);
  std::vector<std::vector<double>> rescaled(le.delta_times.size());
  for (std::size_t ti = 0; ti < le.delta_times.size(); ++ti) {
    rescaled[ti] = le.delta[ti];
    double denom = std::pow(le.delta_times[ti], expo);
    for (double& v : rescaled[ti]) v /= denom;
  }
  for (std::size_t a = 0; a < rescaled.size(); ++a)
    for (std::size_t b = a + 1; b < rescaled.size(); ++b) {
      KSTestResult ks = ks_two_sample(rescaled[a], rescaled[b]);
      r.ks_rows.push_back({"delta_selfsim_t" + fmt_compact(le.delta_times[a]) +
                               "_vs_t" + fmt_compact(le.delta_times[b]),
                           ks.statistic, ks.n_a, ks.n_b, ks.p_value});
    }

  r.stream_audit.push_back(
      "brownian/sub_plus/sub_minus: delta ensembles indices [delta + t_index*2^32, "
      "... + " +
      std::to_string(cfg.limit_replicas) + ")");
  r.stream_audit.push_back(
      "brownian/sub_plus/sub_minus: composite ensemble indices [composite, composite "
      "+ " +
      std::to_string(cfg.limit_replicas) + ")");
  r.wall_seconds = timer.seconds();
  return r;
}

AnalyzeOutcome run_analyze(const ExperimentConfig& cfg,
                           const std::vector<std::string>& in_dirs,
                           bool assert_mode) {
  namespace fs = std::filesystem;
  cfg.validate();
  if (in_dirs.empty()) throw std::invalid_argument("analyze needs an input directory");
  WallTimer timer;
  AnalyzeOutcome outcome;
  EnsembleResult& r = outcome.result;
  r.config = cfg;

  auto sample_path = [&](const std::string& name) {
    for (const auto& dir : in_dirs) {
      fs::path p = fs::path(dir) / "samples" / (name + ".csv");
      if (fs::exists(p)) return p.string();
    }
    return (fs::path(in_dirs.front()) / "samples" / (name + ".csv")).string();
  };
  auto have = [&](const std::string& name) { return fs::exists(sample_path(name)); };
  auto fail = [&](const std::string& msg) {
    if (assert_mode) outcome.failures.push_back(msg);
  };

  double t_ref = reference_time_point(cfg.time_points);

  // Scaling-exponent fits from stored per-trajectory samples.
  struct FitSpecRow {
    std::string quantity;
    double target;
    double tol;
    std::function<std::string(std::int64_t)> name;
  };
  std::vector<FitSpecRow> fit_rows = {
      {"y_abs", windows::y_target(cfg.alpha), windows::slope_tol_y,
       [&](std::int64_t n) { return sample_name_y(n, t_ref); }},
      {"collision_time", windows::t_target(cfg.alpha), windows::slope_tol_t,
       [&](std::int64_t n) { return sample_name_t(n, t_ref); }},
  };
  for (const auto& row : fit_rows) {
    std::map<double, std::vector<double>> m;
    bool complete = cfg.scale_grid.size() >= 4;
    for (std::int64_t n : cfg.scale_grid) {
      if (!have(row.name(n))) {
        complete = false;
        break;
      }
      m[static_cast<double>(n)] = read_sample_csv(sample_path(row.name(n)));
      if (m.rbegin()->second.size() < 200) {  // too thin for a stable fit
        complete = false;
        break;
      }
    }
    if (!complete) continue;
    ExponentFit fit = quantile_exponent_fit(m, 0.5);
    r.fits.push_back({row.quantity, fit.slope, fit.stderr_slope, row.target});
    if (std::abs(fit.slope - row.target) > row.tol)
      fail(row.quantity + " slope " + fmt_g17(fit.slope) + " outside " +
           fmt_g17(row.target) + " +/- " + fmt_g17(row.tol));
  }

  {
    std::map<double, std::vector<double>> m;
    bool complete = cfg.x_times.size() >= 4;
    for (double t : cfg.x_times) {
      if (!have(sample_name_x(t))) {
        complete = false;
        break;
      }
      m[t] = read_sample_csv(sample_path(sample_name_x(t)));
      if (m.rbegin()->second.size() < 200) {
        complete = false;
        break;
      }
    }
    if (complete) {
      ExponentFit fit = quantile_exponent_fit(m, 0.5);
      double target = windows::x_target(cfg.alpha);
      r.fits.push_back({"x_abs", fit.slope, fit.stderr_slope, target});
      if (std::abs(fit.slope - target) > windows::slope_tol_x)
        fail("x_abs slope " + fmt_g17(fit.slope) + " outside " + fmt_g17(target) +
             " +/- " + fmt_g17(windows::slope_tol_x));
    }
  }

  auto ks_check = [&](const std::string& name_a, const std::string& name_b,
                      const std::string& label, bool rescale_selfsim, double ta,
                      double tb) {
    if (!have(name_a) || !have(name_b)) return;
    std::vector<double> a = read_sample_csv(sample_path(name_a));
    std::vector<double> b = read_sample_csv(sample_path(name_b));
    if (rescale_selfsim) {
      const double expo = (1.0 + cfg.alpha) / (2.0 * cfg.alpha);
      for (double& v : a) v /= std::pow(ta, expo);
      for (double& v : b) v /= std::pow(tb, expo);
    }
    KSTestResult ks = ks_two_sample(a, b);
    r.ks_rows.push_back({label, ks.statistic, ks.n_a, ks.n_b, ks.p_value});
    double bound =
        ks_critical_value(windows::ks_level, ks.n_a, ks.n_b) + windows::ks_allowance;
    if (ks.statistic >= bound)
      fail(label + ": D " + fmt_g17(ks.statistic) + " >= bound " + fmt_g17(bound));
  };

  for (double s : cfg.s_points)
    ks_check(sample_name_xbar(cfg.xbar_q, s), sample_name_composite(s),
             sample_name_xbar(cfg.xbar_q, s) + "_vs_" + sample_name_composite(s),
             false, 0, 0);
  ks_check(sample_name_delta(1.0), sample_name_rwrs(cfg.rwrs_n),
           "delta_t1_vs_" + sample_name_rwrs(cfg.rwrs_n), false, 0, 0);
  for (std::size_t a = 0; a < cfg.limit_times.size(); ++a)
    for (std::size_t b = a + 1; b < cfg.limit_times.size(); ++b)
      ks_check(sample_name_delta(cfg.limit_times[a]),
               sample_name_delta(cfg.limit_times[b]),
               "delta_selfsim_t" + fmt_compact(cfg.limit_times[a]) + "_vs_t" +
                   fmt_compact(cfg.limit_times[b]),
               true, cfg.limit_times[a], cfg.limit_times[b]);

  r.wall_seconds = timer.seconds();
  return outcome;
}

}  // namespace levygas
