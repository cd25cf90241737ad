#include "levygas/checks.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>

#include "levygas/ensemble.hpp"
#include "levygas/errors.hpp"
#include "levygas/format.hpp"
#include "levygas/limit.hpp"
#include "levygas/medium.hpp"
#include "levygas/parallel.hpp"
#include "levygas/stats.hpp"
#include "levygas/walker.hpp"

namespace levygas {

namespace {

constexpr double kTwoOverPi = 0.63661977236758134308;

std::string pass_fail(bool ok) { return ok ? "pass" : "FAIL"; }

// Spearman rank correlation; ties are impossible for continuous draws.
double spearman(const std::vector<double>& a, const std::vector<double>& b) {
  auto ranks = [](const std::vector<double>& v) {
    std::vector<std::size_t> order(v.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return v[x] < v[y]; });
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < order.size(); ++i)
      r[order[i]] = static_cast<double>(i);
    return r;
  };
  std::vector<double> ra = ranks(a), rb = ranks(b);
  double n = static_cast<double>(a.size());
  double mean = (n - 1.0) / 2.0;
  double num = 0.0, va = 0.0, vb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += (ra[i] - mean) * (rb[i] - mean);
    va += (ra[i] - mean) * (ra[i] - mean);
    vb += (rb[i] - mean) * (rb[i] - mean);
  }
  return num / std::sqrt(va * vb);
}

ExperimentConfig determinism_config(const ExperimentConfig& base) {
  ExperimentConfig c = base;
  c.n_trajectories = 32;
  c.scale_grid = {100, 200, 400, 800};
  c.time_points = {1.0};
  c.x_times = {50, 100, 200, 400};
  c.xbar_q = 100;
  c.s_points = {1.0};
  c.limit_times = {0.5, 1.0};
  c.limit_replicas = 8;
  c.dt_over_tmax = 0.005;
  c.rwrs_n = 1000;
  c.rwrs_replicas = 16;
  c.growth_replicas = 4;
  c.out_dir = base.out_dir;
  return c;
}

std::string result_bytes(const EnsembleResult& r) {
  std::string s = render_quantiles_csv(r) + render_fits_csv(r) + render_kstests_csv(r) +
                  render_manifest(r, false);
  for (const auto& [name, values] : r.samples)
    s += name + "\n" + render_sample_csv(values);
  return s;
}

struct IdentityStats {
  double max_scenery_rel = 0.0;
  double max_increment_rel = 0.0;
  bool bond_split_ok = true;
  bool conservation_ok = true;
};

IdentityStats identity_sweep(const ExperimentConfig& cfg, std::int64_t instances,
                             std::int64_t n_steps) {
  const GapDistribution dist = cfg.gap_distribution();
  const WalkSpec spec = cfg.walk_spec();
  std::vector<IdentityStats> per(static_cast<std::size_t>(instances));
  parallel_for_index(instances, cfg.workers, [&](std::int64_t i) {
    auto idx = stream_block::diagnostics + static_cast<std::uint64_t>(i);
    Environment env(dist, stream_key(cfg.master_seed, Purpose::environment, idx));
    RngStream walk_rng(cfg.master_seed, Purpose::walk, idx);
    WalkPath path = sample_walk(spec, n_steps, walk_rng);
    Trajectory traj = run_trajectory(env, path);
    LocalTimeProfile prof = local_time_profile(path);
    IdentityStats& st = per[static_cast<std::size_t>(i)];

    double direct = traj.t.back();
    double scenery = scenery_collision_time(env, prof);
    st.max_scenery_rel = std::abs(scenery - direct) / std::max(1.0, std::abs(direct));

    for (std::size_t k = 1; k < traj.t.size(); ++k) {
      double jump = std::abs(traj.y[k] - traj.y[k - 1]);
      double dt = traj.t[k] - traj.t[k - 1];
      double rel = std::abs(dt - jump) / std::max({1.0, jump, traj.t[k]});
      st.max_increment_rel = std::max(st.max_increment_rel, rel);
    }

    std::int64_t total_bond = 0;
    for (const auto& [y, count] : prof.bond) {
      auto minus = prof.bond_minus.count(y) ? prof.bond_minus.at(y) : 0;
      auto plus = prof.bond_plus.count(y) ? prof.bond_plus.at(y) : 0;
      if (count != minus + plus) st.bond_split_ok = false;
      total_bond += count;
    }
    std::int64_t total_jump = 0;
    for (std::size_t k = 1; k < path.steps.size(); ++k)
      total_jump += std::abs(path.steps[k] - path.steps[k - 1]);
    if (total_bond != total_jump) st.conservation_ok = false;
  });

  IdentityStats agg;
  for (const auto& st : per) {
    agg.max_scenery_rel = std::max(agg.max_scenery_rel, st.max_scenery_rel);
    agg.max_increment_rel = std::max(agg.max_increment_rel, st.max_increment_rel);
    agg.bond_split_ok = agg.bond_split_ok && st.bond_split_ok;
    agg.conservation_ok = agg.conservation_ok && st.conservation_ok;
  }
  return agg;
}

}  // namespace

std::vector<CheckResult> run_identity_checks(const ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<CheckResult> out;
  const WalkSpec spec = cfg.walk_spec();

  {
    IdentityStats st = identity_sweep(cfg, 1000, 10000);
    out.push_back({"scenery-identity", st.max_scenery_rel <= 1e-9,
                   "max relative gap between scenery sum and direct collision time: " +
                       fmt_g17(st.max_scenery_rel) + " (bound 1e-9)"});
    out.push_back({"bond-split", st.bond_split_ok,
                   "bond crossings equal left-to-right plus right-to-left counts"});
    out.push_back({"path-length-conservation", st.conservation_ok,
                   "sum of bond crossings equals total jump length (integer exact)"});
    out.push_back({"trajectory-increment-identity", st.max_increment_rel <= 1e-12,
                   "max relative gap between |dY| and dT: " +
                       fmt_g17(st.max_increment_rel) + " (bound 1e-12)"});
  }

  {
    // Unit speed: |X(t2)-X(t1)| <= t2-t1, with equality inside one
    // inter-collision interval.
    bool ok = true;
    double worst = 0.0;
    const GapDistribution dist = cfg.gap_distribution();
    for (std::int64_t i = 0; i < 64 && ok; ++i) {
      auto idx = stream_block::diagnostics + (1ull << 32) + static_cast<std::uint64_t>(i);
      Environment env(dist, stream_key(cfg.master_seed, Purpose::environment, idx));
      RngStream walk_rng(cfg.master_seed, Purpose::walk, idx);
      RngStream probe(cfg.master_seed, Purpose::scratch, idx);
      Trajectory traj = run_trajectory(env, sample_walk(spec, 1000, walk_rng));
      double horizon = traj.horizon();
      for (int rep = 0; rep < 64; ++rep) {
        double t1 = probe.uniform01() * horizon;
        double t2 = probe.uniform01() * horizon;
        if (t1 > t2) std::swap(t1, t2);
        double lhs = std::abs(position_at(traj, t2) - position_at(traj, t1));
        double excess = lhs - (t2 - t1);
        worst = std::max(worst, excess);
        if (excess > 1e-9 * std::max(1.0, t2 - t1)) ok = false;
      }
      for (std::size_t k = 0; ok && k + 1 < traj.t.size(); k += 97) {
        double mid1 = traj.t[k] + 0.25 * (traj.t[k + 1] - traj.t[k]);
        double mid2 = traj.t[k] + 0.75 * (traj.t[k + 1] - traj.t[k]);
        double lhs = std::abs(position_at(traj, mid2) - position_at(traj, mid1));
        if (std::abs(lhs - (mid2 - mid1)) > 1e-9 * std::max(1.0, mid2 - mid1))
          ok = false;
      }
    }
    out.push_back({"unit-speed-interpolation", ok,
                   "Lipschitz-1 between collisions, unit speed within intervals; "
                   "worst excess " +
                       fmt_g17(worst)});
  }

  {
    bool occupation_ok = true, support_ok = true;
    double worst = 0.0;
    for (std::int64_t i = 0; i < 16; ++i) {
      RngStream bm(cfg.master_seed, Purpose::brownian,
                   stream_block::diagnostics + static_cast<std::uint64_t>(i));
      BrownianPath bp = sample_brownian(spec.v_xi(), 1.0, 1e-4, bm);
      LocalTimeField ltf = local_time_field(bp, 0.02, {0.3, 0.7, 1.0});
      auto [mn, mx] = std::minmax_element(bp.values.begin(), bp.values.end());
      for (std::size_t ti = 0; ti < ltf.times.size(); ++ti) {
        double mass = 0.0;
        for (double v : ltf.density[ti]) {
          if (v < 0.0) occupation_ok = false;
          mass += v * ltf.dx;
        }
        double rel = std::abs(mass - ltf.times[ti]) / ltf.times[ti];
        worst = std::max(worst, rel);
        if (rel > 1e-9) occupation_ok = false;
        for (std::int64_t b = ltf.bin_lo; b <= ltf.bin_hi; ++b) {
          if (ltf.at(ti, b) == 0.0) continue;
          double lo = static_cast<double>(b) * ltf.dx;
          if (lo + ltf.dx < *mn - ltf.dx || lo > *mx + ltf.dx) support_ok = false;
        }
      }
    }
    out.push_back({"occupation-identity", occupation_ok,
                   "sum L_t dx = t, worst relative gap " + fmt_g17(worst) +
                       " (bound 1e-9); L nonnegative"});
    out.push_back({"local-time-support", support_ok,
                   "L_t supported inside the sampled Brownian range, one bin slack"});
  }

  {
    bool delta_ok = true, z_ok = true;
    CalibrationResult calib = calibrate_stable_scale(
        cfg.gap_distribution(), cfg.calib_n_block, cfg.calib_n_samples,
        cfg.master_seed, cfg.calib_ks_ceiling);
    std::vector<double> times = {0.0, 0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0};
    for (std::int64_t i = 0; i < 32; ++i) {
      auto idx = stream_block::diagnostics + (2ull << 32) + static_cast<std::uint64_t>(i);
      RngStream bm(cfg.master_seed, Purpose::brownian, idx);
      RngStream zp(cfg.master_seed, Purpose::sub_plus, idx);
      RngStream zm(cfg.master_seed, Purpose::sub_minus, idx);
      BrownianPath bp = sample_brownian(spec.v_xi(), 2.0, 2e-4, bm);
      LocalTimeField ltf = local_time_field(bp, cfg.dx, times);
      SubordinatorField sub = sample_subordinator_field(calib.cal, ltf, zp, zm);
      KSProcessSample ks = ks_process(ltf, sub, spec.mu_xi());
      if (ks.delta[0] != 0.0) delta_ok = false;
      for (std::size_t k = 1; k < ks.delta.size(); ++k)
        if (!(ks.delta[k] > ks.delta[k - 1])) delta_ok = false;
      for (double v : sub.inc_plus)
        if (!(v > 0.0)) z_ok = false;
      for (double v : sub.inc_minus)
        if (!(v > 0.0)) z_ok = false;
      // Z at resolved bin boundaries, by prefix sums, strictly increases.
      std::vector<double> boundary;
      double acc = 0.0;
      for (double v : sub.inc_minus) boundary.push_back(acc -= v);
      std::reverse(boundary.begin(), boundary.end());
      boundary.push_back(0.0);
      acc = 0.0;
      for (double v : sub.inc_plus) boundary.push_back(acc += v);
      for (std::size_t j = 1; j < boundary.size(); ++j)
        if (!(boundary[j] > boundary[j - 1])) z_ok = false;
    }
    out.push_back({"delta-monotonicity", delta_ok,
                   "Delta(0) = 0 and Delta strictly increasing across the grid"});
    out.push_back({"subordinator-monotonicity", z_ok,
                   "all stable increments positive; reconstructed Z strictly "
                   "increasing"});
  }

  {
    const GapDistribution dist = cfg.gap_distribution();
    int passing = 0;
    const int reps = 100;
    std::vector<int> ok(reps);
    parallel_for_index(reps, cfg.workers, [&](std::int64_t i) {
      auto draw = [&](std::uint64_t salt) {
        RngStream rng(cfg.master_seed, Purpose::scratch,
                      stream_block::nulls + 2 * static_cast<std::uint64_t>(i) + salt);
        std::vector<double> v(10000);
        for (auto& x : v) x = sample_gap(dist, rng);
        return v;
      };
      KSTestResult ks = ks_two_sample(draw(0), draw(1));
      ok[static_cast<std::size_t>(i)] = ks.p_value > 0.01 ? 1 : 0;
    });
    for (int v : ok) passing += v;
    out.push_back({"null-ks-calibration", passing >= 98,
                   "same-law KS null: p > 0.01 in " + std::to_string(passing) +
                       "/100 repetitions (need >= 98)"});
  }

  {
    CalibrationResult a = calibrate_stable_scale(cfg.gap_distribution(),
                                                 cfg.calib_n_block, cfg.calib_n_samples,
                                                 cfg.master_seed, cfg.calib_ks_ceiling);
    CalibrationResult b = calibrate_stable_scale(cfg.gap_distribution(),
                                                 cfg.calib_n_block, cfg.calib_n_samples,
                                                 cfg.master_seed, cfg.calib_ks_ceiling);
    out.push_back({"calibration-determinism", a.cal.scale == b.cal.scale,
                   "same master seed twice: scale " + fmt_g17(a.cal.scale) + " vs " +
                       fmt_g17(b.cal.scale) + " (bit-identical required)"});
  }

  {
    ExperimentConfig small = determinism_config(cfg);
    std::string first = result_bytes(run_simulate(small));
    std::string second = result_bytes(run_simulate(small));
    out.push_back({"simulate-determinism", first == second,
                   "identical config run twice: outputs byte-identical"});

    ExperimentConfig w1 = small, w8 = small;
    w1.workers = 1;
    w8.workers = 8;
    EnsembleResult r1 = run_simulate(w1);
    EnsembleResult r8 = run_simulate(w8);
    r1.config.workers = 0;  // worker count is not part of the numeric contract
    r8.config.workers = 0;
    out.push_back({"worker-invariance", result_bytes(r1) == result_bytes(r8),
                   "1 vs 8 workers: outputs byte-identical"});
  }

  return out;
}

namespace {

CheckResult slope_criterion(const std::string& name,
                            const std::map<double, std::vector<double>>& ensembles,
                            double target, double tol) {
  ExponentFit fit = quantile_exponent_fit(ensembles, 0.5);
  bool ok = std::abs(fit.slope - target) <= tol;
  return {name, ok,
          "slope " + fmt_g17(fit.slope) + " (stderr " + fmt_g17(fit.stderr_slope) +
              "), target " + fmt_g17(target) + " +/- " + fmt_g17(tol)};
}

std::string ks_detail(const KSTestResult& ks, double bound) {
  return "D = " + fmt_g17(ks.statistic) + " vs bound " + fmt_g17(bound) + " (p = " +
         fmt_g17(ks.p_value) + ")";
}

}  // namespace

std::vector<CheckResult> run_acceptance_checks(const ExperimentConfig& cfg,
                                               std::ostream* progress) {
  cfg.validate();
  auto note = [&](const std::string& msg) {
    if (progress) *progress << "... " << msg << "\n" << std::flush;
  };
  std::vector<CheckResult> out;

  note("exact identities (1000 instances, n = 10^4)");
  std::vector<CheckResult> identity = run_identity_checks(cfg);
  auto find = [&](const std::string& name) -> const CheckResult& {
    for (const auto& c : identity)
      if (c.name == name) return c;
    throw std::logic_error("missing identity check " + name);
  };
  {
    const CheckResult& a = find("scenery-identity");
    const CheckResult& b = find("bond-split");
    const CheckResult& c = find("path-length-conservation");
    out.push_back({"exact-identities", a.pass && b.pass && c.pass,
                   a.detail + "; bond split " + pass_fail(b.pass) +
                       "; length conservation " + pass_fail(c.pass)});
  }

  note("calibrating stable scale");
  CalibrationResult calib = calibrate_stable_scale(cfg.gap_distribution(),
                                                   cfg.calib_n_block,
                                                   cfg.calib_n_samples, cfg.master_seed,
                                                   cfg.calib_ks_ceiling);

  note("trajectory scaling ensemble (|Y_n|, T_n)");
  ScalingEnsemble se = run_scaling_ensemble(cfg);
  double t_ref = 1.0;
  std::size_t t_ref_idx = 0;
  for (std::size_t ti = 0; ti < se.time_points.size(); ++ti)
    if (se.time_points[ti] == t_ref) t_ref_idx = ti;
  {
    std::map<double, std::vector<double>> y_map, t_map;
    for (std::size_t si = 0; si < se.n_grid.size(); ++si) {
      y_map[static_cast<double>(se.n_grid[si])] = se.y_abs[si][t_ref_idx];
      t_map[static_cast<double>(se.n_grid[si])] = se.t_val[si][t_ref_idx];
    }
    out.push_back(slope_criterion("y-scaling", y_map, windows::y_target(cfg.alpha),
                                  windows::slope_tol_y));
    out.push_back(slope_criterion("t-scaling", t_map, windows::t_target(cfg.alpha),
                                  windows::slope_tol_t));
  }

  note("interpolated-position ensemble and composite limit draws");
  PositionEnsemble pe = run_position_ensemble(cfg);
  LimitEnsembles le = run_limit_ensembles(cfg, calib.cal);
  {
    std::map<double, std::vector<double>> x_map;
    for (std::size_t ti = 0; ti < pe.times.size(); ++ti)
      x_map[pe.times[ti]] = pe.x_abs[ti];
    CheckResult slope = slope_criterion("x-scaling", x_map, windows::x_target(cfg.alpha),
                                        windows::slope_tol_x);
    // Distributional half: rescaled positions against the composite limit.
    std::size_t s1 = 0;
    for (std::size_t sj = 0; sj < pe.s_points.size(); ++sj)
      if (pe.s_points[sj] == 1.0) s1 = sj;
    KSTestResult ks = ks_two_sample(pe.xbar[s1], le.composite[s1]);
    double bound =
        ks_critical_value(windows::ks_level, ks.n_a, ks.n_b) + windows::ks_allowance;
    bool ks_ok = ks.statistic < bound;
    out.push_back({"x-scaling-and-limit-match", slope.pass && ks_ok,
                   slope.detail + "; limit match " + ks_detail(ks, bound)});
  }

  note("scenery-sum oracle for the Kesten-Spitzer process");
  {
    std::vector<double> rwrs = run_rwrs_ensemble(cfg);
    std::size_t t1 = 0;
    for (std::size_t ti = 0; ti < le.delta_times.size(); ++ti)
      if (le.delta_times[ti] == 1.0) t1 = ti;
    KSTestResult ks = ks_two_sample(le.delta[t1], rwrs);
    double bound =
        ks_critical_value(windows::ks_level, ks.n_a, ks.n_b) + windows::ks_allowance;
    out.push_back(
        {"ks-process-oracle", ks.statistic < bound, ks_detail(ks, bound)});
  }

  note("path-statistic growth laws (" + std::to_string(cfg.growth_replicas) +
       " replicas)");
  {
    GrowthLawEnsemble ge = run_growth_ensemble(cfg, 0.5, cfg.alpha);
    auto to_map = [&](const std::vector<std::vector<double>>& per_scale) {
      std::map<double, std::vector<double>> m;
      for (std::size_t si = 0; si < ge.n_grid.size(); ++si)
        m[static_cast<double>(ge.n_grid[si])] = per_scale[si];
      return m;
    };
    CheckResult r = slope_criterion("range", to_map(ge.range_val),
                                    windows::range_target, windows::slope_tol_range);
    CheckResult v = slope_criterion("self-intersection", to_map(ge.self_intersection),
                                    windows::self_target, windows::slope_tol_self);
    CheckResult s = slope_criterion("site-moment", to_map(ge.site_moment),
                                    windows::site_target(0.5), windows::slope_tol_site);
    ExponentFit mism = quantile_exponent_fit(to_map(ge.bond_mismatch), 0.5);
    bool mism_ok = mism.slope <= windows::slope_max_mismatch;
    out.push_back({"growth-laws", r.pass && v.pass && s.pass && mism_ok,
                   "range: " + r.detail + " | self-intersection: " + v.detail +
                       " | site-moment: " + s.detail + " | bond-mismatch slope " +
                       fmt_g17(mism.slope) + " (cap " +
                       fmt_g17(windows::slope_max_mismatch) + ")"});
  }

  note("calibration quality, null tests, determinism");
  {
    const CheckResult& nulls = find("null-ks-calibration");
    const CheckResult& cal_det = find("calibration-determinism");
    const CheckResult& sim_det = find("simulate-determinism");
    const CheckResult& workers = find("worker-invariance");
    bool calib_ok = calib.ks_distance < cfg.calib_ks_ceiling;
    out.push_back(
        {"calibration-and-nulls",
         calib_ok && nulls.pass && cal_det.pass && sim_det.pass && workers.pass,
         "calibration KS " + fmt_g17(calib.ks_distance) + " (ceiling " +
             fmt_g17(cfg.calib_ks_ceiling) + ", scale " + fmt_g17(calib.cal.scale) +
             "); " + nulls.detail + "; determinism " + pass_fail(cal_det.pass) + "/" +
             pass_fail(sim_det.pass) + "/" + pass_fail(workers.pass)});
  }

  note("limit-object sanity (occupation, monotonicity, self-similarity, local time)");
  {
    const CheckResult& occupation = find("occupation-identity");
    const CheckResult& support = find("local-time-support");
    const CheckResult& mono_d = find("delta-monotonicity");
    const CheckResult& mono_z = find("subordinator-monotonicity");

    // Self-similarity across the configured Delta times.
    bool selfsim_ok = true;
    double worst_margin = -1e9;
    const double expo = (1.0 + cfg.alpha) / (2.0 * cfg.alpha);
    std::vector<std::vector<double>> rescaled(le.delta_times.size());
    for (std::size_t ti = 0; ti < le.delta_times.size(); ++ti) {
      rescaled[ti] = le.delta[ti];
      double denom = std::pow(le.delta_times[ti], expo);
      for (double& x : rescaled[ti]) x /= denom;
    }
    for (std::size_t a = 0; a < rescaled.size(); ++a)
      for (std::size_t b = a + 1; b < rescaled.size(); ++b) {
        KSTestResult ks = ks_two_sample(rescaled[a], rescaled[b]);
        double bound = ks_critical_value(windows::ks_level, ks.n_a, ks.n_b) +
                       windows::ks_allowance;
        worst_margin = std::max(worst_margin, ks.statistic - bound);
        if (ks.statistic >= bound) selfsim_ok = false;
      }

    // Mean local time at the origin against the closed form for Brownian
    // motion: E L_1(0) = sqrt(2/pi) / sqrt(v_xi).
    const WalkSpec spec = cfg.walk_spec();
    double l0 = mean_local_time_at_zero(cfg, 10000, 1.0, 1e-5, 0.01);
    double expected = std::sqrt(kTwoOverPi) / std::sqrt(spec.v_xi());
    double l0_rel = std::abs(l0 - expected) / expected;
    bool l0_ok = l0_rel <= 0.10;

    // Stream independence: rank correlation between B(1) and Z_+(1).
    const std::size_t n_ind = 1000;
    std::vector<double> b_end(n_ind), z_end(n_ind);
    parallel_for_index(static_cast<std::int64_t>(n_ind), cfg.workers,
                       [&](std::int64_t i) {
                         auto idx = stream_block::diagnostics + (3ull << 32) +
                                    static_cast<std::uint64_t>(i);
                         RngStream bm(cfg.master_seed, Purpose::brownian, idx);
                         RngStream zp(cfg.master_seed, Purpose::sub_plus, idx);
                         BrownianPath bp = sample_brownian(spec.v_xi(), 1.0, 1e-3, bm);
                         b_end[static_cast<std::size_t>(i)] = bp.values.back();
                         z_end[static_cast<std::size_t>(i)] =
                             sample_one_sided_stable(calib.cal, zp);
                       });
    double rho = spearman(b_end, z_end);
    double band = 3.0 / std::sqrt(static_cast<double>(n_ind - 1));
    bool ind_ok = std::abs(rho) <= band;

    bool all = occupation.pass && support.pass && mono_d.pass && mono_z.pass &&
               selfsim_ok && l0_ok && ind_ok;
    out.push_back(
        {"limit-sanity", all,
         "occupation " + pass_fail(occupation.pass) + "; support " +
             pass_fail(support.pass) + "; Delta monotone " + pass_fail(mono_d.pass) +
             "; Z monotone " + pass_fail(mono_z.pass) + "; self-similarity worst D-"
             "bound margin " +
             fmt_g17(worst_margin) + " (" + pass_fail(selfsim_ok) +
             "); E L_1(0) = " + fmt_g17(l0) + " vs " + fmt_g17(expected) +
             " (rel " + fmt_g17(l0_rel) + ", " + pass_fail(l0_ok) +
             "); independence rho = " + fmt_g17(rho) + " band " + fmt_g17(band) +
             " (" + pass_fail(ind_ok) + ")"});
  }

  return out;
}

}  // namespace levygas
