#include "levygas/walker.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "levygas/errors.hpp"

namespace levygas {

WalkSpec WalkSpec::simple_symmetric() {
  return from_pmf({{-1, 0.5}, {1, 0.5}});
}

WalkSpec WalkSpec::from_pmf(std::vector<std::pair<int, double>> pmf) {
  if (pmf.empty()) throw std::invalid_argument("walk pmf is empty");
  std::sort(pmf.begin(), pmf.end());
  double total = 0.0, mean = 0.0, var = 0.0, abs_mean = 0.0;
  std::int64_t gcd = 0;
  for (auto& [inc, p] : pmf) {
    if (inc == 0)
      throw std::invalid_argument("walk increments must not put mass at 0");
    if (!(p > 0.0)) throw std::invalid_argument("walk pmf entries must be positive");
    total += p;
    mean += p * inc;
    var += p * static_cast<double>(inc) * inc;
    abs_mean += p * std::abs(inc);
    gcd = std::gcd(gcd, static_cast<std::int64_t>(std::abs(inc)));
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument("walk pmf must sum to 1");
  if (std::abs(mean) > 1e-12)
    throw std::invalid_argument("walk increments must be centered");
  if (gcd != 1)
    throw std::invalid_argument("walk support must generate all of Z (gcd 1)");

  WalkSpec spec;
  spec.pmf_ = std::move(pmf);
  spec.v_xi_ = var;  // mean is 0, so E[xi^2] is the variance
  spec.mu_xi_ = abs_mean;
  spec.gamma_check_ = std::numeric_limits<double>::infinity();
  double acc = 0.0;
  for (const auto& [inc, p] : spec.pmf_) {
    acc += p;
    spec.cdf_.push_back(acc);
  }
  spec.cdf_.back() = 1.0;
  return spec;
}

int WalkSpec::sample_increment(RngStream& rng) const {
  double u = rng.uniform01();
  auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
  if (it == cdf_.end()) --it;
  return pmf_[static_cast<std::size_t>(it - cdf_.begin())].first;
}

WalkPath sample_walk(const WalkSpec& spec, std::int64_t n, RngStream& rng) {
  if (n < 0) throw std::invalid_argument("walk length must be nonnegative");
  WalkPath path;
  path.steps.reserve(static_cast<std::size_t>(n) + 1);
  path.steps.push_back(0);
  extend_walk(path, spec, n, rng);
  return path;
}

void extend_walk(WalkPath& path, const WalkSpec& spec, std::int64_t extra,
                 RngStream& rng) {
  std::int64_t pos = path.steps.back();
  for (std::int64_t i = 0; i < extra; ++i) {
    pos += spec.sample_increment(rng);
    path.steps.push_back(pos);
  }
}

Trajectory run_trajectory(const Environment& env, const WalkPath& path) {
  Trajectory traj;
  const std::size_t m = path.steps.size();
  traj.s = path.steps;
  traj.y.resize(m);
  traj.t.resize(m);
  double t = 0.0, carry = 0.0;
  double prev_y = env.target(path.steps[0]);
  traj.y[0] = prev_y;
  traj.t[0] = 0.0;
  for (std::size_t k = 1; k < m; ++k) {
    double y = env.target(path.steps[k]);
    double term = std::abs(y - prev_y) - carry;
    double next = t + term;
    carry = (next - t) - term;
    t = next;
    traj.y[k] = y;
    traj.t[k] = t;
    prev_y = y;
  }
  return traj;
}

namespace {

double interpolate_position(const Trajectory& traj, std::size_t n, double time) {
  if (time == traj.t[n]) return traj.y[n];
  double dir = traj.s[n + 1] > traj.s[n] ? 1.0 : -1.0;
  return traj.y[n] + dir * (time - traj.t[n]);
}

}  // namespace

double position_at(const Trajectory& traj, double time) {
  if (time < 0.0) throw std::invalid_argument("position_at: negative time");
  if (time > traj.horizon())
    throw horizon_error("position_at: time beyond simulated horizon");
  if (time == traj.horizon()) return traj.y.back();
  // Largest n with T_n <= time.
  auto it = std::upper_bound(traj.t.begin(), traj.t.end(), time);
  std::size_t n = static_cast<std::size_t>(it - traj.t.begin()) - 1;
  return interpolate_position(traj, n, time);
}

double PositionCursor::at(double time) {
  const auto& t = traj_->t;
  if (time < 0.0) throw std::invalid_argument("position cursor: negative time");
  if (time > traj_->horizon())
    throw horizon_error("position cursor: time beyond simulated horizon");
  if (time == traj_->horizon()) return traj_->y.back();
  if (time < t[hint_]) hint_ = 0;  // query regressed; restart
  while (hint_ + 1 < t.size() && t[hint_ + 1] <= time) ++hint_;
  return interpolate_position(*traj_, hint_, time);
}

LocalTimeProfile local_time_profile(const WalkPath& path) {
  LocalTimeProfile prof;
  const auto n = path.n();
  prof.site.reserve(static_cast<std::size_t>(2 * std::sqrt(static_cast<double>(n) + 1)) + 16);
  for (std::int64_t k = 0; k < n; ++k) {
    auto& count = prof.site[path.steps[static_cast<std::size_t>(k)]];
    prof.self_intersection += 2 * count + 1;
    if (count == 0) ++prof.range;
    ++count;
  }
  for (std::int64_t k = 1; k <= n; ++k) {
    std::int64_t from = path.steps[static_cast<std::size_t>(k - 1)];
    std::int64_t to = path.steps[static_cast<std::size_t>(k)];
    if (to > from) {
      for (std::int64_t y = from + 1; y <= to; ++y) {
        ++prof.bond[y];
        ++prof.bond_plus[y];
      }
    } else {
      for (std::int64_t y = to + 1; y <= from; ++y) {
        ++prof.bond[y];
        ++prof.bond_minus[y];
      }
    }
  }
  return prof;
}

double scenery_collision_time(const Environment& env, const LocalTimeProfile& prof) {
  // Fixed summation order (sorted bond indices) with compensation, so the
  // value is reproducible and comparable to the trajectory sum.
  std::vector<std::pair<std::int64_t, std::int64_t>> bonds(prof.bond.begin(),
                                                           prof.bond.end());
  std::sort(bonds.begin(), bonds.end());
  double sum = 0.0, carry = 0.0;
  for (const auto& [y, count] : bonds) {
    double term = static_cast<double>(count) * env.gap(y) - carry;
    double next = sum + term;
    carry = (next - sum) - term;
    sum = next;
  }
  return sum;
}

double rwrs_sum(const Environment& env, const WalkPath& path, std::int64_t m) {
  if (m < 0 || m > path.n())
    throw std::invalid_argument("rwrs_sum: m outside 0..n");
  double sum = 0.0, carry = 0.0;
  for (std::int64_t k = 1; k <= m; ++k) {
    double term = env.gap(path.steps[static_cast<std::size_t>(k)]) - carry;
    double next = sum + term;
    carry = (next - sum) - term;
    sum = next;
  }
  return sum;
}

}  // namespace levygas
