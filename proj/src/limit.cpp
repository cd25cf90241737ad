#include "levygas/limit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "levygas/errors.hpp"

namespace levygas {

double BrownianPath::value_at(double t) const {
  if (t < 0.0 || t > t_max() * (1.0 + 1e-12))
    throw std::invalid_argument("Brownian path queried outside [0, t_max]");
  double h = std::min(t / dt, static_cast<double>(values.size() - 1));
  std::size_t lo = static_cast<std::size_t>(h);
  if (lo + 1 >= values.size()) return values.back();
  double frac = h - static_cast<double>(lo);
  return values[lo] + frac * (values[lo + 1] - values[lo]);
}

BrownianPath sample_brownian(double v_xi, double t_max, double dt, RngStream& rng) {
  if (!(v_xi > 0.0)) throw std::invalid_argument("variance rate must be positive");
  if (!(dt > 0.0) || dt > t_max / 100.0)
    throw std::invalid_argument("need 0 < dt <= t_max/100");
  auto n_steps = static_cast<std::size_t>(std::llround(t_max / dt));
  BrownianPath bp{dt, v_xi, {}};
  bp.values.resize(n_steps + 1);
  bp.values[0] = 0.0;
  const double sd = std::sqrt(v_xi * dt);
  double b = 0.0;
  for (std::size_t i = 1; i <= n_steps; ++i) {
    b += sd * rng.normal();
    bp.values[i] = b;
  }
  return bp;
}

double LocalTimeField::at(std::size_t time_index, std::int64_t bin) const {
  if (bin < bin_lo || bin > bin_hi) return 0.0;
  return density[time_index][static_cast<std::size_t>(bin - bin_lo)];
}

LocalTimeField local_time_field(const BrownianPath& bp, double dx,
                                std::vector<double> times) {
  if (!(dx > 0.0)) throw std::invalid_argument("dx must be positive");
  for (double t : times)
    if (t < 0.0 || t > bp.t_max() * (1.0 + 1e-12))
      throw std::invalid_argument("local time requested outside [0, t_max]");

  auto [mn, mx] = std::minmax_element(bp.values.begin(), bp.values.end());
  LocalTimeField ltf;
  ltf.dx = dx;
  ltf.bin_lo = static_cast<std::int64_t>(std::floor(*mn / dx)) - 1;
  ltf.bin_hi = static_cast<std::int64_t>(std::floor(*mx / dx)) + 1;
  ltf.times = std::move(times);

  // Sort the requested times but remember their original slots, so the
  // path is swept once.
  std::vector<std::size_t> order(ltf.times.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return ltf.times[a] < ltf.times[b];
  });

  const auto nbins = static_cast<std::size_t>(ltf.bins());
  ltf.density.assign(ltf.times.size(), {});
  std::vector<double> occupation(nbins, 0.0);  // time spent per bin
  std::size_t step = 0;  // full steps [step*dt, (step+1)*dt) consumed so far
  const std::size_t max_step = bp.values.size() - 1;
  for (std::size_t oi : order) {
    double t = ltf.times[oi];
    auto full = std::min(static_cast<std::size_t>(t / bp.dt), max_step);
    for (; step < full; ++step) {
      auto bin = static_cast<std::int64_t>(std::floor(bp.values[step] / dx));
      occupation[static_cast<std::size_t>(bin - ltf.bin_lo)] += bp.dt;
    }
    auto& dens = ltf.density[oi];
    dens.assign(occupation.begin(), occupation.end());
    // Fractional remainder of the current step, so sum(L)*dx == t exactly.
    double rem = t - static_cast<double>(full) * bp.dt;
    if (rem > 0.0 && full < bp.values.size()) {
      auto bin = static_cast<std::int64_t>(std::floor(bp.values[full] / dx));
      dens[static_cast<std::size_t>(bin - ltf.bin_lo)] += rem;
    }
    for (auto& v : dens) v /= dx;
  }
  return ltf;
}

SubordinatorField sample_subordinator_field(const StableCalibration& cal,
                                            const LocalTimeField& ltf,
                                            RngStream& rng_plus,
                                            RngStream& rng_minus) {
  SubordinatorField sub;
  sub.dx = ltf.dx;
  sub.bin_lo = ltf.bin_lo;
  sub.bin_hi = ltf.bin_hi;
  sub.cal = cal;
  const double inc_scale = cal.scale * std::pow(ltf.dx, 1.0 / cal.alpha);
  const auto n_plus = static_cast<std::size_t>(std::max<std::int64_t>(sub.bin_hi + 1, 0));
  const auto n_minus = static_cast<std::size_t>(std::max<std::int64_t>(-sub.bin_lo, 0));
  sub.inc_plus.resize(n_plus);
  for (auto& v : sub.inc_plus)
    v = inc_scale * sample_standard_one_sided_stable(cal.alpha, rng_plus);
  sub.inc_minus.resize(n_minus);
  for (auto& v : sub.inc_minus)
    v = inc_scale * sample_standard_one_sided_stable(cal.alpha, rng_minus);
  return sub;
}

double SubordinatorField::z_at(double x) const {
  double sum = 0.0;
  if (x >= 0.0) {
    auto end = std::min<std::int64_t>(static_cast<std::int64_t>(std::floor(x / dx)),
                                      static_cast<std::int64_t>(inc_plus.size()));
    for (std::int64_t j = 0; j < end; ++j)
      sum += inc_plus[static_cast<std::size_t>(j)];
    return sum;
  }
  auto end = std::min<std::int64_t>(static_cast<std::int64_t>(std::floor(-x / dx)),
                                    static_cast<std::int64_t>(inc_minus.size()));
  for (std::int64_t j = 0; j < end; ++j)
    sum += inc_minus[static_cast<std::size_t>(j)];
  return -sum;
}

KSProcessSample ks_process(const LocalTimeField& ltf, const SubordinatorField& sub,
                           double mu_xi) {
  if (sub.dx != ltf.dx || sub.bin_lo != ltf.bin_lo || sub.bin_hi != ltf.bin_hi)
    throw grid_error("local-time and subordinator fields built on different grids");
  if (!(mu_xi > 0.0)) throw std::invalid_argument("mu_xi must be positive");

  KSProcessSample ks;
  ks.times = ltf.times;
  ks.delta.resize(ltf.times.size());
  for (std::size_t ti = 0; ti < ltf.times.size(); ++ti) {
    double sum = 0.0;
    const auto& dens = ltf.density[ti];
    for (std::int64_t b = ltf.bin_lo; b <= ltf.bin_hi; ++b) {
      double l = dens[static_cast<std::size_t>(b - ltf.bin_lo)];
      if (l == 0.0) continue;
      double inc = b >= 0 ? sub.inc_plus[static_cast<std::size_t>(b)]
                          : sub.inc_minus[static_cast<std::size_t>(-b - 1)];
      sum += l * inc;
    }
    ks.delta[ti] = mu_xi * sum;
  }
  return ks;
}

double generalized_inverse(const KSProcessSample& ks, double s) {
  if (!(s >= 0.0)) throw std::invalid_argument("generalized inverse needs s >= 0");
  if (ks.delta.empty() || s > ks.delta.back())
    throw horizon_error("generalized inverse: s beyond sampled range of Delta");
  if (s == 0.0) return 0.0;
  // First grid index with Delta >= s; sup{u : Delta(u) < s} sits between
  // idx-1 and idx, located by linear interpolation.
  auto it = std::lower_bound(ks.delta.begin(), ks.delta.end(), s);
  std::size_t idx = static_cast<std::size_t>(it - ks.delta.begin());
  if (idx == 0) return ks.times[0];
  double d0 = ks.delta[idx - 1], d1 = ks.delta[idx];
  double t0 = ks.times[idx - 1], t1 = ks.times[idx];
  double w = d1 > d0 ? (s - d0) / (d1 - d0) : 1.0;
  return t0 + w * (t1 - t0);
}

std::vector<double> composite_limit_sample(const CompositeLimitParams& params,
                                           std::span<const double> s_points,
                                           RngStream& rng_brownian,
                                           RngStream& rng_plus,
                                           RngStream& rng_minus) {
  double max_s = 0.0;
  for (double s : s_points) {
    if (s < 0.0) throw std::invalid_argument("composite sample needs s >= 0");
    max_s = std::max(max_s, s);
  }
  const double alpha = params.cal.alpha;
  const double dx = params.dx;
  double t_max = params.initial_t_max > 0.0
                     ? params.initial_t_max
                     : std::max(1.0, 2.0 * std::pow(max_s, 2.0 * alpha / (alpha + 1.0)));
  const double dt = params.dt_over_tmax * t_max;
  const double sd = std::sqrt(params.v_xi * dt);
  const double inc_scale = params.cal.scale * std::pow(dx, 1.0 / alpha);
  const double weight = params.mu_xi * dt / dx;

  // Delta gains mu_xi * (dt/dx) * dZ(bin of B) per grid step: the same
  // occupation-density integral as ks_process, accumulated in time order.
  // When the horizon falls short the realization is extended, never
  // redrawn: redrawing would condition the sample on a fast-growing Delta.
  std::vector<double> b_path = {0.0};
  std::vector<double> delta = {0.0};
  std::vector<std::int64_t> step_bin;
  std::vector<double> inc_plus, inc_minus;  // grown as B widens its range
  auto ensure_bins = [&](std::int64_t bin) {
    while (static_cast<std::int64_t>(inc_plus.size()) <= bin + 1)
      inc_plus.push_back(inc_scale *
                         sample_standard_one_sided_stable(alpha, rng_plus));
    while (static_cast<std::int64_t>(inc_minus.size()) <= -bin)
      inc_minus.push_back(inc_scale *
                          sample_standard_one_sided_stable(alpha, rng_minus));
  };

  for (int attempt = 0; attempt <= params.max_doublings; ++attempt, t_max *= 2.0) {
    const auto target_steps = static_cast<std::size_t>(std::llround(t_max / dt));
    while (b_path.size() - 1 < target_steps) {
      double pos = b_path.back();
      auto bin = static_cast<std::int64_t>(std::floor(pos / dx));
      ensure_bins(bin);
      step_bin.push_back(bin);
      delta.push_back(delta.back() +
                      weight * (bin >= 0
                                    ? inc_plus[static_cast<std::size_t>(bin)]
                                    : inc_minus[static_cast<std::size_t>(-bin - 1)]));
      b_path.push_back(pos + sd * rng_brownian.normal());
    }
    if (delta.back() < max_s) continue;

    std::vector<double> out;
    out.reserve(s_points.size());
    for (double s : s_points) {
      if (s == 0.0) {
        out.push_back(0.0);
        continue;
      }
      // Crossing step k: Delta[k] < s <= Delta[k+1]. The level crossing
      // lands on a size-biased increment of Z with positive probability
      // (Delta's growth is carried by the jump set), and there the walker
      // is mid-flight across the corresponding gap. The value therefore
      // interpolates into the landed increment by the residual phase,
      // which reproduces the weak limit of the interpolated process; the
      // bare edge value does not.
      auto it = std::lower_bound(delta.begin(), delta.end(), s);
      std::size_t k = static_cast<std::size_t>(it - delta.begin()) - 1;
      double frac = (s - delta[k]) / (delta[k + 1] - delta[k]);
      std::int64_t bin = step_bin[k];
      if (bin >= 0) {
        double edge = 0.0;
        for (std::int64_t j = 0; j < bin; ++j)
          edge += inc_plus[static_cast<std::size_t>(j)];
        out.push_back(edge + frac * inc_plus[static_cast<std::size_t>(bin)]);
      } else {
        double edge = 0.0;
        for (std::int64_t j = 0; j < -bin - 1; ++j)
          edge -= inc_minus[static_cast<std::size_t>(j)];
        out.push_back(edge - frac * inc_minus[static_cast<std::size_t>(-bin - 1)]);
      }
    }
    return out;
  }
  throw horizon_error("composite sample: Delta(t_max) below max s after " +
                      std::to_string(params.max_doublings) + " doublings");
}

}  // namespace levygas
