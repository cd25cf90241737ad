#include "levygas/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "levygas/errors.hpp"
#include "levygas/medium.hpp"
#include "levygas/walker.hpp"

namespace levygas {

KSTestResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty())
    throw std::invalid_argument("ks_two_sample: empty sample");
  std::vector<double> sa(a.begin(), a.end());
  std::vector<double> sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());

  const double na = static_cast<double>(sa.size());
  const double nb = static_cast<double>(sb.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < sa.size() && j < sb.size()) {
    double va = sa[i];
    double vb = sb[j];
    if (va <= vb) ++i;
    if (vb <= va) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }

  double ne = na * nb / (na + nb);
  double p = kolmogorov_q(std::sqrt(ne) * d);
  return KSTestResult{d, static_cast<std::int64_t>(sa.size()),
                      static_cast<std::int64_t>(sb.size()), p};
}

double kolmogorov_q(double lambda) {
  if (lambda <= 0.0) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 200; ++k) {
    double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += sign * term;
    sign = -sign;
    if (term < 1e-16) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

double ks_critical_value(double p, std::int64_t n_a, std::int64_t n_b) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("level must be in (0,1)");
  double ne = static_cast<double>(n_a) * static_cast<double>(n_b) /
              static_cast<double>(n_a + n_b);
  return std::sqrt(-0.5 * std::log(p / 2.0)) / std::sqrt(ne);
}

double quantile_sorted(std::span<const double> sorted, double level) {
  if (sorted.empty()) throw std::invalid_argument("quantile of empty sample");
  if (!(level >= 0.0 && level <= 1.0))
    throw std::invalid_argument("quantile level must be in [0,1]");
  double h = level * static_cast<double>(sorted.size() - 1);
  std::size_t lo = static_cast<std::size_t>(h);
  if (lo + 1 >= sorted.size()) return sorted.back();
  double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

double quantile(std::vector<double> xs, double level) {
  std::sort(xs.begin(), xs.end());
  return quantile_sorted(xs, level);
}

ExponentFit quantile_exponent_fit(const std::map<double, std::vector<double>>& ensembles,
                                  double level) {
  if (ensembles.size() < 4)
    throw std::invalid_argument("exponent fit needs at least 4 scales");
  ExponentFit fit;
  for (const auto& [scale, sample] : ensembles) {
    if (sample.size() < 200)
      throw std::invalid_argument("exponent fit needs >= 200 values per scale");
    std::vector<double> abs_vals(sample.size());
    std::transform(sample.begin(), sample.end(), abs_vals.begin(),
                   [](double v) { return std::abs(v); });
    fit.log_scale.push_back(std::log(scale));
    fit.log_quantile.push_back(std::log(quantile(std::move(abs_vals), level)));
  }

  const std::size_t n = fit.log_scale.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += fit.log_scale[i];
    my += fit.log_quantile[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double dx = fit.log_scale[i] - mx;
    sxx += dx * dx;
    sxy += dx * (fit.log_quantile[i] - my);
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double r = fit.log_quantile[i] - (fit.intercept + fit.slope * fit.log_scale[i]);
    ss_res += r * r;
  }
  fit.stderr_slope = std::sqrt(ss_res / static_cast<double>(n - 2) / sxx);
  return fit;
}

RescaledSample rescale_omega(const Environment& env, double alpha, double q,
                             std::span<const double> xs) {
  RescaledSample out{q, RescaleKind::omega_bar, {xs.begin(), xs.end()}, {}};
  double denom = std::pow(q, 1.0 / (2.0 * alpha));
  out.values.reserve(xs.size());
  for (double x : xs) {
    auto k = static_cast<std::int64_t>(std::floor(x * std::sqrt(q)));
    out.values.push_back(env.target(k) / denom);
  }
  return out;
}

RescaledSample rescale_walk(const WalkPath& path, double q, std::span<const double> ts) {
  RescaledSample out{q, RescaleKind::s_bar, {ts.begin(), ts.end()}, {}};
  double denom = std::sqrt(q);
  out.values.reserve(ts.size());
  for (double t : ts) {
    auto idx = static_cast<std::int64_t>(std::floor(t * q));
    if (idx < 0 || idx > path.n())
      throw horizon_error("s_bar index beyond simulated walk");
    out.values.push_back(static_cast<double>(path.steps[static_cast<std::size_t>(idx)]) /
                         denom);
  }
  return out;
}

RescaledSample rescale_collision(const Trajectory& traj, double alpha, double q,
                                 std::span<const double> ts) {
  RescaledSample out{q, RescaleKind::t_bar, {ts.begin(), ts.end()}, {}};
  double denom = std::pow(q, (alpha + 1.0) / (2.0 * alpha));
  out.values.reserve(ts.size());
  auto n = static_cast<std::int64_t>(traj.t.size()) - 1;
  for (double t : ts) {
    auto idx = static_cast<std::int64_t>(std::floor(t * q));
    if (idx < 0 || idx > n) throw horizon_error("t_bar index beyond simulated walk");
    out.values.push_back(traj.t[static_cast<std::size_t>(idx)] / denom);
  }
  return out;
}

RescaledSample rescale_position(const Trajectory& traj, double alpha, double q,
                                std::span<const double> ss) {
  RescaledSample out{q, RescaleKind::x_bar, {ss.begin(), ss.end()}, {}};
  double denom = std::pow(q, 1.0 / (alpha + 1.0));
  double max_s = 0.0;
  for (double s : ss) max_s = std::max(max_s, s);
  if (traj.horizon() < q * max_s)
    throw horizon_error("x_bar requires T-horizon >= q * max(points)");
  PositionCursor cursor(traj);
  out.values.reserve(ss.size());
  for (double s : ss) out.values.push_back(cursor.at(s * q) / denom);
  return out;
}

}  // namespace levygas
