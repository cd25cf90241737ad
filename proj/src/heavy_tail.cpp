#include "levygas/heavy_tail.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "levygas/errors.hpp"
#include "levygas/stats.hpp"

namespace levygas {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("stability index must lie in (0,1), got " +
                                std::to_string(alpha));
}

}  // namespace

GapDistribution GapDistribution::pareto(double alpha, double x_min) {
  check_alpha(alpha);
  if (!(x_min > 0.0))
    throw std::invalid_argument("Pareto x_min must be positive");
  GapDistribution d;
  d.alpha_ = alpha;
  d.kind_ = Kind::pareto;
  d.x_min_ = x_min;
  d.c0_ = std::pow(x_min, alpha);
  return d;
}

GapDistribution GapDistribution::tabulated(double alpha, double c0,
                                           std::vector<std::pair<double, double>> table) {
  check_alpha(alpha);
  if (!(c0 > 0.0)) throw std::invalid_argument("tail constant c0 must be positive");
  if (table.size() < 2)
    throw std::invalid_argument("tabulated tail needs at least two rows");
  if (table.front().second != 1.0)
    throw std::invalid_argument("tabulated tail must start at probability 1");
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (!(table[i].first > 0.0) || !(table[i].second > 0.0) || table[i].second > 1.0)
      throw std::invalid_argument("tabulated tail rows must have z > 0, p in (0,1]");
    if (i > 0 && (table[i].first <= table[i - 1].first ||
                  table[i].second >= table[i - 1].second))
      throw std::invalid_argument("tabulated tail must be strictly monotone");
  }
  GapDistribution d;
  d.alpha_ = alpha;
  d.kind_ = Kind::tabulated;
  d.x_min_ = table.front().first;
  d.c0_ = c0;
  d.table_ = std::move(table);
  return d;
}

double GapDistribution::quantile_from_tail(double u) const {
  if (kind_ == Kind::pareto) return x_min_ * std::pow(u, -1.0 / alpha_);
  // Pure power-law tail past the last tabulated row.
  if (u <= table_.back().second) return std::pow(c0_ / u, 1.0 / alpha_);
  auto it = std::lower_bound(
      table_.begin(), table_.end(), u,
      [](const std::pair<double, double>& row, double p) { return row.second > p; });
  // it points at the first row with p <= u; interpolate against the previous.
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  if (hi.second == u) return hi.first;
  double w = (std::log(lo.second) - std::log(u)) /
             (std::log(lo.second) - std::log(hi.second));
  return std::exp(std::log(lo.first) + w * (std::log(hi.first) - std::log(lo.first)));
}

double sample_gap(const GapDistribution& dist, RngStream& rng) {
  return dist.quantile_from_tail(rng.uniform01());
}

double stable_c1(double alpha, double c0) {
  return std::tgamma(1.0 - alpha) * c0 * std::cos(alpha * kPi / 2.0);
}

StableCalibration make_stable_calibration(double alpha, double scale, double c0) {
  check_alpha(alpha);
  if (!(scale > 0.0)) throw std::invalid_argument("stable scale must be positive");
  return StableCalibration{alpha, scale, stable_c1(alpha, c0)};
}

double sample_standard_one_sided_stable(double alpha, RngStream& rng) {
  // Kanter's representation of the positive strictly stable law with
  // Laplace transform exp(-lambda^alpha), times cos(pi alpha/2)^{-1/alpha}
  // to reach the unit-dispersion skewness-1 normalization.
  double theta = kPi * rng.uniform01();           // in (0, pi)
  double e = rng.exponential();
  double x0 = std::sin(alpha * theta) / std::pow(std::sin(theta), 1.0 / alpha) *
              std::pow(std::sin((1.0 - alpha) * theta) / e, (1.0 - alpha) / alpha);
  return std::pow(std::cos(kPi * alpha / 2.0), -1.0 / alpha) * x0;
}

namespace {

// KS distance between sorted a and s * sorted w.
double ks_distance_scaled(const std::vector<double>& a, const std::vector<double>& w,
                          double s) {
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(w.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < w.size()) {
    double va = a[i];
    double vb = s * w[j];
    if (va <= vb) ++i;
    if (vb <= va) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

}  // namespace

CalibrationResult calibrate_stable_scale(const GapDistribution& dist,
                                         std::int64_t n_block,
                                         std::int64_t n_samples,
                                         std::uint64_t master_seed,
                                         double ks_ceiling) {
  if (n_block < 10000)
    throw std::invalid_argument("calibration needs n_block >= 10^4");
  if (n_samples < 1000)
    throw std::invalid_argument("calibration needs n_samples >= 10^3");

  const double alpha = dist.alpha();
  const double norm = std::pow(static_cast<double>(n_block), -1.0 / alpha);

  std::vector<double> block_sums(static_cast<std::size_t>(n_samples));
  for (std::int64_t i = 0; i < n_samples; ++i) {
    RngStream rng(master_seed, Purpose::calib_block, static_cast<std::uint64_t>(i));
    double sum = 0.0, carry = 0.0;
    for (std::int64_t j = 0; j < n_block; ++j) {
      double term = sample_gap(dist, rng) - carry;
      double next = sum + term;
      carry = (next - sum) - term;
      sum = next;
    }
    block_sums[static_cast<std::size_t>(i)] = norm * sum;
  }

  std::vector<double> stable_draws(static_cast<std::size_t>(n_samples));
  for (std::int64_t i = 0; i < n_samples; ++i) {
    RngStream rng(master_seed, Purpose::calib_stable, static_cast<std::uint64_t>(i));
    stable_draws[static_cast<std::size_t>(i)] =
        sample_standard_one_sided_stable(alpha, rng);
  }

  std::sort(block_sums.begin(), block_sums.end());
  std::sort(stable_draws.begin(), stable_draws.end());

  // Median-matched starting point, then two rounds of log-grid refinement.
  double s_center = quantile_sorted(block_sums, 0.5) / quantile_sorted(stable_draws, 0.5);
  double half_width = std::log(4.0);
  double best_s = s_center;
  double best_d = ks_distance_scaled(block_sums, stable_draws, s_center);
  for (int round = 0; round < 3; ++round) {
    const int grid = 129;
    for (int g = 0; g < grid; ++g) {
      double ls = std::log(s_center) + half_width * (2.0 * g / (grid - 1) - 1.0);
      double s = std::exp(ls);
      double d = ks_distance_scaled(block_sums, stable_draws, s);
      if (d < best_d) {
        best_d = d;
        best_s = s;
      }
    }
    s_center = best_s;
    half_width /= 16.0;
  }

  if (best_d > ks_ceiling)
    throw calibration_error("stable-scale calibration reached KS distance " +
                            std::to_string(best_d) + " above ceiling " +
                            std::to_string(ks_ceiling));

  return CalibrationResult{make_stable_calibration(alpha, best_s, dist.c0()), best_d,
                           n_block, n_samples};
}

}  // namespace levygas
