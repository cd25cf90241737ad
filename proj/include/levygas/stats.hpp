#ifndef LEVYGAS_STATS_HPP
#define LEVYGAS_STATS_HPP

#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace levygas {

struct KSTestResult {
  double statistic;   // D in [0,1]
  std::int64_t n_a;
  std::int64_t n_b;
  double p_value;     // asymptotic Kolmogorov distribution
};

// Two-sided two-sample Kolmogorov-Smirnov test. The p-value uses the
// asymptotic Kolmogorov law at effective size n_a*n_b/(n_a+n_b).
KSTestResult ks_two_sample(std::span<const double> a, std::span<const double> b);

// Largest D still compatible with equality at level p (asymptotic).
double ks_critical_value(double p, std::int64_t n_a, std::int64_t n_b);

// Survival function of the Kolmogorov distribution, Q(lambda).
double kolmogorov_q(double lambda);

// Linear-interpolation quantile of an unsorted sample, level in [0,1].
double quantile(std::vector<double> xs, double level);
double quantile_sorted(std::span<const double> sorted, double level);

struct ExponentFit {
  std::vector<double> log_scale;     // abscissae
  std::vector<double> log_quantile;  // ordinates
  double slope;
  double intercept;
  double stderr_slope;
};

// OLS of log(level-quantile of |values|) against log(scale). Quantiles
// rather than moments: with alpha < 1 even first absolute moments diverge,
// while distributional convergence still forces quantile power laws.
ExponentFit quantile_exponent_fit(const std::map<double, std::vector<double>>& ensembles,
                                  double level = 0.5);

enum class RescaleKind { omega_bar, s_bar, t_bar, x_bar };

struct RescaledSample {
  double q;
  RescaleKind kind;
  std::vector<double> points;
  std::vector<double> values;
};

class Environment;
struct WalkPath;
struct Trajectory;

// omega_bar: omega_{floor(x sqrt(q))} / q^{1/(2 alpha)}
RescaledSample rescale_omega(const Environment& env, double alpha, double q,
                             std::span<const double> xs);
// s_bar: S_{floor(t q)} / sqrt(q)
RescaledSample rescale_walk(const WalkPath& path, double q,
                            std::span<const double> ts);
// t_bar: T_{floor(t q)} / q^{(alpha+1)/(2 alpha)}
RescaledSample rescale_collision(const Trajectory& traj, double alpha, double q,
                                 std::span<const double> ts);
// x_bar: X(s q) / q^{1/(alpha+1)}; requires T-horizon >= q * max(points)
RescaledSample rescale_position(const Trajectory& traj, double alpha, double q,
                                std::span<const double> ss);

}  // namespace levygas

#endif
