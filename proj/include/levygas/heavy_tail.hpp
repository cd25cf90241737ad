#ifndef LEVYGAS_HEAVY_TAIL_HPP
#define LEVYGAS_HEAVY_TAIL_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "levygas/rng.hpp"

namespace levygas {

// Law of the i.i.d. positive gaps between targets. The stability index
// alpha lies in (0,1), so the law sits in the normal domain of attraction
// of a one-sided alpha-stable distribution with tail constant
// c0 = lim_z z^alpha * P(gap >= z).
class GapDistribution {
public:
  enum class Kind { pareto, tabulated };

  // Pareto(alpha, x_min): P(gap > z) = (z/x_min)^-alpha for z >= x_min,
  // hence c0 = x_min^alpha.
  static GapDistribution pareto(double alpha, double x_min = 1.0);

  // Tabulated tail: rows (z_i, P(gap >= z_i)) with z increasing and tail
  // probabilities strictly decreasing from 1; beyond the last row the tail
  // continues as c0 * z^-alpha. Sampling interpolates log z in log p.
  static GapDistribution tabulated(double alpha, double c0,
                                   std::vector<std::pair<double, double>> table);

  double alpha() const { return alpha_; }
  Kind kind() const { return kind_; }
  double x_min() const { return x_min_; }
  double c0() const { return c0_; }

  // Value whose tail probability is u in (0,1); the inverse-CDF map used
  // by sample_gap.
  double quantile_from_tail(double u) const;

private:
  GapDistribution() = default;
  double alpha_ = 0.0;
  Kind kind_ = Kind::pareto;
  double x_min_ = 1.0;
  double c0_ = 1.0;
  std::vector<std::pair<double, double>> table_;
};

double sample_gap(const GapDistribution& dist, RngStream& rng);

// c1 = Gamma(1-alpha) * c0 * cos(alpha*pi/2), the constant that pins the
// characteristic function of the limiting stable variable.
double stable_c1(double alpha, double c0);

// Parameters mapping the standard one-sided stable sampler to the law of
// the limit Z_1: Z_1 ~ scale * W with W standard.
struct StableCalibration {
  double alpha;
  double scale;
  double c1;
};

StableCalibration make_stable_calibration(double alpha, double scale, double c0);

// Standard positive strictly alpha-stable draw (Kanter construction with
// the Chambers-Mallows-Stuck skewness-1 normalization): characteristic
// function exp(-|t|^alpha (1 - i tan(pi alpha/2) sgn t)). At alpha = 1/2
// this is the Levy law of 1/G^2, G standard normal. Consumes exactly two
// uniforms.
double sample_standard_one_sided_stable(double alpha, RngStream& rng);

inline double sample_one_sided_stable(const StableCalibration& cal, RngStream& rng) {
  return cal.scale * sample_standard_one_sided_stable(cal.alpha, rng);
}

struct CalibrationResult {
  StableCalibration cal;
  double ks_distance;      // achieved two-sample KS distance at the best scale
  std::int64_t n_block;
  std::int64_t n_samples;
};

// Finds the scale s minimizing the two-sample KS distance between
// normalized block sums n_block^{-1/alpha} * sum of gaps and s * (standard
// stable draws). Deterministic given master_seed. Throws calibration_error
// if the achieved distance exceeds ks_ceiling.
CalibrationResult calibrate_stable_scale(const GapDistribution& dist,
                                         std::int64_t n_block,
                                         std::int64_t n_samples,
                                         std::uint64_t master_seed,
                                         double ks_ceiling = 0.05);

}  // namespace levygas

#endif
