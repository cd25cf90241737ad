#ifndef LEVYGAS_LIMIT_HPP
#define LEVYGAS_LIMIT_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "levygas/heavy_tail.hpp"
#include "levygas/rng.hpp"

namespace levygas {

// Brownian motion with Var B(t) = v_xi * t on a uniform grid.
struct BrownianPath {
  double dt;
  double v_xi;
  std::vector<double> values;  // B(0), B(dt), ..., B(t_max)

  double t_max() const { return dt * static_cast<double>(values.size() - 1); }
  // Linear interpolation between grid points.
  double value_at(double t) const;
};

// Requires dt <= t_max/100.
BrownianPath sample_brownian(double v_xi, double t_max, double dt, RngStream& rng);

// Occupation-density estimate of the Brownian local time on spatial bins
// of width dx: bin b covers [b*dx, (b+1)*dx). The last, fractional grid
// step is weighted so that sum_b L_t(b)*dx = t exactly (up to float
// summation) for every requested t.
struct LocalTimeField {
  double dx;
  std::int64_t bin_lo;   // bins bin_lo..bin_hi cover [min B - dx, max B + dx]
  std::int64_t bin_hi;
  std::vector<double> times;
  std::vector<std::vector<double>> density;  // density[ti][b - bin_lo]

  std::int64_t bins() const { return bin_hi - bin_lo + 1; }
  double at(std::size_t time_index, std::int64_t bin) const;
};

LocalTimeField local_time_field(const BrownianPath& bp, double dx,
                                std::vector<double> times);

// One independent one-sided stable increment per spatial bin per sign,
// each distributed as scale * dx^{1/alpha} * W; the two axes come from
// separate streams. Bins match a LocalTimeField exactly.
struct SubordinatorField {
  double dx;
  std::int64_t bin_lo;
  std::int64_t bin_hi;
  StableCalibration cal;
  std::vector<double> inc_plus;   // bins 0..bin_hi: increment over [b dx,(b+1)dx)
  std::vector<double> inc_minus;  // bins -1..bin_lo: inc_minus[j] covers bin -(j+1)

  // Z(x) at bin resolution with the two-sided sign convention:
  // Z(x) = Z_+(x) for x >= 0 and -Z_-(-x) for x < 0.
  double z_at(double x) const;
};

SubordinatorField sample_subordinator_field(const StableCalibration& cal,
                                            const LocalTimeField& ltf,
                                            RngStream& rng_plus,
                                            RngStream& rng_minus);

// Discretized Kesten-Spitzer process: Delta(t) = mu_xi * ( sum over
// positive-axis bins of L_t * dZ_+ + sum over negative-axis bins of
// L_t * dZ_- ). Strictly increasing across requested times.
struct KSProcessSample {
  std::vector<double> times;
  std::vector<double> delta;
};

KSProcessSample ks_process(const LocalTimeField& ltf, const SubordinatorField& sub,
                           double mu_xi);

// Generalized inverse sup{u > 0 : Delta(u) < s}, refined by linear
// interpolation between bracketing grid times. Throws for s beyond the
// sampled range.
double generalized_inverse(const KSProcessSample& ks, double s);

struct CompositeLimitParams {
  double v_xi;
  double mu_xi;
  StableCalibration cal;
  double dt_over_tmax = 1e-5;
  double dx = 0.01;
  double initial_t_max = 0.0;  // <= 0: chosen from max(s_points)
  int max_doublings = 5;
};

// One joint draw of the composed limit at each requested s: a single
// Brownian path, one pair of subordinator fields, Delta accumulated at
// full grid resolution and inverted at s. The level crossing lands on a
// size-biased increment of Z with positive probability; there the value
// interpolates into that increment by the residual crossing phase, which
// is where the interpolated walk sits mid-flight. If Delta(t_max) < max s
// the same realization is extended (dt fixed by the initial horizon), at
// most max_doublings times, then horizon_error.
std::vector<double> composite_limit_sample(const CompositeLimitParams& params,
                                           std::span<const double> s_points,
                                           RngStream& rng_brownian,
                                           RngStream& rng_plus,
                                           RngStream& rng_minus);

}  // namespace levygas

#endif
