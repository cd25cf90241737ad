#ifndef LEVYGAS_MEDIUM_HPP
#define LEVYGAS_MEDIUM_HPP

#include <cstdint>
#include <vector>

#include "levygas/heavy_tail.hpp"
#include "levygas/rng.hpp"

namespace levygas {

// Lazily materialized two-sided realization of the marked point process of
// targets: omega_0 = 0 and omega_k - omega_{k-1} = zeta_k. Each gap zeta_k
// is generated from its own stream keyed by (seed, gap, k), so the value of
// any index depends only on (seed, k), never on query order; prefix sums
// are always extended in index order and therefore re-materialize
// bit-identically. Lazy extension mutates internal caches: share read-only
// only after materialization, or keep one environment per task.
class Environment {
public:
  Environment(GapDistribution dist, std::uint64_t seed);

  // Deterministic fixture with explicit gaps, for exact-value tests:
  // right = {zeta_1, zeta_2, ...}, left = {zeta_0, zeta_-1, ...}.
  // Queries outside the given range throw.
  static Environment from_gaps(std::vector<double> right, std::vector<double> left);

  // omega_k; extends the materialization on demand.
  double target(std::int64_t k) const;

  // zeta_k = omega_k - omega_{k-1}, always positive.
  double gap(std::int64_t k) const;

  std::int64_t k_min() const { return k_min_; }
  std::int64_t k_max() const { return k_max_; }
  const GapDistribution& dist() const { return dist_; }
  std::uint64_t seed() const { return seed_; }

private:
  Environment() : dist_(GapDistribution::pareto(0.5)) {}
  void extend_right(std::int64_t k) const;
  void extend_left(std::int64_t k) const;
  double draw_gap(std::int64_t k) const;

  GapDistribution dist_;
  std::uint64_t seed_ = 0;
  bool fixture_ = false;
  // gaps_right_[i] = zeta_{i+1}; gaps_left_[i] = zeta_{-i} (i.e. zeta_0, zeta_-1, ...)
  mutable std::vector<double> gaps_right_, gaps_left_;
  // prefix_right_[i] = omega_{i+1}; prefix_left_[i] = omega_{-(i+1)}
  mutable std::vector<double> prefix_right_, prefix_left_;
  // Kahan carries so extension continues the compensated sums exactly.
  mutable double carry_right_ = 0.0, carry_left_ = 0.0;
  mutable std::int64_t k_min_ = 0, k_max_ = 0;
};

}  // namespace levygas

#endif
