#ifndef LEVYGAS_WALKER_HPP
#define LEVYGAS_WALKER_HPP

#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "levygas/medium.hpp"
#include "levygas/rng.hpp"

namespace levygas {

// Law of the increments of the underlying Z-valued walk. Construction
// rejects mass at 0 (self-jumps are invisible to the interpolated process,
// so sgn(0) must never be needed) and supports generating a proper
// subgroup of Z (the walk would then live on a sublattice).
class WalkSpec {
public:
  static WalkSpec simple_symmetric();
  static WalkSpec from_pmf(std::vector<std::pair<int, double>> pmf);

  const std::vector<std::pair<int, double>>& pmf() const { return pmf_; }
  double v_xi() const { return v_xi_; }    // Var(xi)
  double mu_xi() const { return mu_xi_; }  // E|xi|
  // Largest absolute-moment order verified finite; +inf for finite support.
  double gamma_check() const { return gamma_check_; }

  int sample_increment(RngStream& rng) const;

private:
  WalkSpec() = default;
  std::vector<std::pair<int, double>> pmf_;
  std::vector<double> cdf_;
  double v_xi_ = 0.0;
  double mu_xi_ = 0.0;
  double gamma_check_ = 0.0;
};

struct WalkPath {
  std::vector<std::int64_t> steps;  // S_0..S_n, S_0 = 0
  std::int64_t n() const { return static_cast<std::int64_t>(steps.size()) - 1; }
};

WalkPath sample_walk(const WalkSpec& spec, std::int64_t n, RngStream& rng);
// Appends extra increments drawn from the same stream.
void extend_walk(WalkPath& path, const WalkSpec& spec, std::int64_t extra,
                 RngStream& rng);

// A walk realized on an environment: Y_n = omega_{S_n} and the collision
// times T_n = sum |Y_k - Y_{k-1}| (compensated summation; T is strictly
// increasing since increments never vanish and gaps are positive).
struct Trajectory {
  std::vector<std::int64_t> s;
  std::vector<double> y;
  std::vector<double> t;
  double horizon() const { return t.back(); }
};

Trajectory run_trajectory(const Environment& env, const WalkPath& path);

// X(time) = Y_n + sgn(S_{n+1}-S_n) * (time - T_n) for T_n <= time < T_{n+1};
// exact Y_n at collision times. Throws horizon_error past T_n(final).
double position_at(const Trajectory& traj, double time);

// Resumable locator for batches of nondecreasing query times.
class PositionCursor {
public:
  explicit PositionCursor(const Trajectory& traj) : traj_(&traj) {}
  double at(double time);

private:
  const Trajectory* traj_;
  std::size_t hint_ = 0;
};

// Path statistics of the underlying walk, all gathered in one pass:
//   site[y]  = N_n(y),  visits of S to y over k in {0..n-1}
//   bond[y]  = #traversals of the gap [y-1,y], split into right-to-left
//              (bond_minus) and left-to-right (bond_plus) crossings
//   range    = #{y : N_n(y) > 0}
//   self_intersection = sum_y N_n(y)^2
struct LocalTimeProfile {
  std::unordered_map<std::int64_t, std::int64_t> site;
  std::unordered_map<std::int64_t, std::int64_t> bond;
  std::unordered_map<std::int64_t, std::int64_t> bond_minus;
  std::unordered_map<std::int64_t, std::int64_t> bond_plus;
  std::int64_t range = 0;
  std::int64_t self_intersection = 0;
};

LocalTimeProfile local_time_profile(const WalkPath& path);

// Scenery representation of the collision time: sum_y bond[y] * zeta_y.
// Equals the trajectory's final T up to summation order (1e-9 relative).
double scenery_collision_time(const Environment& env, const LocalTimeProfile& prof);

// Random walk in random scenery: sum_{k=1}^{m} zeta_{S_k}.
double rwrs_sum(const Environment& env, const WalkPath& path, std::int64_t m);

}  // namespace levygas

#endif
