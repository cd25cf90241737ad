#ifndef LEVYGAS_CHECKS_HPP
#define LEVYGAS_CHECKS_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "levygas/config.hpp"

namespace levygas {

// Tolerance windows shared by the acceptance suite and the analyze
// assertion mode. Slope windows are absolute deviations of the fitted
// log-log slope from the theoretical exponent; KS bounds add a fixed
// discretization allowance to the asymptotic critical value.
namespace windows {
inline constexpr double slope_tol_y = 0.07;
inline constexpr double slope_tol_t = 0.07;
inline constexpr double slope_tol_x = 0.07;
inline constexpr double slope_tol_range = 0.05;
inline constexpr double slope_tol_self = 0.10;
inline constexpr double slope_tol_site = 0.05;
inline constexpr double slope_max_mismatch = 0.70;
inline constexpr double ks_level = 0.01;
inline constexpr double ks_allowance = 0.05;
inline constexpr double range_target = 0.5;
inline constexpr double self_target = 1.5;

inline double y_target(double alpha) { return 1.0 / (2.0 * alpha); }
inline double t_target(double alpha) { return (1.0 + alpha) / (2.0 * alpha); }
inline double x_target(double alpha) { return 1.0 / (alpha + 1.0); }
inline double site_target(double beta) { return (1.0 + beta) / 2.0; }
}  // namespace windows

struct CheckResult {
  std::string name;
  bool pass;
  std::string detail;
};

// Exact identities and structural invariants; fast. Backs `verify`.
std::vector<CheckResult> run_identity_checks(const ExperimentConfig& cfg);

// The full statistical acceptance suite (scaling laws, limit matching,
// calibration, sanity); one result per criterion. Heavy: runs all the
// default ensembles. Progress lines go to *progress when given.
std::vector<CheckResult> run_acceptance_checks(const ExperimentConfig& cfg,
                                               std::ostream* progress = nullptr);

}  // namespace levygas

#endif
