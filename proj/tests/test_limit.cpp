#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "levygas/errors.hpp"
#include "levygas/limit.hpp"
#include "levygas/parallel.hpp"
#include "levygas/stats.hpp"

using namespace levygas;

TEST_CASE("Brownian sampler basics") {
  RngStream rng(1, Purpose::brownian, 0);
  BrownianPath bp = sample_brownian(1.0, 1.0, 1e-3, rng);
  CHECK(bp.values[0] == 0.0);
  CHECK(bp.t_max() == doctest::Approx(1.0));
  CHECK_THROWS_AS(sample_brownian(1.0, 1.0, 0.02, rng), std::invalid_argument);
  CHECK_THROWS_AS(sample_brownian(-1.0, 1.0, 1e-3, rng), std::invalid_argument);

  const std::int64_t reps = 10000;
  std::vector<double> b1(reps), b3(reps), b7(reps);
  parallel_for_index(reps, 0, [&](std::int64_t i) {
    RngStream r(2, Purpose::brownian, static_cast<std::uint64_t>(i));
    BrownianPath p = sample_brownian(1.0, 1.0, 1e-3, r);
    b1[static_cast<std::size_t>(i)] = p.values.back();
    b3[static_cast<std::size_t>(i)] = p.value_at(0.3);
    b7[static_cast<std::size_t>(i)] = p.value_at(0.7);
  });
  double var = 0.0, cov = 0.0;
  for (std::int64_t i = 0; i < reps; ++i) {
    var += b1[static_cast<std::size_t>(i)] * b1[static_cast<std::size_t>(i)];
    cov += b3[static_cast<std::size_t>(i)] * b7[static_cast<std::size_t>(i)];
  }
  var /= static_cast<double>(reps);
  cov /= static_cast<double>(reps);
  CHECK(var == doctest::Approx(1.0).epsilon(0.05));
  CHECK(cov == doctest::Approx(0.3).epsilon(0.10));  // v_xi * min(s,t)
}

TEST_CASE("local time field: occupation identity and support") {
  RngStream rng(3, Purpose::brownian, 0);
  BrownianPath bp = sample_brownian(2.0, 1.0, 1e-4, rng);
  LocalTimeField ltf = local_time_field(bp, 0.02, {0.0, 0.37, 1.0});

  // t = 0 gives the zero field.
  for (double v : ltf.density[0]) CHECK(v == 0.0);

  auto [mn, mx] = std::minmax_element(bp.values.begin(), bp.values.end());
  for (std::size_t ti = 1; ti < ltf.times.size(); ++ti) {
    double mass = 0.0;
    for (double v : ltf.density[ti]) {
      CHECK(v >= 0.0);
      mass += v * ltf.dx;
    }
    CHECK(std::abs(mass - ltf.times[ti]) <= 1e-9 * ltf.times[ti]);
    for (std::int64_t b = ltf.bin_lo; b <= ltf.bin_hi; ++b) {
      if (ltf.at(ti, b) == 0.0) continue;
      double lo = static_cast<double>(b) * ltf.dx;
      CHECK(lo >= *mn - 2.0 * ltf.dx);
      CHECK(lo <= *mx + 2.0 * ltf.dx);
    }
  }
}

TEST_CASE("mean local time at the origin matches the Brownian closed form") {
  // E L_1(0) = sqrt(2/pi) for a standard Brownian motion.
  const std::int64_t reps = 4000;
  const double dt = 1e-4, dx = 0.02;
  std::vector<double> vals(reps);
  parallel_for_index(reps, 0, [&](std::int64_t i) {
    RngStream rng(11, Purpose::brownian, static_cast<std::uint64_t>(i));
    BrownianPath bp = sample_brownian(1.0, 1.0, dt, rng);
    std::int64_t hits = 0;
    for (std::size_t s = 0; s + 1 < bp.values.size(); ++s)
      if (bp.values[s] >= 0.0 && bp.values[s] < dx) ++hits;
    vals[static_cast<std::size_t>(i)] = static_cast<double>(hits) * dt / dx;
  });
  double mean = 0.0;
  for (double v : vals) mean += v;
  mean /= static_cast<double>(reps);
  const double expected = std::sqrt(2.0 / 3.14159265358979323846);
  CHECK(std::abs(mean - expected) < 0.10 * expected);
}

TEST_CASE("subordinator fields: positivity, monotonicity, convolution oracle") {
  StableCalibration cal = make_stable_calibration(0.5, 1.7, 1.0);
  RngStream bm(4, Purpose::brownian, 0);
  BrownianPath bp = sample_brownian(1.0, 1.0, 1e-3, bm);
  LocalTimeField ltf = local_time_field(bp, 0.01, {1.0});
  RngStream zp(4, Purpose::sub_plus, 0), zm(4, Purpose::sub_minus, 0);
  SubordinatorField sub = sample_subordinator_field(cal, ltf, zp, zm);

  for (double v : sub.inc_plus) CHECK(v > 0.0);
  for (double v : sub.inc_minus) CHECK(v > 0.0);
  // Z at the resolved bin boundaries, reconstructed by prefix sums, is
  // strictly increasing through the whole two-sided range.
  std::vector<double> boundary;
  for (std::size_t j = sub.inc_minus.size(); j > 0; --j) {
    double z = 0.0;
    for (std::size_t i = 0; i < j; ++i) z -= sub.inc_minus[i];
    boundary.push_back(z);
  }
  boundary.push_back(0.0);
  double acc = 0.0;
  for (double v : sub.inc_plus) boundary.push_back(acc += v);
  for (std::size_t i = 1; i < boundary.size(); ++i)
    CHECK(boundary[i] > boundary[i - 1]);
  CHECK(sub.z_at(0.0) == 0.0);

  // Increments over [0,1) sum to a variable distributed as Z(1):
  // two-sample KS against direct draws, exact in law by stability.
  const double dx = 0.01;
  const std::size_t reps = 10000, bins = 100;
  const double inc_scale = cal.scale * std::pow(dx, 1.0 / cal.alpha);
  std::vector<double> sums(reps), direct(reps);
  RngStream gen(5, Purpose::sub_plus, 1), ref(5, Purpose::sub_plus, 2);
  for (auto& v : sums) {
    double s = 0.0;
    for (std::size_t b = 0; b < bins; ++b)
      s += inc_scale * sample_standard_one_sided_stable(cal.alpha, gen);
    v = s;
  }
  for (auto& v : direct) v = sample_one_sided_stable(cal, ref);
  KSTestResult ks = ks_two_sample(sums, direct);
  CHECK(ks.statistic <
        ks_critical_value(0.01, static_cast<std::int64_t>(reps),
                          static_cast<std::int64_t>(reps)));
}

TEST_CASE("discretized Kesten-Spitzer process") {
  StableCalibration cal = make_stable_calibration(0.5, 1.5, 1.0);
  std::vector<double> times = {0.0, 0.2, 0.4, 0.6, 0.8, 1.0};
  for (std::uint64_t i = 0; i < 16; ++i) {
    RngStream bm(6, Purpose::brownian, i), zp(6, Purpose::sub_plus, i),
        zm(6, Purpose::sub_minus, i);
    BrownianPath bp = sample_brownian(1.0, 1.0, 1e-3, bm);
    LocalTimeField ltf = local_time_field(bp, 0.02, times);
    SubordinatorField sub = sample_subordinator_field(cal, ltf, zp, zm);
    KSProcessSample ks = ks_process(ltf, sub, 1.0);
    CHECK(ks.delta[0] == 0.0);
    for (std::size_t k = 1; k < ks.delta.size(); ++k)
      CHECK(ks.delta[k] > ks.delta[k - 1]);
  }

  // Grid mismatch is rejected.
  RngStream bm(7, Purpose::brownian, 0), zp(7, Purpose::sub_plus, 0),
      zm(7, Purpose::sub_minus, 0);
  BrownianPath bp = sample_brownian(1.0, 1.0, 1e-3, bm);
  LocalTimeField coarse = local_time_field(bp, 0.04, {1.0});
  LocalTimeField fine = local_time_field(bp, 0.02, {1.0});
  SubordinatorField sub = sample_subordinator_field(cal, coarse, zp, zm);
  CHECK_THROWS_AS(ks_process(fine, sub, 1.0), grid_error);
  CHECK_THROWS_AS(ks_process(coarse, sub, -1.0), std::invalid_argument);
}

TEST_CASE("generalized inverse brackets monotonically") {
  KSProcessSample ks;
  ks.times = {0.0, 1.0, 2.0, 3.0};
  ks.delta = {0.0, 1.0, 4.0, 9.0};
  CHECK(generalized_inverse(ks, 4.0) == doctest::Approx(2.0));
  CHECK(generalized_inverse(ks, 2.0) == doctest::Approx(1.0 + 1.0 / 3.0));
  CHECK(generalized_inverse(ks, 1e-9) == doctest::Approx(0.0).epsilon(1e-6));
  CHECK_THROWS_AS(generalized_inverse(ks, 9.5), horizon_error);
  CHECK_THROWS_AS(generalized_inverse(ks, -1.0), std::invalid_argument);

  // On sampled processes: Delta(inverse(s)) stays within one local grid
  // increment of s.
  StableCalibration cal = make_stable_calibration(0.5, 1.5, 1.0);
  std::vector<double> times;
  for (int i = 0; i <= 50; ++i) times.push_back(static_cast<double>(i) / 25.0);
  RngStream bm(8, Purpose::brownian, 0), zp(8, Purpose::sub_plus, 0),
      zm(8, Purpose::sub_minus, 0);
  BrownianPath bp = sample_brownian(1.0, 2.0, 2e-3, bm);
  LocalTimeField ltf = local_time_field(bp, 0.02, times);
  SubordinatorField sub = sample_subordinator_field(cal, ltf, zp, zm);
  KSProcessSample sample = ks_process(ltf, sub, 1.0);
  for (double frac : {0.1, 0.5, 0.9}) {
    double s = frac * sample.delta.back();
    double u = generalized_inverse(sample, s);
    auto it = std::lower_bound(sample.times.begin(), sample.times.end(), u);
    std::size_t idx = std::min<std::size_t>(
        static_cast<std::size_t>(it - sample.times.begin()), sample.times.size() - 1);
    std::size_t lo = idx > 0 ? idx - 1 : 0;
    double eps = sample.delta[std::min(idx + 1, sample.delta.size() - 1)] -
                 sample.delta[lo > 0 ? lo - 1 : 0];
    CHECK(std::abs(  // Delta at the interpolated time, linearly interpolated
            sample.delta[lo] +
            (sample.delta[idx] - sample.delta[lo]) *
                ((u - sample.times[lo]) /
                 std::max(sample.times[idx] - sample.times[lo], 1e-300)) -
            s) <= eps + 1e-12);
  }
}

TEST_CASE("composite draw reports an exhausted horizon") {
  StableCalibration cal = make_stable_calibration(0.5, 1.5, 1.0);
  CompositeLimitParams params{1.0, 1.0, cal, 1e-3, 0.02, 0.05, 0};
  RngStream bm(12, Purpose::brownian, 0), zp(12, Purpose::sub_plus, 0),
      zm(12, Purpose::sub_minus, 0);
  // A tiny fixed horizon with no doublings cannot reach a huge level.
  CHECK_THROWS_AS(
      composite_limit_sample(params, std::vector<double>{1e12}, bm, zp, zm),
      horizon_error);
  RngStream bm2(12, Purpose::brownian, 1), zp2(12, Purpose::sub_plus, 1),
      zm2(12, Purpose::sub_minus, 1);
  CHECK_THROWS_AS(
      composite_limit_sample(params, std::vector<double>{-1.0}, bm2, zp2, zm2),
      std::invalid_argument);
}

TEST_CASE("subordinator field must share the local-time grid range") {
  StableCalibration cal = make_stable_calibration(0.5, 1.5, 1.0);
  RngStream bm_a(13, Purpose::brownian, 0), bm_b(13, Purpose::brownian, 1);
  RngStream zp(13, Purpose::sub_plus, 0), zm(13, Purpose::sub_minus, 0);
  BrownianPath a = sample_brownian(1.0, 1.0, 1e-3, bm_a);
  BrownianPath b = sample_brownian(1.0, 1.0, 1e-3, bm_b);
  LocalTimeField la = local_time_field(a, 0.02, {1.0});
  LocalTimeField lb = local_time_field(b, 0.02, {1.0});
  SubordinatorField sub = sample_subordinator_field(cal, la, zp, zm);
  if (lb.bin_lo != la.bin_lo || lb.bin_hi != la.bin_hi)
    CHECK_THROWS_AS(ks_process(lb, sub, 1.0), grid_error);
}

TEST_CASE("composite limit draw: s = 0 maps to the origin, symmetric law") {
  StableCalibration cal = make_stable_calibration(0.5, 1.5, 1.0);
  CompositeLimitParams params{1.0, 1.0, cal, 1e-3, 0.02, 0.0, 5};

  RngStream bm(9, Purpose::brownian, 0), zp(9, Purpose::sub_plus, 0),
      zm(9, Purpose::sub_minus, 0);
  std::vector<double> vals =
      composite_limit_sample(params, std::vector<double>{0.0, 1.0}, bm, zp, zm);
  CHECK(vals[0] == 0.0);

  const std::int64_t reps = 1000;
  std::vector<double> draws(reps);
  parallel_for_index(reps, 0, [&](std::int64_t i) {
    RngStream b(10, Purpose::brownian, static_cast<std::uint64_t>(i));
    RngStream p(10, Purpose::sub_plus, static_cast<std::uint64_t>(i));
    RngStream q(10, Purpose::sub_minus, static_cast<std::uint64_t>(i));
    draws[static_cast<std::size_t>(i)] =
        composite_limit_sample(params, std::vector<double>{1.0}, b, p, q)[0];
  });
  std::int64_t positive = 0;
  for (double v : draws)
    if (v > 0.0) ++positive;
  // Two-sided 1% sign-test band around n/2.
  double band = 2.576 * std::sqrt(static_cast<double>(reps) / 4.0);
  CHECK(std::abs(static_cast<double>(positive) - reps / 2.0) <= band);
}
