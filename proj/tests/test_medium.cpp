#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "levygas/medium.hpp"

using namespace levygas;

TEST_CASE("fixture environment reproduces hand-computed targets") {
  Environment env = Environment::from_gaps({2, 3, 5}, {4});
  CHECK(env.target(0) == 0.0);
  CHECK(env.target(1) == 2.0);
  CHECK(env.target(2) == 5.0);
  CHECK(env.target(3) == 10.0);
  CHECK(env.target(-1) == -4.0);
  CHECK(env.gap(2) == 3.0);
  CHECK(env.gap(0) == 4.0);
  CHECK_THROWS_AS(env.target(4), std::out_of_range);
  CHECK_THROWS_AS(env.target(-2), std::out_of_range);
  CHECK_THROWS_AS(Environment::from_gaps({1, -1}, {}), std::invalid_argument);
}

TEST_CASE("origin is a target in every environment") {
  GapDistribution d = GapDistribution::pareto(0.5, 1.0);
  for (std::uint64_t seed : {1ull, 99ull, 123456789ull})
    CHECK(Environment(d, seed).target(0) == 0.0);
}

TEST_CASE("materialization is independent of query order") {
  GapDistribution d = GapDistribution::pareto(0.5, 1.0);
  Environment fwd(d, 77), bwd(d, 77);
  std::vector<double> a, b;
  for (std::int64_t k = -100; k <= 100; ++k) a.push_back(fwd.target(k));
  for (std::int64_t k = 100; k >= -100; --k) b.push_back(bwd.target(k));
  std::reverse(b.begin(), b.end());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);  // bit-identical

  // Interleaved gap queries never disturb values either.
  Environment mixed(d, 77);
  CHECK(mixed.gap(40) == fwd.gap(40));
  CHECK(mixed.target(-63) == fwd.target(-63));
  CHECK(mixed.gap(-12) == fwd.gap(-12));
}

TEST_CASE("different seeds give different media") {
  GapDistribution d = GapDistribution::pareto(0.5, 1.0);
  Environment a(d, 1), b(d, 2);
  int coincidences = 0;
  for (std::int64_t k = -100; k <= 100; ++k)
    if (k != 0 && a.target(k) == b.target(k)) ++coincidences;
  CHECK(coincidences == 0);
}

TEST_CASE("gaps are positive and consistent with target differences") {
  GapDistribution d = GapDistribution::pareto(0.5, 1.0);
  Environment env(d, 2024);
  for (std::int64_t k = -200; k <= 200; ++k) {
    double g = env.gap(k);
    CHECK(g > 0.0);
    // Differencing the prefix sums loses bits at the scale of the targets.
    double err = std::abs((env.target(k) - env.target(k - 1)) - g);
    CHECK(err <= 1e-12 * std::max({g, std::abs(env.target(k)), 1.0}));
  }
  for (std::int64_t k = -200; k < 200; ++k)
    CHECK(env.target(k) < env.target(k + 1));  // strict monotonicity
}

TEST_CASE("running gap means drift upward (infinite-mean sanity)") {
  GapDistribution d = GapDistribution::pareto(0.5, 1.0);
  const std::vector<std::int64_t> ks = {100, 1000, 10000, 100000};
  const int n_seeds = 100;
  std::vector<std::vector<double>> means(ks.size());
  for (int s = 0; s < n_seeds; ++s) {
    Environment env(d, 9000 + static_cast<std::uint64_t>(s));
    double sum = 0.0;
    std::size_t ki = 0;
    std::int64_t count = 0;
    for (std::int64_t k = 1; k <= ks.back(); ++k) {
      sum += env.gap(k) + env.gap(-k + 1);
      count += 2;
      if (k == ks[ki]) {
        means[ki].push_back(sum / static_cast<double>(count));
        ++ki;
      }
    }
  }
  std::vector<double> medians;
  for (auto& v : means) {
    std::sort(v.begin(), v.end());
    medians.push_back(v[v.size() / 2]);
  }
  for (std::size_t i = 1; i < medians.size(); ++i) CHECK(medians[i] > medians[i - 1]);
}
