#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

#include "levygas/rng.hpp"

using namespace levygas;

TEST_CASE("streams with the same key reproduce bit-identically") {
  RngStream a(123, Purpose::walk, 7);
  RngStream b(123, Purpose::walk, 7);
  for (int i = 0; i < 1000; ++i) CHECK(a() == b());
}

TEST_CASE("purpose and index separate streams") {
  RngStream walk(123, Purpose::walk, 7);
  RngStream gap(123, Purpose::gap, 7);
  RngStream other_index(123, Purpose::walk, 8);
  int equal_wg = 0, equal_wi = 0;
  for (int i = 0; i < 64; ++i) {
    auto w = walk();
    if (w == gap()) ++equal_wg;
    if (w == other_index()) ++equal_wi;
  }
  CHECK(equal_wg == 0);
  CHECK(equal_wi == 0);
}

TEST_CASE("uniform01 stays inside the open interval and is unbiased") {
  RngStream rng(99, Purpose::scratch, 0);
  const int n = 100000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    double u = rng.uniform01();
    REQUIRE(u > 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  // se of the mean is 1/sqrt(12 n)
  CHECK(std::abs(sum / n - 0.5) < 4.0 / std::sqrt(12.0 * n));
}

TEST_CASE("normal draws have the right first two moments") {
  RngStream rng(7, Purpose::scratch, 1);
  const int n = 100000;
  double sum = 0.0, sumsq = 0.0;
  for (int i = 0; i < n; ++i) {
    double g = rng.normal();
    sum += g;
    sumsq += g * g;
  }
  double mean = sum / n;
  double var = sumsq / n - mean * mean;
  CHECK(std::abs(mean) < 4.0 / std::sqrt(static_cast<double>(n)));
  CHECK(var == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("zigzag maps distinct integers to distinct indices") {
  std::set<std::uint64_t> seen;
  for (std::int64_t k = -500; k <= 500; ++k) seen.insert(zigzag(k));
  CHECK(seen.size() == 1001);
}
