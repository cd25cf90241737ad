#include "levygas/medium.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace levygas {

Environment::Environment(GapDistribution dist, std::uint64_t seed)
    : dist_(std::move(dist)), seed_(seed) {}

Environment Environment::from_gaps(std::vector<double> right, std::vector<double> left) {
  for (double g : right)
    if (!(g > 0.0)) throw std::invalid_argument("fixture gaps must be positive");
  for (double g : left)
    if (!(g > 0.0)) throw std::invalid_argument("fixture gaps must be positive");
  Environment env;
  env.fixture_ = true;
  env.gaps_right_ = std::move(right);
  env.gaps_left_ = std::move(left);
  double sum = 0.0, carry = 0.0;
  for (double g : env.gaps_right_) {
    double term = g - carry;
    double next = sum + term;
    carry = (next - sum) - term;
    sum = next;
    env.prefix_right_.push_back(sum);
  }
  sum = 0.0;
  carry = 0.0;
  for (double g : env.gaps_left_) {
    double term = g - carry;
    double next = sum + term;
    carry = (next - sum) - term;
    sum = next;
    env.prefix_left_.push_back(-sum);
  }
  env.k_max_ = static_cast<std::int64_t>(env.gaps_right_.size());
  env.k_min_ = -static_cast<std::int64_t>(env.gaps_left_.size());
  return env;
}

double Environment::draw_gap(std::int64_t k) const {
  RngStream rng(seed_, Purpose::gap, zigzag(k));
  return sample_gap(dist_, rng);
}

void Environment::extend_right(std::int64_t k) const {
  while (k_max_ < k) {
    ++k_max_;
    double g = draw_gap(k_max_);
    gaps_right_.push_back(g);
    double prev = prefix_right_.empty() ? 0.0 : prefix_right_.back();
    double term = g - carry_right_;
    double next = prev + term;
    carry_right_ = (next - prev) - term;
    prefix_right_.push_back(next);
  }
}

void Environment::extend_left(std::int64_t k) const {
  while (k_min_ > k) {
    --k_min_;
    double g = draw_gap(k_min_ + 1);  // omega_{k} = omega_{k+1} - zeta_{k+1}
    gaps_left_.push_back(g);
    double prev = prefix_left_.empty() ? 0.0 : -prefix_left_.back();
    double term = g - carry_left_;
    double next = prev + term;
    carry_left_ = (next - prev) - term;
    prefix_left_.push_back(-next);
  }
}

double Environment::target(std::int64_t k) const {
  if (k == 0) return 0.0;
  if (fixture_) {
    if (k > k_max_ || k < k_min_)
      throw std::out_of_range("fixture environment queried outside its gap list");
  } else if (k > 0) {
    extend_right(k);
  } else {
    extend_left(k);
  }
  return k > 0 ? prefix_right_[static_cast<std::size_t>(k - 1)]
               : prefix_left_[static_cast<std::size_t>(-k - 1)];
}

double Environment::gap(std::int64_t k) const {
  if (fixture_) {
    if (k > k_max_ || k <= k_min_)
      throw std::out_of_range("fixture environment queried outside its gap list");
    return k >= 1 ? gaps_right_[static_cast<std::size_t>(k - 1)]
                  : gaps_left_[static_cast<std::size_t>(-k)];
  }
  if (k >= 1) {
    extend_right(k);
    return gaps_right_[static_cast<std::size_t>(k - 1)];
  }
  extend_left(k - 1);
  return gaps_left_[static_cast<std::size_t>(-k)];
}

}  // namespace levygas
