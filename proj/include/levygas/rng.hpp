#ifndef LEVYGAS_RNG_HPP
#define LEVYGAS_RNG_HPP

#include <cmath>
#include <cstdint>

namespace levygas {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

// splitmix64 finalizer; a 64-bit bijection.
inline constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Stream purposes. A stream is keyed by (master_seed, purpose, index), so
// every draw in a run is attributable to that triple and lazily generated
// values never depend on query order or thread schedule.
enum class Purpose : std::uint64_t {
  gap = 1,             // per-lattice-index medium gap
  environment = 2,     // per-trajectory environment seed
  walk = 3,            // per-trajectory underlying walk increments
  calib_block = 4,     // block sums during stable-scale calibration
  calib_stable = 5,    // reference stable draws during calibration
  brownian = 6,        // Brownian path increments
  sub_plus = 7,        // positive-axis subordinator increments
  sub_minus = 8,       // negative-axis subordinator increments
  scratch = 9,         // tests and one-off diagnostics
};

inline std::uint64_t stream_key(std::uint64_t master_seed, Purpose purpose,
                                std::uint64_t index) {
  std::uint64_t k = mix64(master_seed + kGolden);
  k = mix64(k ^ (static_cast<std::uint64_t>(purpose) * kGolden));
  return mix64(k + mix64(index * kGolden + 1));
}

// Maps k in Z to a distinct unsigned index (0,1,-1,2,-2,... -> 0,2,1,4,3,...).
inline std::uint64_t zigzag(std::int64_t k) {
  return k >= 0 ? 2 * static_cast<std::uint64_t>(k)
                : 2 * static_cast<std::uint64_t>(-(k + 1)) + 1;
}

// Counter-based stream: the state walks a fixed 64-bit arithmetic sequence
// and each output is the splitmix64 image of the counter. Two streams with
// different keys are independent for all practical purposes; one stream is
// never shared between threads.
class RngStream {
public:
  using result_type = std::uint64_t;

  explicit RngStream(std::uint64_t key) : state_(key) {}
  RngStream(std::uint64_t master_seed, Purpose purpose, std::uint64_t index)
      : state_(stream_key(master_seed, purpose, index)) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~0ull; }

  result_type operator()() {
    state_ += kGolden;
    return mix64(state_);
  }

  // Uniform on the open interval (0,1); an exact 0 is re-drawn and 1 is
  // unreachable, so inverse-CDF samplers never see an endpoint.
  double uniform01() {
    for (;;) {
      double u = static_cast<double>((*this)() >> 11) * 0x1.0p-53;
      if (u > 0.0) return u;
    }
  }

  // Box-Muller; consumes exactly two uniforms per call.
  double normal() {
    double u1 = uniform01();
    double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(6.283185307179586476925286766559 * u2);
  }

  double exponential() { return -std::log(uniform01()); }

private:
  std::uint64_t state_;
};

}  // namespace levygas

#endif
