/**
 * SplitMix64-based pseudorandom streams for reproducible simulation runs.
 *
 * Every trial gets its own stream derived from (seed, trial index), so a
 * run produces identical numbers no matter how trials are scheduled across
 * threads. Header-only, no dependencies beyond <cstdint>.
 */
#pragma once

#include <cstdint>

namespace netdecide {

namespace detail {

// splitmix64 finalizer (Stafford mix 13).
inline uint64_t mix64(uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace detail

class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ull;
    return detail::mix64(state_);
  }

  // Uniform double in [0, 1), 53 random bits.
  double next_double() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  // True with probability prob; prob = 0 never fires, prob = 1 always does.
  bool bernoulli(double prob) { return next_double() < prob; }

 private:
  uint64_t state_;
};

// Independent stream for one trial of a seeded run.
inline SplitMix64 trial_stream(uint64_t seed, uint64_t trial_index) {
  return SplitMix64(detail::mix64(seed + 0x9E3779B97F4A7C15ull * (trial_index + 1)));
}

}  // namespace netdecide
