#pragma once

// Deterministic random streams.
//
// Every stochastic consumer (initial-point draw, ML-II multistart, posterior
// sampler, acquisition multistart) pulls from its own RngStream, keyed by
// (seed, step, role) through derive_stream_key. Runs are therefore bit
// reproducible and independent of scheduling or worker count.
//
// Generator: xoshiro256++ (Blackman & Vigna), state expanded from the 64-bit
// key with splitmix64. Uniform and normal variates are produced from explicit
// bit manipulation / Box-Muller rather than std distributions, which are not
// specified bit-exactly by the standard.

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace gpbo {

// splitmix64 step: increments by the golden-ratio constant and mixes.
inline constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

enum class StreamRole : std::uint64_t {
  initial_point = 1,
  mlii = 2,
  sampler = 3,
  acquisition = 4,
};

// Substream key for one consumer: fold the step index and role into the run
// seed so no two consumers ever share a stream.
inline constexpr std::uint64_t derive_stream_key(std::uint64_t seed, std::uint64_t step,
                                                 StreamRole role) noexcept {
  std::uint64_t key = mix64(seed);
  key = mix64(key ^ step);
  key = mix64(key ^ static_cast<std::uint64_t>(role));
  return key;
}

class RngStream {
public:
  explicit RngStream(std::uint64_t key) {
    std::uint64_t s = key;
    for (auto& word : state_) {
      word = mix64(s);
      s = word;
    }
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 0x2545f4914f6cdd1dULL;
  }

  std::uint64_t next_u64() noexcept {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform on [0, 1) with 53 random mantissa bits.
  double uniform() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

  // Standard normal via Box-Muller; consumes two uniforms per call.
  double normal() noexcept {
    const double u1 = 1.0 - uniform();  // (0, 1], keeps the log finite
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  // Exponential(1).
  double exponential() noexcept { return -std::log(1.0 - uniform()); }

private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> state_{};
};

}  // namespace gpbo
