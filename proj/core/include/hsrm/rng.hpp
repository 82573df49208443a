#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace hsrm {

// splitmix64 step; used for seed derivation and counter-based noise streams.
inline std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Decorrelated seed for substream `stream` of a run seeded with `seed`.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  return splitmix64(seed ^ splitmix64(stream + 0xA0761D6478BD642Full));
}

// mt19937_64 with hand-pinned uniform/gaussian mappings. The engine is fully
// specified by the standard, the distribution mappings here are ours, so a
// seeded stream replays identically on every toolchain.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform_double() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform in [0, bound). bound must be > 0.
  std::size_t uniform_index(std::size_t bound) {
    using u128 = unsigned __int128;
    return static_cast<std::size_t>(
        (static_cast<u128>(engine_()) * static_cast<u128>(bound)) >> 64);
  }

  // Zero-mean gaussian via Box-Muller; consumes two draws per sample.
  double gaussian(double stddev) {
    const double u1 = 1.0 - uniform_double();  // (0, 1]
    const double u2 = uniform_double();
    const double r = std::sqrt(-2.0 * std::log(u1));
    return stddev * r * std::cos(2.0 * 3.14159265358979323846 * u2);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace hsrm
