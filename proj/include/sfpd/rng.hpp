#pragma once

#include <cstdint>
#include <random>

namespace sfpd {

// 64-bit finalizer from splitmix64. Used for seed derivation only.
std::uint64_t mix64(std::uint64_t x);

// Deterministic seed-splitting rule used everywhere seeds are derived:
//
//   derive_seed(base, stream, index) = mix64(mix64(base ^ mix64(stream)) ^ mix64(index + 1))
//
// Distinct streams keep graph seeds and strategy seeds independent, and a
// seed depends only on (base, stream, index), so enlarging a sweep grid or
// adding realisations never perturbs already-assigned seeds.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream,
                          std::uint64_t index);

namespace seed_stream {
inline constexpr std::uint64_t kGraph = 1;
inline constexpr std::uint64_t kStrategies = 2;
}  // namespace seed_stream

// Portable deterministic RNG. std::mt19937_64 has a standard-specified
// output sequence, and all sampling here is done on raw 64-bit draws, so
// identical seeds give identical results on every platform and compiler.
// (Never feed the engine to std:: distributions; those are not portable.)
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Unbiased integer in [0, bound). bound must be >= 1.
  std::uint64_t below(std::uint64_t bound);

  // Fair coin, taken from the top bit of one draw.
  bool coin() { return (next_u64() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace sfpd
