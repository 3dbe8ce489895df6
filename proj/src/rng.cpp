#include "sfpd/rng.hpp"

#include <stdexcept>

namespace sfpd {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream,
                          std::uint64_t index) {
  return mix64(mix64(base ^ mix64(stream)) ^ mix64(index + 1));
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("Rng::below: bound must be >= 1");
  // Reject the low sliver so that the accepted range is a multiple of bound.
  const std::uint64_t threshold = (-bound) % bound;  // 2^64 mod bound
  std::uint64_t x;
  do {
    x = next_u64();
  } while (x < threshold);
  return x % bound;
}

}  // namespace sfpd
