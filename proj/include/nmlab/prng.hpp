#pragma once

#include <cstdint>

namespace nmlab {

inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// SplitMix64: the output function applied to a strided counter, so any
/// stream position is reachable in O(1) and streams are order-independent.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() { return mix64(state_ += 0x9e3779b97f4a7c15ull); }

  /// Uniform value in [0, bound) via masked rejection (bound >= 1).
  std::uint64_t next_below(std::uint64_t bound);

 private:
  std::uint64_t state_;
};

/// Stream for (master_seed, stream_index), independent of any other stream.
inline SplitMix64 substream(std::uint64_t master_seed, std::uint64_t index) {
  return SplitMix64(mix64(master_seed + 0x9e3779b97f4a7c15ull) ^
                    mix64(index * 0xbf58476d1ce4e5b9ull + 0x94d049bb133111ebull));
}

inline std::uint64_t SplitMix64::next_below(std::uint64_t bound) {
  if (bound <= 1) return 0;
  std::uint64_t mask = ~std::uint64_t{0} >> __builtin_clzll((bound - 1) | 1);
  for (;;) {
    std::uint64_t v = next() & mask;
    if (v < bound) return v;
  }
}

}  // namespace nmlab
