#pragma once
#include <cstdint>

namespace photonwave {

// Counter-based splitmix64 stream.  The internal state is seeded from
// (seed, stream) through the output mixer, so Monte Carlo trials can each own
// a stream and be consumed in any order, or in parallel, with identical
// output per stream.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next();

  // [0, 1), 53-bit resolution
  double uniform();

 private:
  std::uint64_t state_;
};

}  // namespace photonwave
