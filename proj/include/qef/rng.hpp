#pragma once

#include <array>
#include <cstdint>

namespace qef {

// Philox4x32-10 counter-based generator (Salmon et al.).  Every output
// word is a pure function of (key, counter), so Monte Carlo sample i of
// stream s is reproducible bit-for-bit regardless of how the sample
// range is partitioned across workers.
struct Philox4x32 {
  static std::array<std::uint32_t, 4> generate(std::array<std::uint32_t, 4> counter,
                                               std::array<std::uint32_t, 2> key);
};

// Gaussian deviates addressed by (seed, stream, sample).  Each sample owns
// an unbounded sequence of independent N(0,1) values; Box-Muller on
// 53-bit uniforms keeps the mapping deterministic.
class NormalStream {
 public:
  NormalStream(std::uint64_t seed, std::uint32_t stream) : seed_(seed), stream_(stream) {}

  // Fills out[0..count) with the normals belonging to `sample`.
  void fill(std::uint64_t sample, double* out, std::size_t count) const;

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::uint32_t stream_;
};

}  // namespace qef
